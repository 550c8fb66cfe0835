import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symplectica.core import (
    Tolerance,
    direct_sum,
    hermitian_psd_check,
    is_symplectic,
    make_J,
    mode_permutation,
    random_positive_definite,
    random_symplectic,
    symplectic_inverse,
    symplectic_residual,
    symplectic_spectrum,
    williamson,
)
from symplectica.exceptions import (
    DimensionError,
    InvalidArgumentError,
    NotPositiveDefiniteError,
)

J2 = np.array([[0.0, -1.0], [1.0, 0.0]])
seeds = st.integers(min_value=0, max_value=2 ** 32)


class TestMakeJ:
    def test_single_mode(self):
        np.testing.assert_array_equal(make_J(1), J2)

    def test_two_modes(self):
        J = make_J(2)
        np.testing.assert_array_equal(J[:2, :2], J2)
        np.testing.assert_array_equal(J[2:, 2:], J2)
        np.testing.assert_array_equal(J[:2, 2:], 0)
        np.testing.assert_array_equal(J[2:, :2], 0)

    def test_square_is_minus_identity(self):
        J = make_J(3)
        np.testing.assert_array_equal(J @ J, -np.eye(6))
        np.testing.assert_array_equal(J.T, -J)

    def test_j_is_symplectic_and_orthogonal(self):
        J = make_J(4)
        assert is_symplectic(J)
        np.testing.assert_array_equal(J.T @ J, np.eye(8))

    def test_zero_modes_rejected(self):
        with pytest.raises(DimensionError):
            make_J(0)


class TestIsSymplectic:
    def test_identity(self):
        assert is_symplectic(np.eye(4))

    def test_j2(self):
        assert is_symplectic(J2)

    def test_uniform_scaling_fails(self):
        # L^T J L = 4J
        assert not is_symplectic(np.diag([2.0, 2.0]))

    @pytest.mark.parametrize("shape", [(3, 3), (2, 4), (0, 0)])
    def test_bad_shapes(self, shape):
        with pytest.raises(DimensionError):
            is_symplectic(np.zeros(shape))

    def test_tolerance_rejects_negative(self):
        with pytest.raises(InvalidArgumentError):
            Tolerance(-1.0, 0.0)


class TestDirectSum:
    def test_identities(self):
        np.testing.assert_array_equal(direct_sum([np.eye(2), np.eye(4)]), np.eye(6))

    def test_j_blocks(self):
        np.testing.assert_array_equal(direct_sum([J2, J2]), make_J(2))

    def test_empty(self):
        with pytest.raises(InvalidArgumentError):
            direct_sum([])

    def test_non_square(self):
        with pytest.raises(DimensionError):
            direct_sum([np.zeros((2, 3))])

    @given(seeds, seeds)
    @settings(max_examples=30, deadline=None)
    def test_preserves_symplecticity(self, s1, s2):
        L = direct_sum([random_symplectic(1, s1), random_symplectic(2, s2)])
        assert symplectic_residual(L) <= 1e-9


class TestModePermutation:
    def test_identity(self):
        np.testing.assert_array_equal(mode_permutation([0, 1]), np.eye(4))

    def test_swap_conjugation(self):
        L1, L2 = random_symplectic(1, 1), random_symplectic(1, 2)
        P = mode_permutation([1, 0])
        np.testing.assert_allclose(P @ direct_sum([L1, L2]) @ P.T, direct_sum([L2, L1]))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_random_permutations(self, n):
        rng = np.random.default_rng(n)
        for _ in range(10):
            P = mode_permutation(rng.permutation(n))
            assert symplectic_residual(P) <= 1e-15
            np.testing.assert_array_equal(P.T @ P, np.eye(2 * n))

    @pytest.mark.parametrize("perm", [[0, 0], [1, 2], []])
    def test_not_a_permutation(self, perm):
        with pytest.raises(InvalidArgumentError):
            mode_permutation(perm)


class TestRandomSymplectic:
    @given(seeds)
    @settings(max_examples=25, deadline=None)
    def test_single_mode_residual(self, seed):
        assert symplectic_residual(random_symplectic(1, seed)) <= 1e-9

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_unit_determinant_and_transpose(self, n):
        for seed in range(10):
            L = random_symplectic(n, seed)
            assert abs(np.linalg.det(L) - 1) <= 1e-8
            assert is_symplectic(L.T)

    def test_deterministic(self):
        np.testing.assert_array_equal(random_symplectic(3, 11), random_symplectic(3, 11))
        assert not np.array_equal(random_symplectic(3, 11), random_symplectic(3, 12))

    def test_inverse_formula(self):
        L = random_symplectic(3, 4)
        np.testing.assert_allclose(symplectic_inverse(L) @ L, np.eye(6), atol=1e-10)


class TestHermitianPsdCheck:
    def test_vacuum_boundary(self):
        # I - iJ has eigenvalues {0, 2}
        assert hermitian_psd_check(np.eye(2), -J2)

    def test_identity(self):
        assert hermitian_psd_check(np.eye(2), np.zeros((2, 2)))

    def test_below_boundary(self):
        # 0.5 I - iJ has eigenvalues {-0.5, 1.5}
        assert not hermitian_psd_check(0.5 * np.eye(2), -J2)

    def test_embedding_matches_complex_spectrum(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            X = rng.standard_normal((4, 4))
            X = X @ X.T
            Y = rng.standard_normal((4, 4))
            Y = Y - Y.T
            expected = np.linalg.eigvalsh(X + 1j * Y)[0] >= -1e-9 * (1 + np.abs(X).max())
            assert hermitian_psd_check(X, Y) == expected

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_conjugation_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        X = rng.standard_normal((4, 4))
        X = X @ X.T / 4
        Y = rng.uniform(-1, 1, (4, 4))
        Y = Y - Y.T
        assert hermitian_psd_check(X, Y) == hermitian_psd_check(X, -Y)

    def test_errors(self):
        with pytest.raises(DimensionError):
            hermitian_psd_check(np.eye(2), np.zeros((4, 4)))
        with pytest.raises(DimensionError):
            hermitian_psd_check(np.array([[1.0, 1.0], [0.0, 1.0]]), np.zeros((2, 2)))
        with pytest.raises(DimensionError):
            hermitian_psd_check(np.eye(2), np.eye(2))


class TestWilliamson:
    def test_normal_form_input(self):
        W = williamson(2.5 * np.eye(2))
        np.testing.assert_allclose(W.kappas, [2.5])
        np.testing.assert_allclose(W.L.T @ (2.5 * np.eye(2)) @ W.L, 2.5 * np.eye(2), atol=1e-12)

    def test_diag_4_1(self):
        A = np.diag([4.0, 1.0])
        # two independent routes: sqrt(det) and |eig(JA)|
        assert np.sqrt(np.linalg.det(A)) == pytest.approx(2.0)
        assert np.abs(np.linalg.eigvals(J2 @ A)) == pytest.approx([2.0, 2.0])
        assert williamson(A).kappas[0] == pytest.approx(2.0, abs=1e-10)

    def test_construct_then_recover(self):
        for seed in range(20):
            L = random_symplectic(2, seed)
            D = direct_sum([3 * np.eye(2), 2 * np.eye(2)])
            np.testing.assert_allclose(williamson(L.T @ D @ L).kappas, [3, 2], atol=1e-8)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_round_trip(self, n):
        for seed in range(10):
            A = random_positive_definite(n, seed)
            W = williamson(A)
            assert np.abs(W.reconstruct() - A).max() <= 1e-7
            assert symplectic_residual(W.L) <= 1e-8
            assert np.all(np.diff(W.kappas) <= 0)
            assert np.all(W.kappas > 0)

    def test_degenerate_kappas(self):
        W = williamson(np.eye(6))
        np.testing.assert_allclose(W.kappas, [1, 1, 1])
        assert symplectic_residual(W.L) <= 1e-12

    def test_not_symmetric(self):
        with pytest.raises(DimensionError):
            williamson(np.array([[1.0, 0.5], [0.0, 1.0]]))

    @pytest.mark.parametrize("A", [np.diag([1.0, 0.0]), np.diag([1.0, -1.0]), np.diag([1.0, 1e-14])])
    def test_not_positive_definite(self, A):
        with pytest.raises(NotPositiveDefiniteError):
            williamson(A)


class TestSymplecticSpectrum:
    def test_vacuum(self):
        np.testing.assert_allclose(symplectic_spectrum(0.5 * np.eye(6)), [0.5] * 3)

    def test_two_by_two(self):
        np.testing.assert_allclose(symplectic_spectrum(np.diag([2.0, 0.5])), [1.0])

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_invariance(self, seed):
        A = random_positive_definite(3, seed)
        L = random_symplectic(3, seed + 1)
        np.testing.assert_allclose(
            symplectic_spectrum(L.T @ A @ L), symplectic_spectrum(A), atol=1e-7, rtol=0
        )

    def test_agrees_with_williamson(self):
        for seed in range(20):
            A = random_positive_definite(1 + seed % 5, seed)
            np.testing.assert_allclose(symplectic_spectrum(A), williamson(A).kappas, atol=1e-9)

    def test_errors(self):
        with pytest.raises(NotPositiveDefiniteError):
            symplectic_spectrum(-np.eye(2))
