import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import rand_matrix
from symplectica.channels import (
    BosonicChannel,
    QuasifreeChannel,
    SymplecticChannel,
    apply,
    compose_symplectic,
    dilation_to_channel,
    in_F0,
    in_K,
    quasifree_margin,
    quasifree_valid,
    random_bosonic,
    random_quasifree,
    random_symplectic_channel,
    sample_F_membership,
    sample_K,
    symplectic_to_quasifree,
)
from symplectica.core import make_J, random_symplectic
from symplectica.dilation import dilate_general
from symplectica.exceptions import DimensionError, InvalidChannelError
from symplectica.states import random_state, symplectic_transform, thermal, vacuum

seeds = st.integers(min_value=0, max_value=2 ** 32)


def attenuator(eta, n=1):
    I = np.eye(2 * n)
    return np.sqrt(eta) * I, (1 - eta) * I


def amplifier(g, n=1):
    I = np.eye(2 * n)
    return np.sqrt(g) * I, (g - 1) * I


class TestBosonic:
    def test_adds_noise(self):
        out = BosonicChannel(np.eye(2)).apply(thermal(1.0))
        np.testing.assert_allclose(out.cov, 2 * np.eye(2))

    def test_rejects_negative(self):
        with pytest.raises(InvalidChannelError):
            BosonicChannel(-np.eye(2))
        with pytest.raises(InvalidChannelError):
            BosonicChannel(np.array([[1.0, 0.5], [0.0, 1.0]]))

    def test_mode_mismatch(self):
        with pytest.raises(DimensionError):
            random_bosonic(2, 0).apply(vacuum(1))


class TestSymplectic:
    def test_unitary_channel_matches_transform(self):
        st_ = random_state(2, 3)
        L = random_symplectic(2, 4)
        ch = SymplecticChannel(2, np.linalg.inv(L))
        assert ch.k == 0
        assert ch.apply(st_).allclose(symplectic_transform(st_, L), 1e-9)

    def test_identity_is_identity(self):
        st_ = random_state(1, 0)
        assert SymplecticChannel(1, np.eye(4)).apply(st_).allclose(st_, 0)

    def test_beam_splitter_is_attenuator(self):
        # 50:50 beam splitter with vacuum environment
        c = np.sqrt(0.5)
        M = np.kron([[c, c], [-c, c]], np.eye(2))
        out = SymplecticChannel(1, M).apply(thermal(3.0))
        np.testing.assert_allclose(out.cov, (0.5 * 3.0 + 0.25) * np.eye(2), atol=1e-14)

    def test_rejects_non_symplectic(self):
        with pytest.raises(InvalidChannelError):
            SymplecticChannel(1, 2 * np.eye(4))
        with pytest.raises(DimensionError):
            SymplecticChannel(3, np.eye(4))

    def test_blocks(self):
        ch = random_symplectic_channel(2, 1, 0)
        assert ch.M11.shape == (4, 4) and ch.M21.shape == (2, 4)

    @pytest.mark.parametrize("n,k1,k2", [(1, 0, 1), (1, 2, 2), (2, 1, 0), (3, 2, 1)])
    def test_compose_matches_sequence(self, n, k1, k2):
        outer = random_symplectic_channel(n, k1, 10 * n + k1)
        inner = random_symplectic_channel(n, k2, 20 * n + k2)
        both = compose_symplectic(outer, inner)
        assert both.k == k1 + k2
        for s in range(5):
            st_ = random_state(n, s)
            assert both.apply(st_).allclose(outer.apply(inner.apply(st_)), 1e-8)

    def test_compose_mismatch(self):
        with pytest.raises(DimensionError):
            compose_symplectic(random_symplectic_channel(1, 1, 0), random_symplectic_channel(2, 1, 0))

    def test_to_quasifree(self):
        ch = random_symplectic_channel(2, 2, 5)
        qf = symplectic_to_quasifree(ch)
        st_ = random_state(2, 6)
        assert apply(qf, st_).allclose(apply(ch, st_), 1e-12)


class TestQuasifree:
    @pytest.mark.parametrize("eta", [0.0, 0.3, 1.0])
    def test_attenuator_valid(self, eta):
        assert quasifree_valid(*attenuator(eta))
        QuasifreeChannel(*attenuator(eta))

    @pytest.mark.parametrize("g", [1.0, 2.0, 10.0])
    def test_amplifier_valid(self, g):
        assert quasifree_valid(*amplifier(g))

    def test_noiseless_amplifier_invalid(self):
        A = np.sqrt(2) * np.eye(2)
        assert not quasifree_valid(A, np.zeros((2, 2)))
        assert quasifree_valid(A, np.eye(2))
        with pytest.raises(InvalidChannelError) as info:
            QuasifreeChannel(A, np.zeros((2, 2)))
        assert info.value.margin == pytest.approx(-1.0)

    def test_margin_of_attenuator(self):
        # (1-eta)(I + iJ) has eigenvalues 0 and 2(1-eta)
        assert quasifree_margin(*attenuator(0.25)) == pytest.approx(0.0, abs=1e-14)

    def test_asymmetric_b(self):
        with pytest.raises(DimensionError):
            quasifree_valid(np.eye(2), np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_transpose_criterion(self):
        # transposition: A^T J A - J = -2J, so B = b I needs b >= 2
        A = np.diag([1.0, -1.0])
        assert not quasifree_valid(A, 1.9 * np.eye(2))
        assert quasifree_valid(A, 2 * np.eye(2))

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_random_generator_valid(self, seed):
        ch = random_quasifree(2, seed)
        assert in_F0(ch.A, ch.B)


class TestMembership:
    def test_in_K(self):
        assert in_K(0.5 * np.eye(2))
        assert not in_K(0.4 * np.eye(2))
        assert not in_K(np.array([[1.0, 0.2], [0.0, 1.0]]))

    def test_in_F0_requires_psd_b(self):
        # margin condition holds but B itself is not PSD
        A, B = np.diag([2.0, 0.5]), np.diag([-0.1, 0.2])
        assert quasifree_margin(A, B) < 0 or not in_F0(A, B)
        assert not in_F0(np.eye(2), -np.eye(2))

    def test_sample_K_admissible(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            assert in_K(sample_K(3, rng))

    def test_sampler_rejects_minus_identity(self):
        v = sample_F_membership(np.eye(2), -np.eye(2))
        assert not v.member
        assert v.trials == 1
        np.testing.assert_array_equal(v.counterexample, 0.5 * np.eye(2))

    def test_sampler_accepts_attenuator(self):
        v = sample_F_membership(*attenuator(0.7, 2), trials=100)
        assert v.member and v.trials == 100 and v.counterexample is None

    def test_noiseless_amplifier_preserves_states(self):
        # S -> 2S keeps covariances admissible although (A, 0) is not in F0
        A, B = np.sqrt(2) * np.eye(2), np.zeros((2, 2))
        assert not in_F0(A, B)
        assert sample_F_membership(A, B, trials=200).member

    def test_sampler_finds_contraction(self):
        v = sample_F_membership(0.5 * np.eye(4), np.zeros((4, 4)))
        assert not v.member and v.trials == 1

    def test_sampler_arguments(self):
        with pytest.raises(ValueError):
            sample_F_membership(np.eye(2), np.eye(2), trials=0)
        with pytest.raises(DimensionError):
            sample_F_membership(np.eye(2), np.eye(4))

    def test_sampler_deterministic(self):
        A = np.diag([1.0, -1.0])
        a = sample_F_membership(A, 0.5 * np.eye(2), seed=3)
        b = sample_F_membership(A, 0.5 * np.eye(2), seed=3)
        assert a.trials == b.trials


class TestDilationChannel:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_in_F0(self, n):
        for seed in range(3):
            ch = dilation_to_channel(dilate_general(rand_matrix(seed, n)))
            assert in_F0(ch.A, ch.B)

    def test_action_equals_symplectic_channel(self):
        d = dilate_general(rand_matrix(0, 2))
        qf = dilation_to_channel(d)
        sc = SymplecticChannel(d.n, d.matrix)
        st_ = random_state(2, 1)
        assert qf.apply(st_).allclose(sc.apply(st_), 1e-9)
