"""
Symplectic linear algebra on real dense matrices.

Coordinates are ordered mode by mode, ``(p_1, q_1, ..., p_n, q_n)``, and the
canonical form ``J_2n`` is block diagonal with blocks ``[[0, -1], [1, 0]]``.
All functions take and return plain ``numpy.ndarray`` objects of dtype
float64.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag, expm, schur

from .exceptions import (
    CertificationError,
    DimensionError,
    InvalidArgumentError,
    NotPositiveDefiniteError,
)

_J2 = np.array([[0.0, -1.0], [1.0, 0.0]])

# Williamson inputs with min eigenvalue <= this fraction of the largest are
# rejected as degenerate.
DEGENERACY_RATIO = 1e-12


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative tolerance pair.

    A residual ``R`` passes against a reference magnitude ``ref`` when
    ``max|R| <= atol + rtol * ref``.
    """

    atol: float = 1e-9
    rtol: float = 1e-9

    def __post_init__(self):
        if not (self.atol >= 0 and self.rtol >= 0):
            raise InvalidArgumentError(
                f"tolerances must be nonnegative, got atol={self.atol}, rtol={self.rtol}"
            )

    def bound(self, reference=1.0):
        return self.atol + self.rtol * float(reference)

    def scaled(self, factor):
        return Tolerance(self.atol * factor, self.rtol * factor)


DEFAULT_TOL = Tolerance()


def as_matrix(x, name="matrix"):
    """Coerce ``x`` to a finite 2-d float64 array or raise ``DimensionError``."""
    arr = np.array(x, dtype=float)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} contains non-finite entries")
    return arr


def max_norm(x):
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def num_modes(L, name="matrix"):
    """Return ``n`` for a square matrix of order ``2n``; raise otherwise."""
    rows, cols = L.shape
    if rows != cols:
        raise DimensionError(f"{name} must be square, got {rows}x{cols}")
    if rows == 0 or rows % 2:
        raise DimensionError(f"{name} must have even positive order, got {rows}")
    return rows // 2


def make_J(n):
    """Canonical symplectic form of order ``2n``.

    Parameters
    ----------
    n : int
        Number of modes, at least 1.

    Returns
    -------
    ndarray of shape (2n, 2n)
    """
    if int(n) != n or n < 1:
        raise DimensionError(f"number of modes must be a positive integer, got {n}")
    return np.kron(np.eye(int(n)), _J2)


def symplectic_residual(L):
    """``max|L^T J L - J|`` for a square even-order matrix."""
    L = as_matrix(L)
    J = make_J(num_modes(L))
    return max_norm(L.T @ J @ L - J)


def is_symplectic(L, tol=DEFAULT_TOL):
    """True iff ``L^T J L = J`` within ``tol``.

    The relative part of the tolerance is taken against ``max|L|**2``, the
    scale at which rounding enters the triple product.
    """
    L = as_matrix(L)
    return symplectic_residual(L) <= tol.bound(max_norm(L) ** 2)


def symplectic_inverse(L):
    """Inverse of a symplectic matrix, ``-J L^T J``. No check is made."""
    J = make_J(num_modes(L))
    return -J @ L.T @ J


def direct_sum(blocks):
    """Block-diagonal matrix of square blocks."""
    blocks = [as_matrix(b, "block") for b in blocks]
    if not blocks:
        raise InvalidArgumentError("direct_sum needs at least one block")
    for b in blocks:
        if b.shape[0] != b.shape[1]:
            raise DimensionError(f"direct_sum blocks must be square, got {b.shape}")
    return block_diag(*blocks)


def mode_permutation(perm):
    """Orthogonal symplectic matrix reordering modes.

    Mode ``t`` of the output vector is mode ``perm[t]`` of the input, with the
    ``(p, q)`` pair moved together, so ``P @ M @ P.T`` relabels the modes of
    ``M`` in the order given by ``perm``. Modes are 0-based.
    """
    perm = [int(i) for i in perm]
    n = len(perm)
    if n == 0 or sorted(perm) != list(range(n)):
        raise InvalidArgumentError(f"{perm} is not a permutation of 0..{n - 1}")
    P = np.zeros((2 * n, 2 * n))
    for t, src in enumerate(perm):
        P[2 * t, 2 * src] = 1.0
        P[2 * t + 1, 2 * src + 1] = 1.0
    return P


def random_symplectic(n, seed):
    """Deterministic random element of ``Sp(2n)``.

    Computed as ``expm(J H)`` with ``H`` symmetric, entries uniform in
    ``[-1, 1]``, drawn from a PCG64 generator seeded with ``seed``.
    """
    J = make_J(n)
    rng = np.random.default_rng(seed)
    H = rng.uniform(-1.0, 1.0, size=J.shape)
    H = (H + H.T) / 2
    L = expm(J @ H)
    if not is_symplectic(L, DEFAULT_TOL.scaled(100)):
        raise CertificationError(
            f"matrix exponential lost symplecticity (residual {symplectic_residual(L):.3g})"
        )
    return L


def random_positive_definite(n, seed):
    """Deterministic random symmetric positive definite matrix of order ``2n``."""
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((2 * n, 2 * n))
    return G.T @ G / (2 * n) + 0.5 * np.eye(2 * n)


def _check_symmetric(X, tol, name):
    if max_norm(X - X.T) > tol.bound(max_norm(X)):
        raise DimensionError(f"{name} is not symmetric within tolerance")


def hermitian_embedding(X, Y):
    """Real symmetric form ``[[X, -Y], [Y, X]]`` of the Hermitian ``X + iY``.

    Each eigenvalue of ``X + iY`` appears twice in the embedding.
    """
    return np.block([[X, -Y], [Y, X]])


def hermitian_min_eigenvalue(X, Y):
    """Smallest eigenvalue of the Hermitian matrix ``X + iY``."""
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    if X.shape != Y.shape or X.shape[0] != X.shape[1]:
        raise DimensionError(f"X and Y must be square of equal shape, got {X.shape}, {Y.shape}")
    E = hermitian_embedding((X + X.T) / 2, (Y - Y.T) / 2)
    return float(np.linalg.eigvalsh(E)[0])


def hermitian_psd_check(X, Y, tol=DEFAULT_TOL):
    """Decide ``X + iY >= 0`` for symmetric ``X`` and skew-symmetric ``Y``.

    Raises ``DimensionError`` if the shapes disagree or if ``X`` (resp. ``Y``)
    is not symmetric (resp. skew-symmetric) within ``tol``.
    """
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    if X.shape != Y.shape:
        raise DimensionError(f"shape mismatch {X.shape} vs {Y.shape}")
    num_modes(X, "X")
    _check_symmetric(X, tol, "X")
    if max_norm(Y + Y.T) > tol.bound(max_norm(Y)):
        raise DimensionError("Y is not skew-symmetric within tolerance")
    return hermitian_min_eigenvalue(X, Y) >= -tol.bound(max_norm(X))


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Symplectic ``L`` and descending ``kappas`` with ``L^T A L = diag(kappas (x) I_2)``."""

    L: np.ndarray
    kappas: np.ndarray

    @property
    def normal_form(self):
        return np.diag(np.repeat(self.kappas, 2))

    def reconstruct(self):
        """Recover ``A = L^{-T} D L^{-1}``."""
        Linv = symplectic_inverse(self.L)
        return Linv.T @ self.normal_form @ Linv


def _validated_positive_definite(A, tol):
    A = as_matrix(A, "A")
    num_modes(A, "A")
    _check_symmetric(A, tol, "A")
    A = (A + A.T) / 2
    w, V = np.linalg.eigh(A)
    if w[-1] <= 0 or w[0] <= DEGENERACY_RATIO * w[-1]:
        raise NotPositiveDefiniteError(
            f"matrix is not strictly positive definite (min eigenvalue {w[0]:.3g})"
        )
    return A, w, V


def williamson(A, tol=DEFAULT_TOL):
    """Williamson normal form of a symmetric positive definite matrix.

    Parameters
    ----------
    A : array_like of shape (2n, 2n)
        Symmetric, strictly positive definite.
    tol : Tolerance, optional

    Returns
    -------
    WilliamsonDecomposition
        ``L`` symplectic and ``kappas`` sorted descending with
        ``L.T @ A @ L == diag(k1, k1, ..., kn, kn)``.

    Notes
    -----
    With ``R = A^{-1/2}`` the matrix ``K = R J R`` is skew-symmetric with
    eigenvalues ``+-i/kappa_j``. Its real Schur form ``Q^T K Q`` is block
    diagonal; after orienting every block as ``+J_2 / kappa_j`` the matrix
    ``L = R Q diag(sqrt(kappa))`` has the required properties. Both are
    verified before returning.
    """
    A, w, V = _validated_positive_definite(A, tol)
    n = A.shape[0] // 2
    R = (V * w ** -0.5) @ V.T
    K = R @ make_J(n) @ R
    K = (K - K.T) / 2
    T, Q = schur(K, output="real")

    omegas = np.empty(n)
    Q = Q.copy()
    for j in range(n):
        i0, i1 = 2 * j, 2 * j + 1
        b, c = T[i0, i1], T[i1, i0]
        if b * c >= 0:
            raise CertificationError("real Schur form of the skew matrix is not 2x2 block diagonal")
        if c < 0:
            Q[:, [i0, i1]] = Q[:, [i1, i0]]
        omegas[j] = (abs(b) + abs(c)) / 2

    order = np.argsort(omegas, kind="stable")
    cols = np.ravel([[2 * j, 2 * j + 1] for j in order])
    Q = Q[:, cols]
    kappas = 1.0 / omegas[order]
    L = (R @ Q) * np.repeat(np.sqrt(kappas), 2)

    out = WilliamsonDecomposition(L, kappas)
    check = tol.scaled(100)
    if not is_symplectic(L, check):
        raise CertificationError(
            f"Williamson frame not symplectic (residual {symplectic_residual(L):.3g})"
        )
    diag_residual = max_norm(L.T @ A @ L - out.normal_form)
    if diag_residual > check.bound(kappas[0]):
        raise CertificationError(f"Williamson diagonalization residual {diag_residual:.3g}")
    return out


def symplectic_spectrum(A, tol=DEFAULT_TOL):
    """Symplectic eigenvalues of ``A``, descending.

    These are the moduli of the eigenvalue pairs ``+-i kappa_j`` of ``J A``;
    the routine does not go through :func:`williamson`.
    """
    A, _, _ = _validated_positive_definite(A, tol)
    n = A.shape[0] // 2
    mods = np.sort(np.abs(np.linalg.eigvals(make_J(n) @ A)))[::-1]
    return (mods[0::2] + mods[1::2]) / 2
