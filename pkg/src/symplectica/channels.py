"""
Gaussian channels acting on state parameters.

Three families are represented:

* :class:`BosonicChannel` adds classical noise, ``S -> S + C``.
* :class:`SymplecticChannel` couples the system to ``k`` vacuum ancillas
  through a symplectic ``M`` and discards them,
  ``S -> M11^T S M11 + M21^T M21 / 2`` and ``mu -> M11^T mu``.
* :class:`QuasifreeChannel` is ``S -> A^T S A + B / 2``, ``mu -> A^T mu``,
  admissible when ``B + i(A^T J A - J) >= 0``.

Reversible channels are symplectic channels with ``k = 0``. Note that
``SymplecticChannel(M)`` maps parameters by ``M`` itself, so the channel
implementing the unitary for ``L`` has ``M = L^{-1}``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import states
from .core import (
    DEFAULT_TOL,
    as_matrix,
    hermitian_min_eigenvalue,
    is_symplectic,
    make_J,
    max_norm,
    num_modes,
    random_symplectic,
    symplectic_residual,
)
from .dilation import _product_matrix
from .exceptions import DimensionError, InvalidChannelError


def _check_modes(channel_n, state):
    if channel_n != state.n:
        raise DimensionError(f"channel acts on {channel_n} modes, state has {state.n}")


@dataclass(frozen=True, eq=False)
class BosonicChannel:
    C: np.ndarray

    def __post_init__(self):
        C = as_matrix(self.C, "C")
        object.__setattr__(self, "C", C)
        num_modes(C, "C")
        if max_norm(C - C.T) > DEFAULT_TOL.bound(max_norm(C)):
            raise InvalidChannelError("bosonic noise matrix is not symmetric")
        low = float(np.linalg.eigvalsh((C + C.T) / 2)[0])
        if low < -DEFAULT_TOL.bound(max_norm(C)):
            raise InvalidChannelError(f"bosonic noise matrix is not PSD (min eigenvalue {low:.3g})", low)

    @property
    def n(self):
        return self.C.shape[0] // 2

    def apply(self, state):
        _check_modes(self.n, state)
        return states.new_state(state.ell, state.m, state.cov + self.C)


@dataclass(frozen=True, eq=False)
class SymplecticChannel:
    """Channel with environment-coupling symplectic ``M`` of order ``2(n + k)``."""

    n: int
    M: np.ndarray

    def __post_init__(self):
        M = as_matrix(self.M, "M")
        object.__setattr__(self, "M", M)
        total = num_modes(M, "M")
        if not 1 <= self.n <= total:
            raise DimensionError(f"system modes n={self.n} incompatible with M of order {2 * total}")
        if not is_symplectic(M, DEFAULT_TOL.scaled(100)):
            raise InvalidChannelError(
                f"M is not symplectic (residual {symplectic_residual(M):.3g})"
            )

    @property
    def k(self):
        return self.M.shape[0] // 2 - self.n

    @property
    def M11(self):
        return self.M[:2 * self.n, :2 * self.n]

    @property
    def M21(self):
        return self.M[2 * self.n:, :2 * self.n]

    def apply(self, state):
        _check_modes(self.n, state)
        A, Q = self.M11, self.M21
        return states.from_mu(A.T @ state.mu, A.T @ state.cov @ A + 0.5 * Q.T @ Q)


@dataclass(frozen=True, eq=False)
class QuasifreeChannel:
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        B = as_matrix(self.B, "B")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        if A.shape != B.shape:
            raise DimensionError(f"A and B shapes differ: {A.shape} vs {B.shape}")
        num_modes(A, "A")
        if max_norm(B - B.T) > DEFAULT_TOL.bound(max_norm(B)):
            raise InvalidChannelError("B is not symmetric")
        margin = quasifree_margin(A, B)
        if margin < -DEFAULT_TOL.bound(_quasifree_scale(A, B)):
            raise InvalidChannelError(
                f"B + i(A^T J A - J) is not PSD (min eigenvalue {margin:.3g})", margin
            )

    @property
    def n(self):
        return self.A.shape[0] // 2

    def apply(self, state):
        _check_modes(self.n, state)
        A = self.A
        return states.from_mu(A.T @ state.mu, A.T @ state.cov @ A + 0.5 * self.B)


def apply(channel, state):
    """Output state of ``channel`` on ``state``."""
    return channel.apply(state)


def _quasifree_scale(A, B):
    # rounding in A^T J A grows with |A|^2
    return max_norm(B) + max_norm(A) ** 2


def quasifree_margin(A, B):
    """Minimum eigenvalue of the Hermitian matrix ``B + i(A^T J A - J)``."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"A and B shapes differ: {A.shape} vs {B.shape}")
    J = make_J(num_modes(A, "A"))
    return hermitian_min_eigenvalue(B, A.T @ J @ A - J)


def quasifree_valid(A, B, tol=DEFAULT_TOL):
    """Whether ``(A, B)`` defines a quasifree channel.

    Raises ``DimensionError`` for mismatched shapes or a non-symmetric ``B``.
    """
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if max_norm(B - B.T) > tol.bound(max_norm(B)):
        raise DimensionError("B is not symmetric within tolerance")
    return quasifree_margin(A, B) >= -tol.bound(_quasifree_scale(A, B))


def compose_symplectic(outer, inner):
    """Symplectic channel equal to ``outer`` applied after ``inner``.

    The coupling matrix is ``N = M~ L~`` with ``M`` the inner and ``L`` the
    outer matrix, each padded with identity on the other's ancillas; ``N``
    has ``outer.k + inner.k`` ancilla modes, the outer ones first.
    """
    if outer.n != inner.n:
        raise DimensionError(f"mode counts differ: {outer.n} vs {inner.n}")
    return SymplecticChannel(outer.n, _product_matrix(inner.M, outer.M, outer.n))


def symplectic_to_quasifree(channel):
    """Quasifree parameters ``(M11, M21^T M21)`` of a symplectic channel."""
    Q = channel.M21
    return QuasifreeChannel(channel.M11.copy(), Q.T @ Q)


def dilation_to_channel(d):
    """Quasifree channel ``(A, Q^T Q)`` from a dilation ``[[A, P], [Q, R]]``."""
    Q = d.ancilla_block
    return QuasifreeChannel(d.target.copy(), Q.T @ Q)


def _psd(X, tol):
    return float(np.linalg.eigvalsh((X + X.T) / 2)[0]) >= -tol.bound(max_norm(X))


def in_K(S, tol=DEFAULT_TOL):
    """Membership in the set of admissible covariance matrices."""
    S = as_matrix(S, "S")
    n = num_modes(S, "S")
    if max_norm(S - S.T) > tol.bound(max_norm(S)):
        return False
    return _psd(S, tol) and hermitian_min_eigenvalue(2 * S, -make_J(n)) >= -tol.bound(2 * max_norm(S))


def in_F0(A, B, tol=DEFAULT_TOL):
    """``B >= 0`` and ``B + i(A^T J A - J) >= 0``."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"A and B shapes differ: {A.shape} vs {B.shape}")
    num_modes(A, "A")
    if max_norm(B - B.T) > tol.bound(max_norm(B)):
        return False
    return _psd(B, tol) and quasifree_valid(A, B, tol)


@dataclass(frozen=True, eq=False)
class MembershipVerdict:
    """Sampling evidence for ``S -> A^T S A + B/2`` preserving admissible covariances.

    ``member`` is True when no sampled covariance was mapped outside the set;
    that is evidence, not proof.
    """

    member: bool
    trials: int
    counterexample: Optional[np.ndarray] = None


# Share of sampled covariances drawn from the pure boundary.
BOUNDARY_FRACTION = 0.3


def sample_K(n, rng):
    """One admissible covariance; pure with probability ``BOUNDARY_FRACTION``."""
    L = random_symplectic(n, rng.integers(2 ** 63))
    if rng.random() < BOUNDARY_FRACTION:
        return 0.5 * L.T @ L
    kappas = 0.5 + rng.exponential(1.0, n)
    return L.T @ np.diag(np.repeat(kappas, 2)) @ L


def sample_F_membership(A, B, trials=500, seed=0, tol=DEFAULT_TOL):
    """Search for an admissible ``S`` with ``A^T S A + B/2`` inadmissible.

    The vacuum covariance ``I/2`` is always the first probe; the remaining
    ``trials - 1`` are drawn by :func:`sample_K`.
    """
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    n = num_modes(A, "A")
    if B.shape != A.shape:
        raise DimensionError(f"A and B shapes differ: {A.shape} vs {B.shape}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    for t in range(trials):
        S = 0.5 * np.eye(2 * n) if t == 0 else sample_K(n, rng)
        if not in_K(A.T @ S @ A + 0.5 * B, tol):
            return MembershipVerdict(False, t + 1, S)
    return MembershipVerdict(True, trials)


def random_symplectic_channel(n, k, seed):
    return SymplecticChannel(n, random_symplectic(n + k, seed))


def random_quasifree(n, seed):
    """Random admissible ``(A, B)``.

    ``B`` is the modulus ``|i Y|`` of ``Y = A^T J A - J`` plus a random PSD
    term, so ``B + iY >= 0`` holds with equality on part of the spectrum
    when the extra term is small.
    """
    rng = np.random.default_rng(seed)
    J = make_J(n)
    A = rng.standard_normal((2 * n, 2 * n)) / np.sqrt(2 * n)
    Y = A.T @ J @ A - J
    w, V = np.linalg.eigh(Y.T @ Y)
    G = rng.standard_normal((2 * n, 2 * n))
    B = (V * np.sqrt(np.clip(w, 0, None))) @ V.T + rng.random() * G.T @ G / (2 * n)
    return QuasifreeChannel(A, (B + B.T) / 2)


def random_bosonic(n, seed):
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((2 * n, 2 * n))
    return BosonicChannel(G.T @ G / (2 * n))
