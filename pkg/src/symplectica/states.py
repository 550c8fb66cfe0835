"""
Gaussian states at the level of their parameters.

A state on ``n`` modes is the triple ``(ell, m, cov)``: mean momenta, mean
positions and the covariance matrix of ``(p_1, -q_1, ..., p_n, -q_n)``. It is
valid iff ``2 cov - i J >= 0``. Linear maps act on the stacked mean vector
``mu = (ell_1, -m_1, ..., ell_n, -m_n)``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .core import (
    DEFAULT_TOL,
    as_matrix,
    hermitian_min_eigenvalue,
    is_symplectic,
    make_J,
    max_norm,
    num_modes,
    random_symplectic,
    symplectic_inverse,
    symplectic_spectrum,
    williamson,
)
from .exceptions import DimensionError, InvalidArgumentError, InvalidStateError

# A state is pure when every Williamson parameter is within this of 1/2.
PURITY_TOL = 1e-7


def mu_from_means(ell, m):
    """Interleave ``(ell_j, -m_j)`` into a vector of length ``2n``."""
    ell = np.asarray(ell, dtype=float).ravel()
    m = np.asarray(m, dtype=float).ravel()
    if ell.shape != m.shape:
        raise DimensionError(f"mean vectors differ in length: {ell.size} vs {m.size}")
    mu = np.empty(2 * ell.size)
    mu[0::2] = ell
    mu[1::2] = -m
    return mu


def means_from_mu(mu):
    mu = np.asarray(mu, dtype=float).ravel()
    if mu.size % 2:
        raise DimensionError(f"mu must have even length, got {mu.size}")
    return mu[0::2].copy(), -mu[1::2]


def covariance_margin(cov):
    """Minimum eigenvalue of ``2 cov - i J``; nonnegative iff ``cov`` is admissible."""
    n = num_modes(cov, "covariance")
    return hermitian_min_eigenvalue(2 * cov, -make_J(n))


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Validated Gaussian state parameters. Build with :func:`new_state`."""

    ell: np.ndarray
    m: np.ndarray
    cov: np.ndarray

    @property
    def n(self):
        return self.ell.size

    @property
    def mu(self):
        return mu_from_means(self.ell, self.m)

    def allclose(self, other, atol=1e-9):
        return (
            self.n == other.n
            and np.allclose(self.ell, other.ell, rtol=0, atol=atol)
            and np.allclose(self.m, other.m, rtol=0, atol=atol)
            and np.allclose(self.cov, other.cov, rtol=0, atol=atol)
        )


def new_state(ell, m, cov, tol=DEFAULT_TOL):
    """Check the parameters and return a :class:`GaussianState`.

    Raises
    ------
    DimensionError
        On inconsistent lengths or a non-symmetric covariance.
    InvalidStateError
        If ``2 cov - i J`` has an eigenvalue below ``-tol``; the offending
        minimum eigenvalue is stored on the exception as ``margin``.
    """
    ell = np.array(ell, dtype=float).ravel()
    m = np.array(m, dtype=float).ravel()
    cov = as_matrix(cov, "covariance")
    n = num_modes(cov, "covariance")
    if ell.size != n or m.size != n:
        raise DimensionError(
            f"covariance has {n} modes but mean vectors have lengths {ell.size}, {m.size}"
        )
    if not (np.all(np.isfinite(ell)) and np.all(np.isfinite(m))):
        raise InvalidArgumentError("mean vectors contain non-finite entries")
    if max_norm(cov - cov.T) > tol.bound(max_norm(cov)):
        raise DimensionError("covariance is not symmetric within tolerance")
    cov = (cov + cov.T) / 2
    margin = covariance_margin(cov)
    if margin < -tol.bound(2 * max_norm(cov)):
        raise InvalidStateError(
            f"covariance violates 2S - iJ >= 0 (min eigenvalue {margin:.6g})", margin
        )
    return GaussianState(ell, m, cov)


def from_mu(mu, cov, tol=DEFAULT_TOL):
    ell, m = means_from_mu(mu)
    return new_state(ell, m, cov, tol)


def vacuum(n):
    return new_state(np.zeros(n), np.zeros(n), 0.5 * np.eye(2 * n))


def thermal(kappa):
    """Single-mode state with covariance ``kappa * I_2``, ``kappa >= 1/2``."""
    if not kappa >= 0.5:
        raise InvalidArgumentError(f"thermal parameter must be >= 1/2, got {kappa}")
    return new_state([0.0], [0.0], kappa * np.eye(2))


def coherent(u):
    """Vacuum displaced by the complex vector ``u``."""
    u = np.atleast_1d(np.asarray(u, dtype=complex))
    return displace(vacuum(u.size), u)


def displace(state, u):
    """Weyl displacement by ``u = s + i t``: ``ell += sqrt(2) t``, ``m += sqrt(2) s``."""
    u = np.atleast_1d(np.asarray(u, dtype=complex)).ravel()
    if u.size != state.n:
        raise DimensionError(f"displacement has {u.size} components for {state.n} modes")
    root2 = np.sqrt(2.0)
    return GaussianState(state.ell + root2 * u.imag, state.m + root2 * u.real, state.cov)


def symplectic_transform(state, L, tol=DEFAULT_TOL):
    """Conjugate by the unitary implementing ``L``: parameters map by ``L^{-1}``."""
    L = as_matrix(L, "L")
    if L.shape != (2 * state.n, 2 * state.n):
        raise DimensionError(f"L must be {2 * state.n}x{2 * state.n}, got {L.shape}")
    if not is_symplectic(L, tol.scaled(100)):
        raise InvalidArgumentError("L is not symplectic")
    Linv = symplectic_inverse(L)
    return from_mu(Linv.T @ state.mu, Linv.T @ state.cov @ Linv, tol)


def tensor(a, b):
    cov = np.zeros((2 * (a.n + b.n),) * 2)
    k = 2 * a.n
    cov[:k, :k] = a.cov
    cov[k:, k:] = b.cov
    return new_state(np.r_[a.ell, b.ell], np.r_[a.m, b.m], cov)


def marginal(state, keep, tol=DEFAULT_TOL):
    """Reduced state on the modes listed in ``keep`` (0-based, in that order)."""
    keep = [int(k) for k in keep]
    if not keep or len(set(keep)) != len(keep) or not all(0 <= k < state.n for k in keep):
        raise InvalidArgumentError(f"invalid mode subset {keep} for {state.n} modes")
    idx = np.ravel([[2 * k, 2 * k + 1] for k in keep])
    return new_state(state.ell[keep], state.m[keep], state.cov[np.ix_(idx, idx)], tol)


def williamson_parameters(state):
    """Symplectic eigenvalues of the covariance, descending, all ``>= 1/2``."""
    return symplectic_spectrum(state.cov)


def is_pure(state, tol=PURITY_TOL):
    return bool(np.max(np.abs(williamson_parameters(state) - 0.5)) <= tol)


def mode_entropy(kappa):
    """Entropy in nats of the single-mode thermal state with parameter ``kappa``.

    ``g(k) = (k + 1/2) ln(k + 1/2) - (k - 1/2) ln(k - 1/2)``, with ``g(1/2) = 0``.
    """
    k = np.maximum(np.asarray(kappa, dtype=float), 0.5)
    return xlogy(k + 0.5, k + 0.5) - xlogy(k - 0.5, k - 0.5)


def von_neumann_entropy(state):
    return float(np.sum(mode_entropy(williamson_parameters(state))))


def purification_covariance(cov, tol=DEFAULT_TOL):
    """Symplectic ``L``, ``M`` with ``cov = (L^T L + M^T M) / 4``.

    In the Williamson frame ``cov = V^T diag(kappa) V`` each mode is split as
    ``kappa I = (P^T P + Q^T Q)/4`` with ``P = diag(a, 1/a)``,
    ``Q = diag(1/a, a)`` and ``a^2 = 2 kappa + sqrt(4 kappa^2 - 1)``.
    """
    cov = as_matrix(cov, "covariance")
    margin = covariance_margin(cov)
    if margin < -tol.bound(2 * max_norm(cov)):
        raise InvalidStateError(
            f"covariance violates 2S - iJ >= 0 (min eigenvalue {margin:.6g})", margin
        )
    W = williamson(cov, tol)
    V = symplectic_inverse(W.L)
    k = np.maximum(W.kappas, 0.5)
    a = np.sqrt(2 * k + np.sqrt(np.maximum(4 * k * k - 1, 0.0)))
    P = np.ravel(np.column_stack([a, 1 / a]))
    return P[:, None] * V, (1 / P)[:, None] * V


def random_covariance(n, seed, pure=False):
    """Random admissible covariance ``L^T diag(kappa) L``, deterministic per seed.

    Thermal parameters are ``1/2 + Exp(1)``; ``pure=True`` forces all of them
    to 1/2.
    """
    rng = np.random.default_rng(seed)
    L = random_symplectic(n, rng.integers(2 ** 63))
    kappas = np.full(n, 0.5) if pure else 0.5 + rng.exponential(1.0, n)
    return L.T @ np.diag(np.repeat(kappas, 2)) @ L


def random_state(n, seed, pure=False):
    rng = np.random.default_rng(seed)
    cov = random_covariance(n, rng.integers(2 ** 63), pure=pure)
    return new_state(rng.standard_normal(n), rng.standard_normal(n), cov)

