"""
Symplectic dilations of real even-order matrices.

A dilation of a ``2n x 2n`` matrix ``A`` is a symplectic matrix of order
``2(n + m)`` whose leading ``2n x 2n`` block is ``A``. System modes always
come first and the ``m`` ancilla modes last.

The general construction reduces an arbitrary ``A`` to a convex combination
of pieces that are positive definite, negated positive definite, direct sums
of ``2 x 2`` blocks, or direct sums of ``4 x 4`` skew blocks, each of which
has an explicit dilation of order ``4n``.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import core
from .core import (
    DEFAULT_TOL,
    as_matrix,
    direct_sum,
    max_norm,
    mode_permutation,
    num_modes,
    symplectic_inverse,
    symplectic_residual,
    williamson,
)
from .exceptions import CertificationError, DimensionError, InvalidArgumentError
from .onefactor import one_factorization

# Dilation invariants are certified at this multiple of the default tolerance.
CERTIFY_TOL = DEFAULT_TOL.scaled(100)

# Singular values at or below this fraction of the largest count as zero.
RANK_RATIO = 1e-12

# Shift added to the positive and negative parts of the symmetric part.
EPSILON = 1.0


@dataclass(frozen=True)
class Dilation:
    """A certified symplectic dilation.

    Construction fails with ``CertificationError`` unless ``matrix`` is
    symplectic and its leading block reproduces ``target``, both within
    :data:`CERTIFY_TOL`.
    """

    matrix: np.ndarray
    n: int
    m: int
    target: np.ndarray

    def __post_init__(self):
        size = 2 * (self.n + self.m)
        if self.matrix.shape != (size, size) or self.target.shape != (2 * self.n, 2 * self.n):
            raise DimensionError(
                f"dilation shapes inconsistent: matrix {self.matrix.shape}, "
                f"target {self.target.shape}, n={self.n}, m={self.m}"
            )
        sym, block = self.residuals()
        if sym > CERTIFY_TOL.bound(max_norm(self.matrix) ** 2):
            raise CertificationError(f"dilation is not symplectic (residual {sym:.3g})")
        if block > CERTIFY_TOL.bound(max_norm(self.target)):
            raise CertificationError(f"dilation does not recover its target (residual {block:.3g})")

    @property
    def order(self):
        return 2 * (self.n + self.m)

    def residuals(self):
        """``(symplecticity residual, leading-block residual)`` in max norm."""
        k = 2 * self.n
        return (
            symplectic_residual(self.matrix),
            max_norm(self.matrix[:k, :k] - self.target),
        )

    @property
    def ancilla_block(self):
        """Lower-left ``2m x 2n`` block."""
        k = 2 * self.n
        return self.matrix[k:, :k]


def trivial_dilation(L):
    """A symplectic matrix viewed as its own dilation with no ancillas."""
    L = as_matrix(L)
    return Dilation(L, num_modes(L), 0, L.copy())


def negate(d):
    """Dilation of ``-target``: negation preserves symplecticity."""
    return Dilation(-d.matrix, d.n, d.m, -d.target)


class Form(enum.Enum):
    ZERO = "zero"
    RANK_ONE = "rank_one"
    PLUS_PLUS = "plus_plus"
    PLUS_MINUS = "plus_minus"


def canonical_matrix(form, alpha=0.0):
    if form is Form.ZERO:
        return np.zeros((2, 2))
    if form is Form.RANK_ONE:
        return np.diag([alpha, 0.0])
    if form is Form.PLUS_PLUS:
        return np.diag([alpha, alpha])
    return np.diag([alpha, -alpha])


@dataclass(frozen=True)
class Sl2NormalForm:
    """``L1 @ A @ L2 == canonical_matrix(form, alpha)`` with ``det L1 = det L2 = 1``."""

    L1: np.ndarray
    L2: np.ndarray
    form: Form
    alpha: float

    @property
    def canonical(self):
        return canonical_matrix(self.form, self.alpha)


def elementary_dilation(form, alpha=0.0):
    """Closed-form ``4 x 4`` symplectic dilation of a canonical ``2 x 2`` matrix.

    Only the product of the two free off-diagonal parameters is constrained;
    they are chosen with balanced magnitudes.
    """
    form = Form(form)
    if form is Form.ZERO:
        target = np.zeros((2, 2))
        I = np.eye(2)
        return Dilation(np.block([[target, I], [I, target]]), 1, 1, target)
    if not alpha > 0:
        raise InvalidArgumentError(f"alpha must be positive, got {alpha}")
    a = float(alpha)
    if form is Form.RANK_ONE:
        x, y = -1.0, 1.0
        M = [[a, 0, 0, x], [0, 0, y, 0], [0, x, a, 0], [y, 0, 0, 0]]
    elif form is Form.PLUS_PLUS:
        # x * y = 1 - a^2
        if a <= 1:
            x = y = np.sqrt(1 - a * a)
        else:
            x = np.sqrt(a * a - 1)
            y = -x
        M = [[a, 0, x, 0], [0, a, 0, y], [-y, 0, a, 0], [0, -x, 0, a]]
    else:
        # x * y = 1 + a^2
        x = y = np.sqrt(1 + a * a)
        M = [[a, 0, x, 0], [0, -a, 0, y], [y, 0, a, 0], [0, x, 0, -a]]
    return Dilation(np.array(M, dtype=float), 1, 1, canonical_matrix(form, a))


def sl2_normal_form(A):
    """Reduce a ``2 x 2`` matrix to canonical form by ``SL(2, R)`` factors.

    From the SVD ``A = U diag(s1, s2) V^T`` with ``U, V`` rotated into
    ``SO(2)`` (absorbing reflections as a sign on ``s2``), a diagonal
    ``diag(t, 1/t)`` rescaling equalizes the singular values in the
    full-rank case.
    """
    A = as_matrix(A, "A")
    if A.shape != (2, 2):
        raise DimensionError(f"expected a 2x2 matrix, got {A.shape}")
    U, s, Vt = np.linalg.svd(A)
    V = Vt.T
    flip = np.diag([1.0, -1.0])
    sign = 1.0
    if np.linalg.det(U) < 0:
        U = U @ flip
        sign = -sign
    if np.linalg.det(V) < 0:
        V = V @ flip
        sign = -sign
    s1, s2 = s
    # subnormal inputs would underflow alpha below
    if s1 < np.finfo(float).tiny:
        return Sl2NormalForm(np.eye(2), np.eye(2), Form.ZERO, 0.0)
    if s2 <= RANK_RATIO * s1:
        return Sl2NormalForm(U.T, V, Form.RANK_ONE, float(s1))
    t = np.sqrt(s2 / s1)
    L1 = np.diag([t, 1 / t]) @ U.T
    alpha = float(np.sqrt(s1) * np.sqrt(s2))
    return Sl2NormalForm(L1, V, Form.PLUS_PLUS if sign > 0 else Form.PLUS_MINUS, alpha)


def conjugate_dilation(d, L1, L2):
    """Dilation of ``L1 @ d.target @ L2`` for symplectic ``L1``, ``L2`` of order ``2n``."""
    L1 = as_matrix(L1, "L1")
    L2 = as_matrix(L2, "L2")
    k = 2 * d.n
    for name, L in (("L1", L1), ("L2", L2)):
        if L.shape != (k, k):
            raise DimensionError(f"{name} must be {k}x{k}, got {L.shape}")
        if not core.is_symplectic(L, CERTIFY_TOL):
            raise InvalidArgumentError(f"{name} is not symplectic")
    pad = np.eye(2 * d.m)
    M = direct_sum([L1, pad]) @ d.matrix @ direct_sum([L2, pad]) if d.m else L1 @ d.matrix @ L2
    return Dilation(M, d.n, d.m, L1 @ d.target @ L2)


def dilate_2x2(A):
    """Order-4 dilation of an arbitrary ``2 x 2`` matrix."""
    nf = sl2_normal_form(A)
    d = elementary_dilation(nf.form, nf.alpha)
    out = conjugate_dilation(d, np.linalg.inv(nf.L1), np.linalg.inv(nf.L2))
    # carry the exact input as target; the rank cut-off may drop a tiny s2
    return Dilation(out.matrix, 1, 1, as_matrix(A))


def dilate_direct_sum(dilations):
    """Dilation of the direct sum of the targets, system modes grouped first."""
    dilations = list(dilations)
    if not dilations:
        raise InvalidArgumentError("dilate_direct_sum needs at least one dilation")
    if len(dilations) == 1:
        return dilations[0]
    system, ancilla = [], []
    offset = 0
    for d in dilations:
        system.extend(range(offset, offset + d.n))
        ancilla.extend(range(offset + d.n, offset + d.n + d.m))
        offset += d.n + d.m
    P = mode_permutation(system + ancilla)
    M = P @ direct_sum([d.matrix for d in dilations]) @ P.T
    return Dilation(
        M,
        sum(d.n for d in dilations),
        sum(d.m for d in dilations),
        direct_sum([d.target for d in dilations]),
    )


def pad_dilation(d, target_m):
    """Append identity ancilla modes until there are ``target_m`` of them."""
    if target_m < d.m:
        raise InvalidArgumentError(f"cannot pad {d.m} ancilla modes down to {target_m}")
    if target_m == d.m:
        return d
    M = direct_sum([d.matrix, np.eye(2 * (target_m - d.m))])
    return Dilation(M, d.n, int(target_m), d.target)


def orthogonal_from_unit_row(p, tol=DEFAULT_TOL):
    """Householder reflection whose first row (and column) is ``sqrt(p)``."""
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0 or np.any(p <= 0):
        raise InvalidArgumentError("weights must be strictly positive")
    if abs(p.sum() - 1.0) > tol.bound(1.0):
        raise InvalidArgumentError(f"weights must sum to 1, got {p.sum()!r}")
    v = np.sqrt(p)
    v[0] -= 1.0
    vv = v @ v
    H = np.eye(p.size)
    if vv > 0:
        H -= 2.0 * np.outer(v, v) / vv
    return H


def dilate_convex_combination(dilations, p):
    """Dilation of ``sum_i p_i * target_i`` of order ``2k(n + m)``.

    With ``L`` the direct sum of the inputs and ``S = H (x) I`` for the
    orthogonal ``H`` returned by :func:`orthogonal_from_unit_row`, the
    product ``S L S^T`` is symplectic and its leading block is the convex
    combination.
    """
    dilations = list(dilations)
    p = np.asarray(p, dtype=float).ravel()
    if len(dilations) != p.size:
        raise InvalidArgumentError(f"{len(dilations)} dilations but {p.size} weights")
    n, m = dilations[0].n, dilations[0].m
    if any(d.n != n or d.m != m for d in dilations):
        raise DimensionError("convex combination needs dilations of a common (n, m)")
    H = orthogonal_from_unit_row(p)
    if len(dilations) == 1:
        return dilations[0]
    S = np.kron(H, np.eye(2 * (n + m)))
    M = S @ direct_sum([d.matrix for d in dilations]) @ S.T
    target = sum(w * d.target for w, d in zip(p, dilations))
    return Dilation(M, n, len(dilations) * (n + m) - n, target)


def dilate_positive_definite(A):
    """Order-``4n`` dilation of a symmetric strictly positive definite matrix."""
    A = as_matrix(A, "A")
    W = williamson(A)
    d = dilate_direct_sum([elementary_dilation(Form.PLUS_PLUS, k) for k in W.kappas])
    Linv = symplectic_inverse(W.L)
    out = conjugate_dilation(d, Linv.T, Linv)
    return Dilation(out.matrix, out.n, out.m, A)


def dilate_symmetric(A):
    """Order-``8n`` dilation of a symmetric matrix.

    Both ``lam*I + A`` and ``lam*I - A`` are positive definite for
    ``lam = ||A||_2 + 1``; the average of ``A + lam*I`` and the negated
    dilation of ``lam*I - A`` is ``A``.
    """
    A = as_matrix(A, "A")
    num_modes(A, "A")
    if max_norm(A - A.T) > DEFAULT_TOL.bound(max_norm(A)):
        raise DimensionError("dilate_symmetric needs a symmetric matrix")
    A = (A + A.T) / 2
    lam = np.linalg.norm(A, 2) + 1.0
    I = np.eye(A.shape[0])
    plus = dilate_positive_definite(lam * I + A)
    minus = negate(dilate_positive_definite(lam * I - A))
    return dilate_convex_combination([plus, minus], [0.5, 0.5])


def dilate_skew_pair(D):
    """Order-8 dilation of ``[[0, D], [-D^T, 0]]`` for a ``2 x 2`` block ``D``."""
    D = as_matrix(D, "D")
    base = dilate_2x2(D).matrix
    E, F, G = base[:2, 2:], base[2:, :2], base[2:, 2:]
    D = base[:2, :2]
    Z = np.zeros((2, 2))
    M = np.block([
        [Z, D, E, Z],
        [-D.T, Z, Z, -F.T],
        [Z, F, G, Z],
        [-E.T, Z, Z, -G.T],
    ])
    return Dilation(M, 2, 2, M[:4, :4].copy())


def _blocks(A, i, j):
    return A[2 * i:2 * i + 2, 2 * j:2 * j + 2]


def dilate_matching(A, edges):
    """Order-``4n`` dilation of the skew couplings of ``A`` along ``edges``.

    The target has block ``(A_ij - A_ji^T)/2`` at ``(i, j)`` and its negative
    transpose at ``(j, i)`` for every edge, and zeros elsewhere. ``edges`` must
    be vertex-disjoint; vertices not covered receive a ``2 x 2`` zero block.
    """
    n = num_modes(A)
    covered = [v for e in edges for v in e]
    if len(set(covered)) != len(covered):
        raise InvalidArgumentError("edges of a matching must be vertex-disjoint")
    pieces, order = [], []
    for i, j in edges:
        D = (_blocks(A, i, j) - _blocks(A, j, i).T) / 2
        pieces.append(dilate_skew_pair(D))
        order.extend([i, j])
    for v in range(n):
        if v not in covered:
            pieces.append(elementary_dilation(Form.ZERO))
            order.append(v)
    d = dilate_direct_sum(pieces)
    P = mode_permutation(order)
    return conjugate_dilation(d, P.T, P)


def order_bound(n):
    """Order achieved by :func:`dilate_general` for a ``2n x 2n`` input."""
    if n == 1:
        return 4
    return 4 * n * (n + 2) if n % 2 == 0 else 4 * n * (n + 3)


def split_general(A):
    """Decompose ``A`` into the summands dilated by :func:`dilate_general`.

    Returns ``(B1, B2, A2, A3)`` with ``A = B1 - B2 + A2 + A3``: ``B1`` and
    ``B2`` are the positive and negative parts of the symmetric part shifted
    by ``EPSILON * I``, ``A2`` holds the skew parts of the diagonal blocks
    and ``A3`` the skew off-diagonal couplings.
    """
    A = as_matrix(A, "A")
    n = num_modes(A, "A")
    A1 = (A + A.T) / 2
    w, V = np.linalg.eigh(A1)
    plus = (V * np.clip(w, 0, None)) @ V.T
    minus = (V * np.clip(-w, 0, None)) @ V.T
    I = np.eye(2 * n)
    B1 = plus + EPSILON * I
    B2 = minus + EPSILON * I
    A2 = direct_sum([(_blocks(A, i, i) - _blocks(A, i, i).T) / 2 for i in range(n)])
    A3 = A - A1 - A2
    return B1, B2, A2, A3


def dilate_general(A):
    """Symplectic dilation of an arbitrary real ``2n x 2n`` matrix.

    The order is 4 for ``n = 1``, ``4n(n+2)`` for even ``n`` and ``4n(n+3)``
    for odd ``n >= 3``. No attempt is made to minimize it.
    """
    A = as_matrix(A, "A")
    n = num_modes(A, "A")
    if n == 1:
        return dilate_2x2(A)
    B1, B2, A2, _ = split_general(A)
    classes = one_factorization(n).classes
    c = 3 + len(classes)
    terms = [
        dilate_positive_definite(c * B1),
        negate(dilate_positive_definite(c * B2)),
        dilate_direct_sum([dilate_2x2(c * _blocks(A2, i, i)) for i in range(n)]),
    ]
    terms.extend(dilate_matching(c * A, edges) for edges in classes)
    terms = [pad_dilation(t, n) for t in terms]
    out = dilate_convex_combination(terms, np.full(c, 1.0 / c))
    return Dilation(out.matrix, n, out.m, A)


def _product_matrix(M, L, n):
    """``N = M~ L~`` for symplectic ``M`` (ancillas m) and ``L`` (ancillas l).

    Ancilla order in ``N``: the ``l`` modes of ``L`` first, then the ``m``
    modes of ``M``. The leading block of ``N`` is ``M00 @ L00``.
    """
    k = 2 * n
    lm = L.shape[0] - k
    mm = M.shape[0] - k
    size = k + lm + mm
    Lt = np.eye(size)
    Lt[:k + lm, :k + lm] = L
    Mt = np.eye(size)
    idx = np.r_[0:k, k + lm:size]
    Mt[np.ix_(idx, idx)] = M
    return Mt @ Lt


def dilate_product(dA, dB):
    """Dilation of ``dA.target @ dB.target`` with ``dA.m + dB.m`` ancillas."""
    if dA.n != dB.n:
        raise DimensionError(f"mode counts differ: {dA.n} vs {dB.n}")
    N = _product_matrix(dA.matrix, dB.matrix, dA.n)
    return Dilation(N, dA.n, dA.m + dB.m, dA.target @ dB.target)


DILATION_MODES = {
    "general": dilate_general,
    "pd": dilate_positive_definite,
    "symmetric": dilate_symmetric,
    "2x2": dilate_2x2,
}
