"""Independent reference computations used by the tests."""

import itertools
import math

import numpy as np


def thermal_series_entropy(kappa, cutoff=1e-20):
    """Entropy of the geometric spectrum ``(1 - t) t^k`` with ``kappa = coth(s/2) / 2``.

    Summed term by term until the eigenvalues drop below ``cutoff``.
    """
    if kappa == 0.5:
        return 0.0
    s = math.log((2 * kappa + 1) / (2 * kappa - 1))
    t = math.exp(-s)
    total = 0.0
    k = 0
    while True:
        p = (1 - t) * t ** k
        if p < cutoff:
            return total
        total -= p * math.log(p)
        k += 1


def perfect_matchings(vertices):
    """All perfect matchings of the complete graph on ``vertices``, by recursion."""
    vertices = list(vertices)
    if not vertices:
        yield []
        return
    first = vertices[0]
    for i in range(1, len(vertices)):
        rest = vertices[1:i] + vertices[i + 1:]
        for m in perfect_matchings(rest):
            yield [(first, vertices[i])] + m


def all_edges(n):
    return set(itertools.combinations(range(n), 2))


def rand_matrix(seed, n):
    return np.random.default_rng(seed).standard_normal((2 * n, 2 * n))


def block_residuals(d):
    """Residuals of a Dilation computed without its own helper."""
    M, T = d.matrix, d.target
    size = M.shape[0] // 2
    J = np.kron(np.eye(size), [[0.0, -1.0], [1.0, 0.0]])
    k = T.shape[0]
    return np.abs(M.T @ J @ M - J).max(), np.abs(M[:k, :k] - T).max()
