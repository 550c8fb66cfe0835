"""Round-robin edge colouring of complete graphs."""

from dataclasses import dataclass
from typing import List, Tuple

from .exceptions import InvalidArgumentError

Edge = Tuple[int, int]


@dataclass(frozen=True)
class EdgeColoring:
    """Classes of pairwise vertex-disjoint edges of ``K_n``; vertices are 0-based."""

    n_vertices: int
    classes: List[List[Edge]]

    def edges(self):
        return [e for cls in self.classes for e in cls]


def _round(n, r):
    # Vertex 0 sits at the centre of a regular (n-1)-gon formed by 1..n-1.
    # Round r joins the centre to polygon vertex r and pairs the remaining
    # polygon vertices along the chords perpendicular to that spoke.
    m = n - 1
    k = r - 1
    edges = [(0, r)]
    for d in range(1, n // 2):
        a = (k - d) % m + 1
        b = (k + d) % m + 1
        edges.append((min(a, b), max(a, b)))
    return edges


def one_factorization(n):
    """Partition the edges of ``K_n`` into matchings.

    For even ``n`` this gives ``n - 1`` perfect matchings of ``n/2`` edges.
    For odd ``n`` the even construction runs on ``n + 1`` vertices and every
    class drops its edge at the extra vertex, leaving ``n`` classes of
    ``(n - 1)/2`` edges.

    >>> one_factorization(4).classes
    [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]]
    """
    if int(n) != n or n < 2:
        raise InvalidArgumentError(f"one_factorization needs n >= 2, got {n}")
    n = int(n)
    if n % 2 == 0:
        return EdgeColoring(n, [_round(n, r) for r in range(1, n)])
    classes = [[e for e in _round(n + 1, r) if n not in e] for r in range(1, n + 1)]
    return EdgeColoring(n, classes)
