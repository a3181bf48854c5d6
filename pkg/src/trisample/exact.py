"""Exact triangle and degree statistics used as ground truth.

Nothing here is charged to a query ledger: the oracles read adjacency
directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .graph import QueryGraph
from .labels import Label

__all__ = [
    "BRUTE_FORCE_MAX_N",
    "TriangleOracle",
    "brute_force_triangles",
    "exact_avg_degree",
    "exact_triangles",
    "forward_degrees",
    "min_endpoint_sum",
    "weighted_light_sum",
]

BRUTE_FORCE_MAX_N = 2000


@dataclass
class TriangleOracle:
    """Total count ``t``, per-edge ``t_e`` (keys ``(u, v)`` with ``u < v``) and
    per-vertex ``t_v = sum of t_e over incident edges``."""

    t: int
    t_e: dict[tuple[int, int], int]
    t_v: list[int]
    _graph: QueryGraph = field(repr=False, compare=False)

    def edge_count(self, u: int, v: int) -> int:
        return self.t_e[(u, v) if u < v else (v, u)]

    def triangles_on(self, u: int, v: int) -> list[tuple[int, int, int]]:
        """The triangles containing edge ``(u, v)``, each as a sorted triple."""
        a, b = self._graph.neighbors(u), set(self._graph.neighbors(v))
        return [tuple(sorted((u, v, w))) for w in a if w in b]  # type: ignore[misc]

    def triangles(self) -> list[tuple[int, int, int]]:
        """Every triangle once, as a sorted triple."""
        out = []
        for (u, v), te in self.t_e.items():
            if te:
                out.extend(tri for tri in self.triangles_on(u, v) if tri[2] > v)
        return out

    def vertex_triangles(self, v: int) -> int:
        return self.t_v[v] // 2


def exact_triangles(graph: QueryGraph) -> TriangleOracle:
    """Edge-iterator count: ``t_e = |N(u) & N(v)|`` for every edge.

    Set intersection walks the smaller neighbor set, so the total work is
    the sum over edges of ``min(d_u, d_v)``.
    """
    sets = [set(graph.neighbors(v)) for v in range(graph.n)]
    t_e: dict[tuple[int, int], int] = {}
    t_v = [0] * graph.n
    total = 0
    for u, v in graph.edges():
        te = len(sets[u] & sets[v])
        t_e[(u, v)] = te
        t_v[u] += te
        t_v[v] += te
        total += te
    if total % 3:
        raise AssertionError("edge triangle counts do not sum to a multiple of 3")
    return TriangleOracle(total // 3, t_e, t_v, graph)


def brute_force_triangles(graph: QueryGraph, max_n: int = BRUTE_FORCE_MAX_N) -> int:
    """Count triples ``u < v < w`` that are pairwise adjacent."""
    if graph.n > max_n:
        raise ValueError(f"brute force refuses n={graph.n} > {max_n}")
    adjacent = graph.has_edge
    count = 0
    for u, v in combinations(range(graph.n), 2):
        if not adjacent(u, v):
            continue
        for w in range(v + 1, graph.n):
            if adjacent(u, w) and adjacent(v, w):
                count += 1
    return count


def weighted_light_sum(graph: QueryGraph, oracle: TriangleOracle, labels: Mapping[int, Label]) -> Fraction:
    """Sum over light ``v``, edges ``e`` at ``v`` and triangles on ``e`` of the
    triangle weight, in exact arithmetic."""
    # weights 1/2, 1/4, 1/6 scaled by 12 to stay integral
    scaled = (0, 6, 3, 2)
    light = [labels[v] is Label.LIGHT for v in range(graph.n)]
    total = 0
    for v in range(graph.n):
        if not light[v]:
            continue
        for w in graph.neighbors(v):
            if oracle.edge_count(v, w) == 0:
                continue
            for tri in oracle.triangles_on(v, w):
                total += scaled[light[tri[0]] + light[tri[1]] + light[tri[2]]]
    return Fraction(total, 12)


def min_endpoint_sum(graph: QueryGraph) -> int:
    deg = graph.degrees()
    return sum(min(deg[u], deg[v]) for u, v in graph.edges())


def exact_avg_degree(graph: QueryGraph) -> Fraction:
    if graph.n == 0:
        raise ValueError("average degree of an empty graph is undefined")
    return Fraction(2 * graph.m, graph.n)


def forward_degrees(graph: QueryGraph) -> list[int]:
    """Number of neighbors ranked above each vertex by (degree, id)."""
    deg = graph.degrees()
    return [sum((deg[v], v) < (deg[w], w) for w in graph.neighbors(v)) for v in range(graph.n)]
