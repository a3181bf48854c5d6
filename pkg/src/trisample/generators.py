"""Seeded generators for the fixture graphs used in tests and benchmarks."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import QueryGraph


def erdos_renyi(n: int, p: float, seed: int) -> QueryGraph:
    """G(n, p): each pair ``u < v`` is an edge independently with probability ``p``.

    Row ``u`` draws ``n - u - 1`` uniforms from one ``default_rng(seed)``
    stream, so the graph is a pure function of ``(n, p, seed)``.
    """
    rng = np.random.default_rng(seed)
    us, vs = [], []
    for u in range(n - 1):
        hits = np.flatnonzero(rng.random(n - u - 1) < p)
        us.append(np.full(hits.size, u, dtype=np.int64))
        vs.append(hits + u + 1)
    if not us:
        return QueryGraph(n, [[] for _ in range(n)])
    return QueryGraph.from_arrays(n, np.concatenate(us), np.concatenate(vs))


def complete_graph(k: int) -> QueryGraph:
    return QueryGraph.from_edges(k, combinations(range(k), 2))


def star(leaves: int) -> QueryGraph:
    """Center 0 joined to vertices ``1..leaves``."""
    return QueryGraph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def paw() -> QueryGraph:
    """Triangle 0-1-2 with pendant vertex 3 attached to 0."""
    return QueryGraph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


def cycle(n: int) -> QueryGraph:
    return QueryGraph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> QueryGraph:
    return QueryGraph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def empty_graph(n: int) -> QueryGraph:
    return QueryGraph(n, [[] for _ in range(n)])


def disjoint_cliques(count: int, k: int) -> QueryGraph:
    edges = [(b + i, b + j) for b in range(0, count * k, k) for i, j in combinations(range(k), 2)]
    return QueryGraph.from_edges(count * k, edges)


def planted_clique(n: int, k: int, p: float, seed: int) -> QueryGraph:
    """G(n, p) with a clique on vertices ``0..k-1`` added."""
    base = erdos_renyi(n, p, seed)
    edges = base.edges()
    edges.extend(combinations(range(k), 2))
    return QueryGraph.from_edges(n, edges)
