"""Query-model access to an undirected simple graph.

A :class:`QueryGraph` answers exactly three kinds of queries: the degree of a
vertex, the ``i``-th neighbor of a vertex and whether a pair of vertices is
adjacent.  Every answered query is charged to the view's :class:`QueryLedger`.

Indices are 0-based: ``neighbor(v, 0)`` is the first neighbor of ``v`` and
``neighbor(v, degree(v) - 1)`` the last.  Neighbor sequences are sorted by
vertex id, so the ``i``-th neighbor is deterministic.
"""

from __future__ import annotations

import io
import os
import random
from dataclasses import dataclass, fields
from typing import IO, Iterable, Sequence

import numpy as np

__all__ = [
    "GraphFormatError",
    "QueryBudgetExceeded",
    "QueryError",
    "QueryLedger",
    "GraphStats",
    "QueryGraph",
    "full_scan_fallback",
    "load_edge_list",
    "write_edge_list",
]


class QueryError(IndexError):
    """A query addressed a vertex or neighbor index outside the graph."""


class GraphFormatError(ValueError):
    """The edge-list input could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class QueryBudgetExceeded(RuntimeError):
    """Raised by a query once the ledger total passes the view's budget."""

    def __init__(self, spent: int, budget: float):
        self.spent = spent
        self.budget = budget
        super().__init__(f"query budget exceeded: {spent} > {budget:g}")


@dataclass
class QueryLedger:
    degree_queries: int = 0
    neighbor_queries: int = 0
    pair_queries: int = 0

    def total(self) -> int:
        return self.degree_queries + self.neighbor_queries + self.pair_queries

    def copy(self) -> QueryLedger:
        return QueryLedger(self.degree_queries, self.neighbor_queries, self.pair_queries)

    def __add__(self, other: QueryLedger) -> QueryLedger:
        return QueryLedger(
            self.degree_queries + other.degree_queries,
            self.neighbor_queries + other.neighbor_queries,
            self.pair_queries + other.pair_queries,
        )

    def __sub__(self, other: QueryLedger) -> QueryLedger:
        return QueryLedger(
            self.degree_queries - other.degree_queries,
            self.neighbor_queries - other.neighbor_queries,
            self.pair_queries - other.pair_queries,
        )

    def to_dict(self) -> dict[str, int]:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["total"] = self.total()
        return out

    @classmethod
    def merge(cls, ledgers: Iterable[QueryLedger]) -> QueryLedger:
        out = cls()
        for led in ledgers:
            out = out + led
        return out


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    max_degree: int


class QueryGraph:
    """Immutable adjacency data plus a per-view query ledger.

    The adjacency lists and the pair set are shared between views created by
    :meth:`fork`; each view has its own ledger and optional budget, so
    concurrent runs never share mutable state.
    """

    __slots__ = ("n", "_adj", "_pairs", "ledger", "_budget")

    def __init__(self, n: int, adjacency: Sequence[Sequence[int]], *, _pairs: set[int] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(adjacency) != n:
            raise ValueError(f"adjacency has {len(adjacency)} rows, expected {n}")
        self.n = n
        self._adj: list[list[int]] = [list(row) for row in adjacency] if _pairs is None else adjacency  # type: ignore[assignment]
        if _pairs is None:
            _pairs = set()
            for v, row in enumerate(self._adj):
                for w in row:
                    if w == v:
                        raise ValueError(f"self-loop at vertex {v}")
                    if v < w:
                        _pairs.add(v * n + w)
        self._pairs = _pairs
        self.ledger = QueryLedger()
        self._budget: float | None = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> QueryGraph:
        """Build a graph from ``(u, v)`` pairs; loops and duplicates are dropped."""
        pairs: set[int] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                continue
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u > v:
                u, v = v, u
            pairs.add(u * n + v)
        return cls._from_pair_codes(n, pairs)

    @classmethod
    def from_arrays(cls, n: int, us: np.ndarray, vs: np.ndarray) -> QueryGraph:
        """Vectorized :meth:`from_edges` for large generated graphs."""
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        keep = us != vs
        lo = np.minimum(us[keep], vs[keep])
        hi = np.maximum(us[keep], vs[keep])
        codes = np.unique(lo * n + hi)
        lo, hi = codes // n, codes % n
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        bounds = np.searchsorted(src, np.arange(n + 1))
        dst_list = dst.tolist()
        adj = [dst_list[bounds[v]:bounds[v + 1]] for v in range(n)]
        return cls(n, adj, _pairs=set(codes.tolist()))

    @classmethod
    def _from_pair_codes(cls, n: int, pairs: set[int]) -> QueryGraph:
        adj: list[list[int]] = [[] for _ in range(n)]
        for code in pairs:
            u, v = divmod(code, n)
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        return cls(n, adj, _pairs=pairs)

    def fork(self) -> QueryGraph:
        """A new view over the same data with a fresh ledger and no budget."""
        view = object.__new__(QueryGraph)
        view.n = self.n
        view._adj = self._adj
        view._pairs = self._pairs
        view.ledger = QueryLedger()
        view._budget = None
        return view

    # -- budget ------------------------------------------------------------

    @property
    def budget(self) -> float | None:
        return self._budget

    def set_budget(self, budget: float | None) -> None:
        """Raise :class:`QueryBudgetExceeded` once ``ledger.total() > budget``."""
        self._budget = budget

    def _charge(self) -> None:
        spent = self.ledger.total()
        if spent > self._budget:  # type: ignore[operator]
            raise QueryBudgetExceeded(spent, self._budget)  # type: ignore[arg-type]

    # -- the three queries ---------------------------------------------------

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise QueryError(f"vertex {v} outside 0..{self.n - 1}")
        self.ledger.degree_queries += 1
        if self._budget is not None:
            self._charge()
        return len(self._adj[v])

    def neighbor(self, v: int, i: int) -> int:
        """The ``i``-th (0-based) neighbor of ``v`` in ascending id order."""
        if not 0 <= v < self.n:
            raise QueryError(f"vertex {v} outside 0..{self.n - 1}")
        row = self._adj[v]
        if not 0 <= i < len(row):
            raise QueryError(f"neighbor index {i} outside 0..{len(row) - 1} for vertex {v}")
        self.ledger.neighbor_queries += 1
        if self._budget is not None:
            self._charge()
        return row[i]

    def pair(self, u: int, v: int) -> bool:
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise QueryError(f"pair ({u}, {v}) outside 0..{n - 1}")
        self.ledger.pair_queries += 1
        if self._budget is not None:
            self._charge()
        if u > v:
            u, v = v, u
        return u * n + v in self._pairs

    def query(self, kind: str, *args: int) -> int | bool:
        """Dispatch by name: ``degree``, ``neighbor`` or ``pair``."""
        if kind == "degree":
            return self.degree(*args)
        if kind == "neighbor":
            return self.neighbor(*args)
        if kind == "pair":
            return self.pair(*args)
        raise ValueError(f"unknown query kind {kind!r}")

    # -- sampling helpers -----------------------------------------------------

    def uniform_vertex(self, rng: random.Random) -> int:
        if self.n == 0:
            raise ValueError("cannot sample a vertex of an empty graph")
        return int(rng.random() * self.n)

    def uniform_incident_edge(self, v: int, rng: random.Random, degree: int | None = None) -> tuple[int, int]:
        """A uniform edge of ``delta(v)`` as ``(v, w)``; costs one neighbor query.

        Pass a known ``degree`` to avoid paying for a degree query.
        """
        if degree is None:
            degree = self.degree(v)
        if degree == 0:
            raise ValueError(f"vertex {v} has no incident edges")
        return v, self.neighbor(v, int(rng.random() * degree))

    # -- uncharged inspection (oracles, reports, tests) ----------------------

    @property
    def m(self) -> int:
        return len(self._pairs)

    def neighbors(self, v: int) -> list[int]:
        """Direct read of the sorted neighbor list; not ledger-counted."""
        return self._adj[v]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted; not ledger-counted."""
        n = self.n
        return [divmod(code, n) for code in sorted(self._pairs)]  # type: ignore[misc]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return u * self.n + v in self._pairs

    def degrees(self) -> list[int]:
        return [len(row) for row in self._adj]

    def stats(self) -> GraphStats:
        return GraphStats(self.n, self.m, max((len(r) for r in self._adj), default=0))

    def __repr__(self) -> str:
        return f"QueryGraph(n={self.n}, m={self.m})"


def full_scan_fallback(graph: QueryGraph) -> tuple[QueryGraph, bool]:
    """Read the whole graph through queries and return a local copy.

    Charges one degree query per vertex and one neighbor query per adjacency
    entry to ``graph``'s ledger (any budget is lifted first).  The returned
    copy has its own ledger, so later work on it is not charged to the run.
    """
    graph.set_budget(None)
    adj = []
    for v in range(graph.n):
        d = graph.degree(v)
        adj.append([graph.neighbor(v, i) for i in range(d)])
    return QueryGraph(graph.n, adj), True


def _parse_lines(lines: Iterable[str]) -> tuple[int | None, list[tuple[int, int]]]:
    header_n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip().replace(" ", "")
            if body.startswith("n="):
                try:
                    header_n = int(body[2:])
                except ValueError:
                    raise GraphFormatError(f"bad vertex-count header {line!r}", lineno) from None
                if header_n < 0:
                    raise GraphFormatError("vertex count must be non-negative", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex id in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative vertex id in {line!r}", lineno)
        edges.append((u, v))
    return header_n, edges


def load_edge_list(source: str | os.PathLike | IO[bytes] | IO[str] | bytes) -> QueryGraph:
    """Parse a whitespace-separated edge list.

    Lines starting with ``#`` are comments, except a ``# n=<N>`` header which
    fixes the vertex count.  Without the header ``n`` is one more than the
    largest id.  Self-loops and duplicate edges are dropped.
    """
    if isinstance(source, (bytes, bytearray)):
        text = source.decode()
    elif isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        data = source.read()
        text = data.decode() if isinstance(data, (bytes, bytearray)) else data

    header_n, edges = _parse_lines(io.StringIO(text))
    if not edges and header_n is None:
        raise GraphFormatError("empty edge list")
    max_id = max((max(u, v) for u, v in edges), default=-1)
    n = max_id + 1 if header_n is None else header_n
    if max_id >= n:
        raise GraphFormatError(f"vertex id {max_id} exceeds header n={n}")
    return QueryGraph.from_edges(n, edges)


def write_edge_list(graph: QueryGraph, path: str | os.PathLike, header: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"# n={graph.n}\n")
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")
