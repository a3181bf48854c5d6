"""Heavy/light vertex classification by nested sampling.

A vertex is heavy when its degree exceeds ``2 m / (eps t)^(1/3)`` or when the
median of several estimates of ``t_v`` exceeds ``t^(2/3) / eps^(1/3)``.  Each
estimate averages per-edge samples whose expectation is ``t_e``.
"""

from __future__ import annotations

import math
import random
import statistics
import threading

from .graph import QueryGraph
from .labels import Label
from .params import GuessContext, derive_seed

__all__ = ["HeavyLabeler", "edge_triangle_sample", "heavy_trial", "lower_endpoint"]


def lower_endpoint(a: int, da: int, b: int, db: int) -> tuple[int, int, int]:
    """``(u, d_u, other)`` where ``u`` has the smaller degree, ties to the smaller id."""
    if (da, a) <= (db, b):
        return a, da, b
    return b, db, a


def edge_triangle_sample(
    graph: QueryGraph,
    edge: tuple[int, int],
    m_hat: float,
    rng: random.Random,
    degrees: tuple[int, int] | None = None,
) -> float:
    """One sample ``Y`` with ``E[Y] = t_e`` for the given edge.

    Draws ``ceil(d_u / sqrt(m_hat))`` uniform neighbors ``w`` of the lower
    endpoint ``u``; each closing a triangle with the edge scores ``d_u``.
    """
    a, b = edge
    da, db = degrees if degrees is not None else (graph.degree(a), graph.degree(b))
    u, du, x = lower_endpoint(a, da, b, db)
    reps = math.ceil(du / math.sqrt(m_hat))
    rand = rng.random
    hits = 0
    for _ in range(reps):
        w = graph.neighbor(u, int(rand() * du))
        if w != x and graph.pair(x, w):
            hits += 1
    return hits * du / reps


def heavy_trial(
    graph: QueryGraph,
    v: int,
    context: GuessContext,
    rng: random.Random,
    degree: int | None = None,
) -> float:
    """One estimate ``X_i`` of ``t_v`` from ``context.inner_samples()`` edges of ``v``."""
    dv = graph.degree(v) if degree is None else degree
    if dv == 0:
        return 0.0
    samples = context.inner_samples()
    root_m = math.sqrt(context.m_hat)
    rand = rng.random
    neighbor, deg, pair = graph.neighbor, graph.degree, graph.pair
    total = 0.0
    for _ in range(samples):
        w = neighbor(v, int(rand() * dv))
        dw = deg(w)
        if (dv, v) <= (dw, w):
            u, du, x = v, dv, w
        else:
            u, du, x = w, dw, v
        reps = math.ceil(du / root_m)
        hits = 0
        for _ in range(reps):
            z = neighbor(u, int(rand() * du))
            if z != x and pair(x, z):
                hits += 1
        total += hits * du / reps
    return dv * total / samples


class HeavyLabeler:
    """Memoized heavy/light labels with coins fixed per vertex.

    The randomness used for vertex ``v`` is seeded from
    ``(master_seed, v, m_hat, t_hat)``, so a label never depends on the order
    in which vertices are classified.  Concurrent callers asking for the same
    vertex wait for a single computation.
    """

    def __init__(self, context: GuessContext, master_seed: int):
        self.master_seed = master_seed
        self._lock = threading.Lock()
        self.reset(context)

    def reset(self, context: GuessContext) -> None:
        """Switch to a new guess context; cached labels are dropped."""
        with self._lock:
            self.context = context
            self._cache: dict[int, Label] = {}
            self._inflight: dict[int, threading.Event] = {}

    def vertex_rng(self, v: int) -> random.Random:
        ctx = self.context
        return random.Random(derive_seed(self.master_seed, v, ctx.m_hat, ctx.t_hat))

    @property
    def labels(self) -> dict[int, Label]:
        return dict(self._cache)

    def heavy_count(self) -> int:
        return sum(label is Label.HEAVY for label in self._cache.values())

    def __getitem__(self, v: int) -> Label:
        return self._cache[v]

    def classify(self, graph: QueryGraph, v: int) -> Label:
        label = self._cache.get(v)
        if label is not None:
            return label
        while True:
            with self._lock:
                label = self._cache.get(v)
                if label is not None:
                    return label
                event = self._inflight.get(v)
                owner = event is None
                if owner:
                    event = self._inflight[v] = threading.Event()
            if owner:
                break
            event.wait()  # type: ignore[union-attr]
        try:
            label = self._compute(graph, v)
            self._cache[v] = label
        finally:
            with self._lock:
                del self._inflight[v]
            event.set()  # type: ignore[union-attr]
        return label

    def _compute(self, graph: QueryGraph, v: int) -> Label:
        ctx = self.context
        dv = graph.degree(v)
        if dv > ctx.degree_threshold:
            return Label.HEAVY
        rng = self.vertex_rng(v)
        estimates = [heavy_trial(graph, v, ctx, rng, dv) for _ in range(ctx.median_repeats(graph.n))]
        if statistics.median(estimates) > ctx.weight_threshold:
            return Label.HEAVY
        return Label.LIGHT
