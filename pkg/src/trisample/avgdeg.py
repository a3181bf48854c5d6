"""Average-degree estimation from random vertices and random neighbors.

Vertices are totally ordered by ``(degree, id)``.  A sample picks a uniform
vertex ``v`` and a uniform neighbor ``u``; it scores ``2 d_v`` when ``v``
precedes ``u`` and 0 otherwise, which has expectation ``2m / n``.
"""

from __future__ import annotations

import random
import time
from typing import MutableMapping

from .graph import QueryBudgetExceeded, QueryGraph
from .params import ParameterProfile, avg_degree_samples, derive_seed, get_profile, min_runs
from .report import EstimateReport

__all__ = [
    "SAMPLE_CAP_FACTOR",
    "avg_degree_once",
    "degree_sample",
    "estimate_avg_degree",
    "precedes",
]

SAMPLE_CAP_FACTOR = 10
# worst-case queries per degree sample: degree(v), neighbor(v, i), degree(u)
QUERIES_PER_SAMPLE = 3


def _degree(graph: QueryGraph, v: int, memo: MutableMapping[int, int] | None) -> int:
    if memo is None:
        return graph.degree(v)
    d = memo.get(v)
    if d is None:
        d = memo[v] = graph.degree(v)
    return d


def precedes(graph: QueryGraph, u: int, v: int, degrees: MutableMapping[int, int] | None = None) -> bool:
    """``u`` comes before ``v``: smaller degree, or equal degree and smaller id."""
    return (_degree(graph, u, degrees), u) < (_degree(graph, v, degrees), v)


def degree_sample(graph: QueryGraph, rng: random.Random, degrees: MutableMapping[int, int] | None = None) -> float:
    v = graph.uniform_vertex(rng)
    dv = _degree(graph, v, degrees)
    if dv == 0:
        return 0.0
    u = graph.neighbor(v, int(rng.random() * dv))
    if (dv, v) < (_degree(graph, u, degrees), u):
        return 2.0 * dv
    return 0.0


def avg_degree_once(
    graph: QueryGraph,
    m_hat: float,
    eps: float,
    rng: random.Random,
    profile: ParameterProfile | str = "practical",
    degrees: MutableMapping[int, int] | None = None,
) -> float:
    """Mean of ``s`` degree samples, ``s`` sized for edge-count guess ``m_hat``."""
    if m_hat < 1:
        raise ValueError("m_hat must be >= 1")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    profile = get_profile(profile)
    s = min(avg_degree_samples(profile, eps, graph.n, m_hat), SAMPLE_CAP_FACTOR * graph.n)
    return sum(degree_sample(graph, rng, degrees) for _ in range(s)) / s


def _degree_scan(graph: QueryGraph, memo: dict[int, int]) -> float:
    graph.set_budget(None)
    total = 0
    for v in range(graph.n):
        total += _degree(graph, v, memo)
    return total / graph.n


def estimate_avg_degree(
    graph: QueryGraph,
    eps: float,
    profile: ParameterProfile | str = "practical",
    master_seed: int = 0,
    budget_factor: float | None = None,
    halve_when: str = "below",
) -> tuple[float, float, EstimateReport]:
    """Geometric search over edge-count guesses ``n^2, n^2/2, ...``.

    At each guess the minimum of several independent runs is compared with
    the guess.  With ``halve_when="below"`` the guess is halved while the
    implied edge count ``n * estimate / 2`` is below it; ``"above"`` flips
    the comparison.  Each run's samples are reused from one guess to the
    next, so a guess costs only the extra samples it needs.  When the planned
    sampling would cost at least as many queries as reading every degree, or
    the guesses drop below 1, the degree sequence is scanned and the exact
    value returned.

    Returns ``(average degree, edge-count estimate, report)``.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if halve_when not in ("below", "above"):
        raise ValueError("halve_when must be 'below' or 'above'")
    n = graph.n
    if n == 0:
        raise ValueError("average degree of an empty graph is undefined")
    profile = get_profile(profile)
    started = time.perf_counter()
    ledger_start = graph.ledger.copy()
    spent_before = ledger_start.total()
    old_budget = graph.budget

    memo: dict[int, int] = {}
    runs = min_runs(profile, eps, n)
    # samples are nested across guesses: run i keeps one stream and a running
    # sum, and a smaller guess only tops it up to the larger sample size
    streams = [random.Random(derive_seed(master_seed, "avgdeg", i)) for i in range(runs)]
    sums = [0.0] * runs
    drawn = 0
    trace: list[tuple[float, list[float]]] = []
    m_hat = float(n) ** 2
    reason = None
    estimate = None
    try:
        while True:
            if m_hat < 1:
                reason = "guess below 1"
                break
            s = min(avg_degree_samples(profile, eps, n, m_hat), SAMPLE_CAP_FACTOR * n)
            if QUERIES_PER_SAMPLE * runs * s >= n:
                reason = "sampling costs more than a degree scan"
                break
            if budget_factor is not None:
                graph.set_budget(spent_before + budget_factor * m_hat)
            if s > drawn:
                for i, rng in enumerate(streams):
                    sums[i] += sum(degree_sample(graph, rng, memo) for _ in range(s - drawn))
                drawn = s
            values = [total / drawn for total in sums]
            trace.append((m_hat, values))
            best = min(values)
            implied = n * best / 2
            if (implied >= m_hat) if halve_when == "below" else (implied <= m_hat):
                estimate = best
                break
            m_hat /= 2
    except QueryBudgetExceeded:
        reason = "query budget exceeded"

    fallback = estimate is None
    if fallback:
        estimate = _degree_scan(graph, memo)
    graph.set_budget(old_budget)

    report = EstimateReport(
        estimate=estimate,
        guess_trace=trace,
        ledger=graph.ledger - ledger_start,
        fallback_used=fallback,
        profile=profile.name,
        seed=master_seed,
        wall_time=time.perf_counter() - started,
        eps=eps,
        kind="avgdeg",
        details={"n": n, "runs_per_guess": runs, "samples_per_run": drawn, "m_estimate": n * estimate / 2},
    )
    if reason:
        report.details["fallback_reason"] = reason
    return estimate, n * estimate / 2, report

