"""Sublinear triangle counting.

One estimate samples a multiset ``S`` of uniform vertices, then repeatedly
picks an edge incident to ``S`` (vertex proportional to degree, then a uniform
incident edge), looks for triangles through it from the lower-degree
endpoint, and scores each found triangle by its heavy/light weight.  The
minimum over several estimates is taken, and a geometric search over the
triangle-count guess ``n^3, n^3/2, ...`` removes the need to know ``t``.
"""

from __future__ import annotations

import math
import random
import time
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Protocol, Sequence

from .avgdeg import estimate_avg_degree
from .exact import exact_triangles
from .graph import QueryBudgetExceeded, QueryGraph, QueryLedger, full_scan_fallback
from .heavy import HeavyLabeler, lower_endpoint
from .labels import FLOAT_WEIGHTS, WEIGHTS, Label, weight_of_triangle
from .params import GuessContext, ParameterProfile, derive_seed, get_profile
from .report import EstimateReport

__all__ = [
    "EPS_RESCALE",
    "DegreeProportionalSampler",
    "TriangleTrialOutcome",
    "count_triangles",
    "estimate_once",
    "planned_sizes",
    "robust_estimate",
    "robust_runs",
    "run_trial",
    "sample_vertex_multiset",
    "weight_of_triangle",
]

# the estimate's lower tail is (1 - 20 eps) t, so eps is divided by 20 internally
EPS_RESCALE = 20
S1_CAP_FACTOR = 10
S2_CAP_FACTOR = 10
# the edge count only seeds sample sizes, but its noise enters s2 as m_hat^1.5,
# so it is always estimated at least this tightly
EDGE_EPS_CAP = 0.1


class Labeler(Protocol):
    def classify(self, graph: QueryGraph, v: int) -> Label: ...


class DegreeProportionalSampler:
    """Draws an occurrence of the multiset ``S`` with probability ``d_v / d_S``.

    Prefix sums over the occurrence degrees and a binary search per draw;
    drawing issues no graph queries.
    """

    def __init__(self, members: Sequence[int], degrees: Sequence[int]):
        if len(members) != len(degrees):
            raise ValueError("members and degrees differ in length")
        self.members = list(members)
        self.degrees = list(degrees)
        self.cumulative = list(accumulate(self.degrees))
        self.d_S = self.cumulative[-1] if self.cumulative else 0

    @classmethod
    def from_vertices(cls, graph: QueryGraph, vertices: Sequence[int]) -> DegreeProportionalSampler:
        """One degree query per occurrence."""
        return cls(vertices, [graph.degree(v) for v in vertices])

    @property
    def empty(self) -> bool:
        return self.d_S == 0

    def __len__(self) -> int:
        return len(self.members)

    def draw_index(self, rng: random.Random) -> int:
        if self.d_S == 0:
            raise ValueError("no incident edges to sample from")
        r = int(rng.random() * self.d_S)
        if r >= self.d_S:
            r = self.d_S - 1
        return bisect_right(self.cumulative, r)

    def draw(self, rng: random.Random) -> tuple[int, int]:
        """``(vertex, degree)`` of a degree-proportional occurrence."""
        i = self.draw_index(rng)
        return self.members[i], self.degrees[i]


@dataclass
class TriangleTrialOutcome:
    y: float
    triangles_found: list[tuple[tuple[int, int, int], Fraction]] = field(default_factory=list)
    queries_used: int = 0
    z_values: list[float] = field(default_factory=list)
    scale: float = 0.0
    reps: int = 0


def planned_sizes(context: GuessContext, n: int) -> tuple[int, int, bool]:
    """``(s1, s2, capped)`` with ``s1 <= 10 n`` and ``s2 <= 10 m_hat``."""
    s1 = context.vertex_samples(n)
    s2 = context.trial_count(n)
    cap1 = S1_CAP_FACTOR * max(n, 1)
    cap2 = max(1, math.floor(S2_CAP_FACTOR * context.m_hat))
    capped = s1 > cap1 or s2 > cap2
    return min(s1, cap1), min(s2, cap2), capped


def sample_vertex_multiset(
    graph: QueryGraph, context: GuessContext, rng: random.Random, size: int | None = None
) -> DegreeProportionalSampler:
    """Uniform vertices with replacement (``s1`` of them unless ``size`` is given)."""
    if size is None:
        size = planned_sizes(context, graph.n)[0]
    vertices = [graph.uniform_vertex(rng) for _ in range(size)]
    return DegreeProportionalSampler.from_vertices(graph, vertices)


def run_trial(
    graph: QueryGraph,
    sampler: DegreeProportionalSampler,
    labeler: Labeler,
    context: GuessContext,
    rng: random.Random,
) -> TriangleTrialOutcome:
    """One weighted triangle trial ``Y_i``.

    Given ``S``, ``E[Y_i] = sum of wt(v) over S / d_S`` where ``wt(v)`` is the
    total weight of triangles on edges at a light ``v`` (0 for heavy ``v``).
    """
    before = graph.ledger.total()
    rand = rng.random
    v, dv = sampler.draw(rng)
    w = graph.neighbor(v, int(rand() * dv))
    u, du, x = lower_endpoint(v, dv, w, graph.degree(w))

    root_m = math.sqrt(context.m_hat)
    if du <= root_m:
        reps = 1 if rand() * root_m < du else 0
    else:
        reps = math.ceil(du / root_m)
    out = TriangleTrialOutcome(0.0, scale=max(du, root_m), reps=reps)
    if reps == 0:
        out.queries_used = graph.ledger.total() - before
        return out

    z_sum = 0.0
    for _ in range(reps):
        z = graph.neighbor(u, int(rand() * du))
        if z == x or not graph.pair(x, z):
            out.z_values.append(0.0)
            continue
        assert z != u and z != x
        tri = (u, x, z)
        labels = [labeler.classify(graph, a) for a in tri]
        light = sum(label is Label.LIGHT for label in labels)
        out.triangles_found.append((tuple(sorted(tri)), WEIGHTS[light]))  # type: ignore[arg-type]
        if labels[0 if u == v else 1] is Label.HEAVY:
            zj = 0.0
        else:
            zj = out.scale * FLOAT_WEIGHTS[light]
        out.z_values.append(zj)
        z_sum += zj
    out.y = z_sum / reps
    out.queries_used = graph.ledger.total() - before
    return out


def estimate_once(
    graph: QueryGraph,
    context: GuessContext,
    master_seed: int,
    labeler: Labeler | None = None,
) -> EstimateReport:
    """``X = n d_S mean(Y) / s1`` from one vertex multiset and ``s2`` trials."""
    started = time.perf_counter()
    ledger_start = graph.ledger.copy()
    if labeler is None:
        labeler = HeavyLabeler(context, derive_seed(master_seed, "heavy"))
    rng = random.Random(derive_seed(master_seed, "estimate"))
    n = graph.n
    s1, s2, capped = planned_sizes(context, n)
    sampler = sample_vertex_multiset(graph, context, rng, s1)

    flags = {"capped": capped, "empty_sample": sampler.empty}
    y_sum = 0.0
    found = 0
    if sampler.empty:
        estimate = 0.0
    else:
        for _ in range(s2):
            trial = run_trial(graph, sampler, labeler, context, rng)
            y_sum += trial.y
            found += len(trial.triangles_found)
        y_mean = y_sum / s2
        estimate = n * sampler.d_S * y_mean / s1

    return EstimateReport(
        estimate=estimate,
        guess_trace=[(context.t_hat, [estimate])],
        ledger=graph.ledger - ledger_start,
        fallback_used=False,
        profile=context.profile.name,
        seed=master_seed,
        wall_time=time.perf_counter() - started,
        eps=context.eps,
        flags=flags,
        details={"s1": s1, "s2": s2, "d_S": sampler.d_S, "y_sum": y_sum, "triangles_found": found, "n": n},
    )


def robust_runs(
    graph: QueryGraph,
    context: GuessContext,
    master_seed: int,
    labeler: Labeler | None = None,
    runs: int | None = None,
) -> list[EstimateReport]:
    """Independent :func:`estimate_once` runs sharing one labeler."""
    if labeler is None:
        labeler = HeavyLabeler(context, derive_seed(master_seed, "heavy"))
    if runs is None:
        runs = context.min_runs(graph.n)
    return [estimate_once(graph, context, derive_seed(master_seed, "run", i), labeler) for i in range(runs)]


def robust_estimate(
    graph: QueryGraph,
    context: GuessContext,
    master_seed: int,
    labeler: Labeler | None = None,
    runs: int | None = None,
) -> float:
    """Minimum over independent estimates; controls the upper tail."""
    return min(r.estimate for r in robust_runs(graph, context, master_seed, labeler, runs))


def count_triangles(
    graph: QueryGraph,
    eps: float,
    profile: ParameterProfile | str = "practical",
    master_seed: int = 0,
    budget_factor: float | None = None,
    halve_when: str = "below",
) -> EstimateReport:
    """Estimate the triangle count to within ``(1 +- eps)``.

    The edge count is estimated first.  Then guesses ``t_hat = n^3, n^3/2,
    ...`` are tried with a fresh labeler each; with ``halve_when="below"`` the
    guess is halved while the robust estimate is below it and the first
    estimate reaching its guess is returned.  If a guess drops below 1, a
    sample size hits its cap, or the query budget ``budget_factor * m_hat``
    is exceeded, the graph is read in full and counted exactly.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if halve_when not in ("below", "above"):
        raise ValueError("halve_when must be 'below' or 'above'")
    profile = get_profile(profile)
    started = time.perf_counter()
    ledger_start = graph.ledger.copy()
    old_budget = graph.budget
    n = graph.n

    trace: list[tuple[float, list[float]]] = []
    details: dict = {"n": n}
    estimate: float | None = None
    reason = None
    inner_eps = eps / EPS_RESCALE
    sample_eps = inner_eps if profile.rescale_sample_eps else eps
    try:
        if n == 0:
            raise _Fallback("empty graph")
        _, m_est, avg_report = estimate_avg_degree(
            graph, min(eps, EDGE_EPS_CAP), profile, derive_seed(master_seed, "edges"), budget_factor=budget_factor
        )
        m_hat = max(m_est, 1.0)
        details["m_hat"] = m_hat
        details["avgdeg_ledger"] = avg_report.ledger.to_dict()
        if budget_factor is not None:
            graph.set_budget(ledger_start.total() + budget_factor * m_hat)

        t_hat = float(n) ** 3
        while True:
            if t_hat < 1:
                raise _Fallback("guess below 1")
            context = GuessContext(m_hat, t_hat, inner_eps, profile, sample_eps)
            if planned_sizes(context, n)[2]:
                raise _Fallback("sample size cap")
            labeler = HeavyLabeler(context, derive_seed(master_seed, "heavy"))
            reports = robust_runs(graph, context, derive_seed(master_seed, "guess", t_hat), labeler)
            values = [r.estimate for r in reports]
            trace.append((t_hat, values))
            best = min(values)
            if (best >= t_hat) if halve_when == "below" else (best <= t_hat):
                estimate = best
                details["heavy_count"] = labeler.heavy_count()
                details["accepted_guess"] = t_hat
                break
            t_hat /= 2
    except _Fallback as exc:
        reason = str(exc)
    except QueryBudgetExceeded:
        reason = "query budget exceeded"

    fallback = estimate is None
    if fallback:
        local, _ = full_scan_fallback(graph)
        estimate = float(exact_triangles(local).t)
        details["fallback_reason"] = reason
    graph.set_budget(old_budget)

    return EstimateReport(
        estimate=estimate,  # type: ignore[arg-type]
        guess_trace=trace,
        ledger=graph.ledger - ledger_start,
        fallback_used=fallback,
        profile=profile.name,
        seed=master_seed,
        wall_time=time.perf_counter() - started,
        eps=eps,
        kind="triangles",
        details=details,
    )


class _Fallback(Exception):
    pass


def merge_ledgers(reports: Sequence[EstimateReport]) -> QueryLedger:
    return QueryLedger.merge(r.ledger for r in reports)
