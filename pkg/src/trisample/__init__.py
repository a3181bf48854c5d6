"""Sublinear-time triangle counting and average-degree estimation in the
degree / neighbor / pair query model, with exact oracles for checking."""

from .avgdeg import avg_degree_once, degree_sample, estimate_avg_degree, precedes
from .exact import (
    TriangleOracle,
    brute_force_triangles,
    exact_avg_degree,
    exact_triangles,
    min_endpoint_sum,
    weighted_light_sum,
)
from .graph import (
    GraphFormatError,
    GraphStats,
    QueryBudgetExceeded,
    QueryError,
    QueryGraph,
    QueryLedger,
    full_scan_fallback,
    load_edge_list,
)
from .heavy import HeavyLabeler, edge_triangle_sample, heavy_trial
from .labels import FixedLabels, Label, weight_of_triangle
from .params import PRACTICAL, THEORETICAL, GuessContext, ParameterProfile, get_profile
from .report import EstimateReport
from .triangles import (
    DegreeProportionalSampler,
    TriangleTrialOutcome,
    count_triangles,
    estimate_once,
    robust_estimate,
    run_trial,
    sample_vertex_multiset,
)

__version__ = "0.1.0"

__all__ = [
    "PRACTICAL",
    "THEORETICAL",
    "DegreeProportionalSampler",
    "EstimateReport",
    "FixedLabels",
    "GraphFormatError",
    "GraphStats",
    "GuessContext",
    "HeavyLabeler",
    "Label",
    "ParameterProfile",
    "QueryBudgetExceeded",
    "QueryError",
    "QueryGraph",
    "QueryLedger",
    "TriangleOracle",
    "TriangleTrialOutcome",
    "avg_degree_once",
    "brute_force_triangles",
    "count_triangles",
    "degree_sample",
    "edge_triangle_sample",
    "estimate_avg_degree",
    "estimate_once",
    "exact_avg_degree",
    "exact_triangles",
    "full_scan_fallback",
    "get_profile",
    "heavy_trial",
    "load_edge_list",
    "min_endpoint_sum",
    "precedes",
    "robust_estimate",
    "run_trial",
    "sample_vertex_multiset",
    "weight_of_triangle",
    "weighted_light_sum",
]
