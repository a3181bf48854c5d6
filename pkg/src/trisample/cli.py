"""Command-line front end.

    trisample exact --input G.txt
    trisample triangles --input G.txt --eps 0.3 --repeats 5 --with-exact
    trisample avgdeg --input G.txt --eps 0.1
    trisample bench --manifest fixtures.txt --eps 0.3 0.5

Repeat ``i`` runs with master seed ``seed + i``.  Output goes to stdout and
contains no timing unless ``--timing`` is given, so a fixed seed always
produces the same bytes, whatever ``--jobs`` is.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .avgdeg import estimate_avg_degree
from .exact import exact_avg_degree, exact_triangles, min_endpoint_sum
from .graph import GraphFormatError, QueryGraph, load_edge_list
from .params import PROFILES
from .report import EstimateReport
from .triangles import count_triangles

__all__ = ["RunConfig", "build_parser", "cmd_avgdeg", "cmd_bench", "cmd_exact", "cmd_triangles", "main", "reference_cost"]

CLI_BUDGET_FACTOR = 2.0

BENCH_COLUMNS = [
    "graph",
    "status",
    "n",
    "m",
    "t",
    "eps",
    "profile",
    "repeats",
    "median_estimate",
    "success_rate",
    "fallback_rate",
    "median_ledger",
    "reference",
    "ratio",
]


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    eps: list[float] = field(default_factory=lambda: [0.3])
    profile: list[str] = field(default_factory=lambda: ["practical"])
    seed: int = 0
    repeats: int = 1
    budget_factor: float | None = CLI_BUDGET_FACTOR
    format: str = "json"
    with_exact: bool = False
    manifest: str | None = None
    jobs: int = 1
    timing: bool = False

    def __post_init__(self):
        for e in self.eps:
            if not 0 < e < 1:
                raise ValueError(f"eps must lie in (0, 1), got {e}")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        for p in self.profile:
            if p not in PROFILES:
                raise ValueError(f"unknown profile {p!r}")
        if self.format not in ("json", "csv"):
            raise ValueError(f"unknown format {self.format!r}")


def reference_cost(n: int, m: int, t: int) -> float | None:
    """``n / t^(1/3) + m^(3/2) / t``, the shape of the triangle-count bound."""
    if t <= 0:
        return None
    return n / t ** (1 / 3) + m**1.5 / t


def _run_repeats(fn: Callable[[int], dict], repeats: int, jobs: int) -> list[dict]:
    # map() yields in submission order, so completion order never leaks out
    if jobs == 1 or repeats == 1:
        return [fn(i) for i in range(repeats)]
    with ThreadPoolExecutor(max_workers=min(jobs, repeats)) as pool:
        return list(pool.map(fn, range(repeats)))


def _relative_error(estimate: float, truth: float) -> float | None:
    if truth == 0:
        return 0.0 if estimate == 0 else None
    return (estimate - truth) / truth


def cmd_exact(config: RunConfig, graph: QueryGraph | None = None) -> dict:
    graph = graph if graph is not None else load_edge_list(config.input)  # type: ignore[arg-type]
    started = time.perf_counter()
    t = exact_triangles(graph).t
    out = {
        "n": graph.n,
        "m": graph.m,
        "t": t,
        "avg_degree": float(exact_avg_degree(graph)) if graph.n else None,
        "min_endpoint_sum": min_endpoint_sum(graph),
    }
    if config.timing:
        out["runtime"] = time.perf_counter() - started
    return out


def _estimator_reports(config: RunConfig, graph: QueryGraph, kind: str) -> list[dict]:
    eps = config.eps[0]
    profile = config.profile[0]
    truth = None
    if config.with_exact:
        truth = exact_triangles(graph).t if kind == "triangles" else float(exact_avg_degree(graph))

    def one(i: int) -> dict:
        view = graph.fork()
        seed = config.seed + i
        if kind == "triangles":
            report: EstimateReport = count_triangles(view, eps, profile, seed, config.budget_factor)
        else:
            report = estimate_avg_degree(view, eps, profile, seed, config.budget_factor)[2]
        row = {"repeat": i, **report.to_dict(timing=config.timing)}
        if truth is not None:
            row["exact"] = truth
            row["relative_error"] = _relative_error(report.estimate, truth)
        return row

    return _run_repeats(one, config.repeats, config.jobs)


def cmd_triangles(config: RunConfig, graph: QueryGraph | None = None) -> list[dict]:
    graph = graph if graph is not None else load_edge_list(config.input)  # type: ignore[arg-type]
    return _estimator_reports(config, graph, "triangles")


def cmd_avgdeg(config: RunConfig, graph: QueryGraph | None = None) -> list[dict]:
    graph = graph if graph is not None else load_edge_list(config.input)  # type: ignore[arg-type]
    return _estimator_reports(config, graph, "avgdeg")


def read_manifest(path: str) -> list[str]:
    """One fixture path per line; blank lines and ``#`` comments skipped.
    Relative paths are taken relative to the manifest's directory."""
    base = os.path.dirname(os.path.abspath(path))
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(line if os.path.isabs(line) else os.path.join(base, line))
    return out


def cmd_bench(config: RunConfig) -> list[dict]:
    """One row per fixture x eps x profile; unreadable fixtures give one
    ``missing`` row each."""
    rows: list[dict] = []
    for path in read_manifest(config.manifest):  # type: ignore[arg-type]
        name = os.path.basename(path)
        try:
            graph = load_edge_list(path)
        except (OSError, GraphFormatError) as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
            rows.append({"graph": name, "status": "missing"})
            continue
        t = exact_triangles(graph).t
        ref = reference_cost(graph.n, graph.m, t)
        for eps in config.eps:
            for profile in config.profile:
                sub = RunConfig(
                    "triangles",
                    eps=[eps],
                    profile=[profile],
                    seed=config.seed,
                    repeats=config.repeats,
                    budget_factor=config.budget_factor,
                    jobs=config.jobs,
                )
                reports = _estimator_reports(sub, graph, "triangles")
                estimates = [r["estimate"] for r in reports]
                ledgers = [r["ledger"]["total"] for r in reports]
                hits = sum(abs(e - t) <= eps * t for e in estimates)
                med_ledger = statistics.median(ledgers)
                rows.append(
                    {
                        "graph": name,
                        "status": "ok",
                        "n": graph.n,
                        "m": graph.m,
                        "t": t,
                        "eps": eps,
                        "profile": profile,
                        "repeats": len(reports),
                        "median_estimate": statistics.median(estimates),
                        "success_rate": hits / len(reports),
                        "fallback_rate": sum(r["fallback_used"] for r in reports) / len(reports),
                        "median_ledger": med_ledger,
                        "reference": ref,
                        "ratio": med_ledger / ref if ref else None,
                    }
                )
    return rows


def _flatten(report: dict) -> dict:
    flat = {k: v for k, v in report.items() if not isinstance(v, (dict, list))}
    for k, v in report.get("ledger", {}).items():
        flat[f"ledger_{k}"] = v
    if "guess_trace" in report:
        flat["guesses"] = len(report["guess_trace"])
    if "fallback_reason" in report.get("details", {}):
        flat["fallback_reason"] = report["details"]["fallback_reason"]
    return flat


def _to_csv(rows: Sequence[dict], columns: Sequence[str] | None = None) -> str:
    if columns is None:
        columns = []
        for row in rows:
            columns.extend(k for k in row if k not in columns)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in columns})
    return buf.getvalue()


def render(command: str, result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2, sort_keys=True, allow_nan=False) + "\n"
    if command == "exact":
        return _to_csv([result])
    if command == "bench":
        return _to_csv(result, BENCH_COLUMNS)
    return _to_csv([_flatten(r) for r in result])


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _eps(text: str) -> float:
    value = float(text)
    if not 0 < value < 1 or math.isnan(value):
        raise argparse.ArgumentTypeError("eps must lie in (0, 1)")
    return value


def _budget(text: str) -> float | None:
    if text.lower() in ("none", "off", "0"):
        return None
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("budget factor must be positive, or 'none'")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trisample", description="Sublinear triangle counting and average degree.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, repeats: int) -> None:
        # added per subcommand: parents= would share one action object, so a
        # per-command default would leak into the others
        p.add_argument("--seed", type=int, default=0, help="master seed; repeat i uses seed + i")
        p.add_argument("--repeats", type=_positive_int, default=repeats)
        p.add_argument("--budget-factor", type=_budget, default=CLI_BUDGET_FACTOR,
                       help="fall back to an exact scan past this many queries per estimated edge ('none' disables)")
        p.add_argument("--jobs", type=_positive_int, default=1, help="threads for running repeats")
        p.add_argument("--timing", action="store_true", help="include wall-clock times (output no longer reproducible)")

    p = sub.add_parser("exact", help="exact counts from the full graph")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--timing", action="store_true")

    for name, default_eps, what in (("triangles", 0.3, "estimate the triangle count"), ("avgdeg", 0.1, "estimate the average degree")):
        p = sub.add_parser(name, help=what)
        add_common(p, repeats=1)
        p.add_argument("--input", required=True)
        p.add_argument("--eps", type=_eps, default=default_eps)
        p.add_argument("--profile", choices=sorted(PROFILES), default="practical")
        p.add_argument("--with-exact", action="store_true", help="add the exact value and relative error")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("bench", help="sweep fixtures x eps x profile")
    add_common(p, repeats=5)
    p.add_argument("--manifest", required=True, help="text file with one edge-list path per line")
    p.add_argument("--eps", type=_eps, nargs="+", default=[0.3])
    p.add_argument("--profile", choices=sorted(PROFILES), nargs="+", default=["practical"])
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    eps = args.eps if isinstance(getattr(args, "eps", None), list) else [getattr(args, "eps", 0.3)]
    profile = args.profile if isinstance(getattr(args, "profile", None), list) else [getattr(args, "profile", "practical")]
    return RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        eps=eps,
        profile=profile,
        seed=getattr(args, "seed", 0),
        repeats=getattr(args, "repeats", 1),
        budget_factor=getattr(args, "budget_factor", CLI_BUDGET_FACTOR),
        format=args.format,
        with_exact=getattr(args, "with_exact", False),
        manifest=getattr(args, "manifest", None),
        jobs=getattr(args, "jobs", 1),
        timing=args.timing,
    )


COMMANDS = {"exact": cmd_exact, "triangles": cmd_triangles, "avgdeg": cmd_avgdeg, "bench": cmd_bench}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    try:
        result = COMMANDS[config.command](config)
    except GraphFormatError as exc:
        print(f"error: {config.input}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(config.command, result, config.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
