from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .graph import QueryLedger


@dataclass
class EstimateReport:
    """Outcome of one estimator run: the value plus how it was obtained."""

    estimate: float
    guess_trace: list[tuple[float, list[float]]]
    ledger: QueryLedger
    fallback_used: bool
    profile: str
    seed: int
    wall_time: float
    eps: float | None = None
    kind: str = "triangles"
    flags: dict[str, bool] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        """JSON-ready dict; wall time is left out unless ``timing`` is set so
        that identical seeds give identical output."""
        out: dict[str, Any] = {
            "kind": self.kind,
            "estimate": self.estimate,
            "eps": self.eps,
            "profile": self.profile,
            "seed": self.seed,
            "fallback_used": self.fallback_used,
            "ledger": self.ledger.to_dict(),
            "guess_trace": [{"guess": g, "runs": list(r)} for g, r in self.guess_trace],
            "flags": dict(self.flags),
            "details": dict(self.details),
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out
