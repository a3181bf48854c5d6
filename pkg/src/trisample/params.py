"""Sampling-size profiles, guess contexts and seed derivation."""

from __future__ import annotations

import hashlib
import math
from dataclasses import asdict, dataclass, field, replace

__all__ = [
    "PRACTICAL",
    "PROFILES",
    "THEORETICAL",
    "GuessContext",
    "ParameterProfile",
    "derive_seed",
    "get_profile",
]


def derive_seed(*parts: object) -> int:
    """Stable 64-bit seed from an arbitrary tuple of ints, floats and strings."""
    digest = hashlib.blake2b(repr(parts).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def _log(x: float) -> float:
    # log factors are "at least a constant"; tiny inputs would otherwise give <= 0
    return max(1.0, math.log(x)) if x > 1 else 1.0


@dataclass(frozen=True)
class ParameterProfile:
    """Concrete values for the "sufficiently large constants" of the analysis.

    ``c`` plays the role of every unnamed constant (``c``, ``c1``, ``c2``).
    ``median_repeats=None`` means ``ceil(c * ln n)`` repeats in the heavy test.
    With ``rescale_sample_eps`` false, sample sizes are computed from the
    caller's epsilon while thresholds still use the internally rescaled one.
    ``min_vertex_samples``, ``min_trials`` and ``min_inner_samples`` floor
    ``s1``, ``s2`` and the per-trial sample count of the heavy test;
    ``avg_samples_floor / eps^2`` floors the average-degree sample size.
    """

    name: str
    c: float
    median_repeats: int | None
    inner_samples_scale: float
    s1_scale: float
    s2_scale: float
    min_runs_scale: float
    avg_samples_scale: float
    rescale_sample_eps: bool
    min_vertex_samples: int = 1
    min_trials: int = 1
    min_inner_samples: int = 1
    avg_samples_floor: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


THEORETICAL = ParameterProfile(
    name="theoretical",
    c=10.0,
    median_repeats=None,
    inner_samples_scale=1.0,
    s1_scale=1.0,
    s2_scale=1.0,
    min_runs_scale=1.0,
    avg_samples_scale=1.0,
    rescale_sample_eps=True,
)

PRACTICAL = ParameterProfile(
    name="practical",
    c=1.0,
    median_repeats=5,
    inner_samples_scale=0.001,
    s1_scale=0.03,
    s2_scale=0.0056,
    min_runs_scale=0.05,
    avg_samples_scale=0.03,
    rescale_sample_eps=False,
    min_vertex_samples=32,
    min_trials=32,
    min_inner_samples=8,
    avg_samples_floor=2.0,
)

PROFILES: dict[str, ParameterProfile] = {p.name: p for p in (PRACTICAL, THEORETICAL)}


def get_profile(profile: str | ParameterProfile) -> ParameterProfile:
    if isinstance(profile, ParameterProfile):
        return profile
    try:
        return PROFILES[profile]
    except KeyError:
        raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}") from None


@dataclass(frozen=True)
class GuessContext:
    """Current guesses for the edge and triangle counts plus epsilon.

    Every threshold and sample size used by the estimators is derived from
    these fields.  ``sample_eps`` defaults to ``eps``.
    """

    m_hat: float
    t_hat: float
    eps: float
    profile: ParameterProfile = field(default=PRACTICAL)
    sample_eps: float | None = None

    def __post_init__(self):
        if self.m_hat < 1:
            raise ValueError(f"m_hat must be >= 1, got {self.m_hat}")
        if self.t_hat < 1:
            raise ValueError(f"t_hat must be >= 1, got {self.t_hat}")
        if not 0 < self.eps <= 1:
            raise ValueError(f"eps must lie in (0, 1], got {self.eps}")
        if self.sample_eps is None:
            object.__setattr__(self, "sample_eps", self.eps)
        if not 0 < self.sample_eps <= 1:  # type: ignore[operator]
            raise ValueError(f"sample_eps must lie in (0, 1], got {self.sample_eps}")

    def with_t_hat(self, t_hat: float) -> GuessContext:
        return replace(self, t_hat=t_hat)

    # heavy-light thresholds
    @property
    def degree_threshold(self) -> float:
        return 2 * self.m_hat / (self.eps * self.t_hat) ** (1 / 3)

    @property
    def weight_threshold(self) -> float:
        return self.t_hat ** (2 / 3) / self.eps ** (1 / 3)

    def median_repeats(self, n: int) -> int:
        reps = self.profile.median_repeats
        if reps is None:
            reps = math.ceil(self.profile.c * math.log(max(n, 2)))
        return max(1, reps)

    def inner_samples(self) -> int:
        e = self.sample_eps
        raw = self.profile.inner_samples_scale * (4 / e**2) * self.m_hat**1.5 / self.t_hat
        return max(self.profile.min_inner_samples, math.ceil(raw))

    # triangle estimator sizes
    def vertex_samples(self, n: int) -> int:
        e = self.sample_eps
        p = self.profile
        raw = p.s1_scale * p.c * e**-3 * _log(n / e) * n / self.t_hat ** (1 / 3)
        return max(p.min_vertex_samples, math.ceil(raw))

    def trial_count(self, n: int) -> int:
        e = self.sample_eps
        p = self.profile
        raw = p.s2_scale * p.c * e**-4 * _log(n) ** 2 * self.m_hat**1.5 / self.t_hat
        return max(p.min_trials, math.ceil(raw))

    def min_runs(self, n: int) -> int:
        return min_runs(self.profile, self.sample_eps, n)  # type: ignore[arg-type]

    def to_dict(self) -> dict:
        return {
            "m_hat": self.m_hat,
            "t_hat": self.t_hat,
            "eps": self.eps,
            "sample_eps": self.sample_eps,
            "profile": self.profile.name,
        }


def min_runs(profile: ParameterProfile, eps: float, n: int) -> int:
    """Number of independent runs whose minimum is taken."""
    raw = profile.min_runs_scale * profile.c / eps * _log(_log(n) if n > 1 else 1)
    return max(1, math.ceil(raw))


def avg_degree_samples(profile: ParameterProfile, eps: float, n: int, m_hat: float) -> int:
    """Samples per average-degree run, before the ``10 n`` cap."""
    raw = profile.avg_samples_scale * profile.c * _log(_log(n) / eps) * eps**-2 * n / math.sqrt(eps * m_hat)
    return max(1, math.ceil(raw), math.ceil(profile.avg_samples_floor / eps**2))
