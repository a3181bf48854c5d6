"""Heavy/light labels and the triangle weights derived from them."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = ["FixedLabels", "Label", "light_count", "weight_of_triangle"]


class Label(str, Enum):
    HEAVY = "heavy"
    LIGHT = "light"


# weight of a triangle indexed by its number of light vertices
WEIGHTS = (Fraction(0), Fraction(1, 2), Fraction(1, 4), Fraction(1, 6))
FLOAT_WEIGHTS = tuple(float(w) for w in WEIGHTS)


def light_count(triangle: Iterable[int], labels: Mapping[int, Label]) -> int:
    return sum(labels[v] is Label.LIGHT for v in triangle)


def weight_of_triangle(triangle: Iterable[int], labels: Mapping[int, Label]) -> Fraction:
    """``1/(2l)`` for a triangle with ``l > 0`` light vertices, else 0."""
    return WEIGHTS[light_count(triangle, labels)]


class FixedLabels:
    """A labeler stand-in that answers from a fixed mapping, without queries."""

    def __init__(self, labels: Mapping[int, Label] | None = None, default: Label = Label.LIGHT):
        self.labels = dict(labels or {})
        self.default = default

    def classify(self, graph, v: int) -> Label:
        return self.labels.get(v, self.default)

    def __getitem__(self, v: int) -> Label:
        return self.labels.get(v, self.default)
