"""Small value types passed between modules."""
from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class EvalResult:
    """A complex value paired with an absolute error estimate."""

    value: complex
    err: float

    def __post_init__(self):
        if not (self.err >= 0.0 and math.isfinite(self.err)):
            raise ValueError(f"err must be finite and non-negative, got {self.err!r}")


@dataclass(frozen=True)
class QuadResult:
    """Outcome of a refinement-checked quadrature.

    ``panels`` counts the integrand samples on the finest grid used.
    """

    value: float
    err: float
    panels: int
    coarse_value: float = math.nan


@dataclass(frozen=True)
class BoundReport:
    lhs: float
    rhs: float
    config: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.rhs > 0:
            raise ValueError(f"rhs must be positive, got {self.rhs!r}")
        if self.lhs < 0:
            raise ValueError(f"lhs must be non-negative, got {self.lhs!r}")

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs

    def as_dict(self) -> dict:
        out = {"lhs": self.lhs, "rhs": self.rhs, "ratio": self.ratio, "config": self.config}
        out.update(self.extra)
        return out
