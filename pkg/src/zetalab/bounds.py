"""Right-hand sides of the moment bounds, LHS/RHS reports, and exponent fits.

All implied constants are taken to be 1, and every O(1) exponent in the
two-term window bound is set to 1.  Comparisons are made through ratios,
so a fixed constant only rescales them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import FitError, PreconditionError
from .zeta_eval import eval_zeta_one_line


@dataclass(frozen=True)
class EnvelopeParams:
    """Height T for the envelope g.  ``log_T`` may be given directly for huge T."""

    T: float
    log_T: float = math.nan

    def __post_init__(self):
        if math.isnan(self.log_T):
            if not self.T > 0:
                raise PreconditionError(f"T must be positive, got {self.T!r}")
            object.__setattr__(self, "log_T", math.log(self.T))
        if not self.log_T > 1:
            raise PreconditionError(f"need log T > 1, got log T = {self.log_T!r}")

    @classmethod
    def from_log(cls, log_T: float) -> "EnvelopeParams":
        return cls(math.exp(log_T) if log_T < 700 else math.inf, float(log_T))


def _params(p) -> EnvelopeParams:
    return p if isinstance(p, EnvelopeParams) else EnvelopeParams(float(p))


def g_func(x: float, p) -> float:
    """Envelope g(x) for |zeta(1 + 1/log T + ix)|.

    Cases are tried in the order log T, 1/x, log log x; where two cases
    overlap the first one wins, so g(10) = 1/10.
    """
    p = _params(p)
    if not x >= 0:
        raise PreconditionError(f"g is defined for x >= 0, got {x!r}")
    log_T = p.log_T
    # x >= e^T compared in log space; T itself may be astronomically large
    huge = x > 0 and math.log(x) >= p.T
    if x <= 1.0 / log_T or huge:
        return log_T
    if x <= 10.0:
        return 1.0 / x
    return math.log(math.log(x))


@dataclass(frozen=True)
class ShiftConfig:
    """Exponents a_j >= 0 and shifts b_j for products of shifted zeta moduli."""

    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        if len(a) < 1 or len(a) != len(b):
            raise PreconditionError("exponents and shifts must be non-empty and of equal length")
        if any(v < 0 for v in a):
            raise PreconditionError("exponents must be non-negative")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def k(self) -> int:
        return len(self.a)

    def check_height(self, T: float, eps: float = 0.05) -> None:
        limit = (1.0 - eps) * T
        if any(abs(v) > limit for v in self.b):
            raise PreconditionError(f"shifts must satisfy |b_j| <= (1-eps)T = {limit:g}")

    def pairs(self):
        return combinations(range(self.k), 2)


def curran_rhs(cfg: ShiftConfig, T: float) -> float:
    """T (log T)^(sum a^2/4) prod_{j<l} |zeta(1 + i(b_j - b_l) + 1/log T)|^(a_j a_l / 2)."""
    log_T = math.log(T)
    out = T * log_T ** (sum(v * v for v in cfg.a) / 4.0)
    for j, l in cfg.pairs():
        z = eval_zeta_one_line(cfg.b[j] - cfg.b[l], T).value
        out *= abs(z) ** (cfg.a[j] * cfg.a[l] / 2.0)
    return out


def corollary_rhs(cfg: ShiftConfig, T: float) -> float:
    """Same shape as :func:`curran_rhs` with |zeta| replaced by g(|b_j - b_l|)."""
    p = EnvelopeParams(T)
    out = T * p.log_T ** (sum(v * v for v in cfg.a) / 4.0)
    for j, l in cfg.pairs():
        out *= g_func(abs(cfg.b[j] - cfg.b[l]), p) ** (cfg.a[j] * cfg.a[l] / 2.0)
    return out


def main_rhs(m: float, T: float, Y: float) -> float:
    """T Y^m (log T)^((m-1)^2)."""
    if not (m > 0 and T > 1 and Y > 0):
        raise PreconditionError("need m > 0, T > 1, Y > 0")
    return T * Y ** m * math.log(T) ** ((m - 1.0) ** 2)


def prop24_terms(m: float, T: float, E: float) -> tuple[float, float]:
    """The two terms of the window-moment bound with every O(1) exponent set to 1."""
    if not E >= 10:
        raise PreconditionError(f"E must be >= 10, got {E!r}")
    log_T = math.log(T)
    llE = math.log(math.log(E))
    llT = math.log(log_T)
    first = T * log_T ** ((m - 1.0) ** 2) * E ** 3 * llE
    second = T * log_T ** (m * m - 3.0 * m + 3.0) * E ** (2.0 * m) * llE * llT
    return first, second


def prop24_rhs(m: float, T: float, E: float) -> float:
    first, second = prop24_terms(m, T, E)
    return first + second


PROP24_CONFIG = "O(1) exponents of loglog E and loglog T set to 1; implied constant 1"


def holder_reduce(m: float, n: float, S_mn: float, T: float) -> float:
    """T^(1-1/n) S_{mn}^(1/n), the Hölder majorant for S_m."""
    if not n > 1:
        raise PreconditionError(f"need n > 1, got {n!r}")
    if not S_mn >= 0:
        raise PreconditionError("S_mn must be non-negative")
    return T ** (1.0 - 1.0 / n) * S_mn ** (1.0 / n)


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    residual: float


def fit_exponent(points) -> FitResult:
    """Ordinary least-squares line through (x, y) pairs; residual is the RMS."""
    pts = np.asarray(list(points), dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 3 or pts.shape[1] != 2:
        raise FitError("need at least 3 (x, y) points")
    x, y = pts[:, 0], pts[:, 1]
    if not np.all(np.isfinite(pts)):
        raise FitError("points must be finite")
    if np.unique(x).size != x.size:
        raise FitError("x values must be distinct")
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - (slope * x + intercept)
    rms = math.sqrt(float(np.mean(resid ** 2)))
    return FitResult(float(slope), float(intercept), rms)
