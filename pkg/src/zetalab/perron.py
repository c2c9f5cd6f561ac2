"""Truncated Perron integral for sum_{n<=Y} n^(-it) and its contour decomposition.

The truncated integral runs up the line Re(s) = c = 1 + 1/log Y from
c - iY to c + iY.  Moving it to Re(s) = 1/2 crosses the pole of
zeta(s + it) Y^s / s at s = 1 - it whenever |t| < Y.  The decomposition
therefore carries that residue, Y^(1-it)/(1-it), as an explicit term:

    vertical(c) = lower + vertical(1/2) + upper + residue.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dirichlet_sums import zsum_direct
from .errors import DomainError, NumericalFailure, PreconditionError
from .moments import QuadParams, _resolve_step, fine_grid, trapezoid
from .results import BoundReport, EvalResult
from .zeta_eval import eval_zeta, eval_zeta_grid, eval_zeta_many

MAX_STEP = 0.05


@dataclass(frozen=True)
class PerronConfig:
    Y: float
    t: float = 0.0

    def __post_init__(self):
        if not self.Y >= 10:
            raise PreconditionError(f"Perron truncation needs Y >= 10, got {self.Y!r}")
        if not math.isfinite(self.t):
            raise PreconditionError("t must be finite")

    @property
    def c(self) -> float:
        return 1.0 + 1.0 / math.log(self.Y)

    @property
    def max_step(self) -> float:
        return min(MAX_STEP, 1.0 / (4.0 * math.log(self.Y)))


@dataclass(frozen=True)
class ContourPieces:
    vertical_half: complex
    horiz_lower: complex
    horiz_upper: complex
    residue: complex
    r1: float
    r2: float
    errs: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError("error terms must be non-negative")

    @property
    def total(self) -> complex:
        return self.horiz_lower + self.vertical_half + self.horiz_upper + self.residue

    @property
    def err(self) -> float:
        return float(sum(self.errs))


def _complex_refined(values, h: float, rel_tol: float, what: str) -> EvalResult:
    v = np.asarray(values)
    fine = complex(trapezoid(v.real, h), trapezoid(v.imag, h))
    coarse = complex(trapezoid(v.real[::2], 2 * h), trapezoid(v.imag[::2], 2 * h))
    err = abs(fine - coarse)
    if err > rel_tol * abs(fine):
        raise NumericalFailure(f"{what}: refinement disagreement (fine={fine!r}, coarse={coarse!r})")
    return EvalResult(fine, err)


def _vertical(cfg: PerronConfig, sigma: float, resolution: QuadParams, what: str) -> EvalResult:
    """(1/2 pi i) int_{sigma-iY}^{sigma+iY} zeta(s+it) Y^s/s ds."""
    dt = _resolve_step(resolution, cfg.max_step)
    grid = fine_grid(-cfg.Y, cfg.Y, dt)
    z, zerr = eval_zeta_grid(sigma, grid.shifted(cfg.t), resolution.zeta_tol, resolution.threads)
    s = sigma + 1j * grid.points()
    kernel = np.exp(s * math.log(cfg.Y)) / s
    out = _complex_refined(z * kernel, grid.dt, resolution.rel_tol, what)
    # ds = i du cancels the i in 1/(2 pi i)
    zeta_part = float(np.max(zerr)) * trapezoid(np.abs(kernel), grid.dt)
    return EvalResult(out.value / (2 * math.pi), (out.err + zeta_part) / (2 * math.pi))


def _horizontal(cfg: PerronConfig, height: float, resolution: QuadParams) -> EvalResult:
    """(1/2 pi i) int_{1/2 + i height}^{c + i height} zeta(s+it) Y^s/s ds."""
    dt = _resolve_step(resolution, cfg.max_step)
    grid = fine_grid(0.5, cfg.c, dt)
    s = grid.points() + 1j * height
    z, zerr = eval_zeta_many(s + 1j * cfg.t, resolution.zeta_tol)
    kernel = np.exp(s * math.log(cfg.Y)) / s
    out = _complex_refined(z * kernel, grid.dt, resolution.rel_tol, f"horizontal leg at {height:+g}")
    zeta_part = float(np.max(zerr)) * trapezoid(np.abs(kernel), grid.dt)
    return EvalResult(out.value / (2j * math.pi), (out.err + zeta_part) / (2 * math.pi))


def truncated_vertical(cfg: PerronConfig, resolution: QuadParams | None = None) -> EvalResult:
    """(1/2 pi i) int_{c-iY}^{c+iY} zeta(s+it) Y^s/s ds with c = 1 + 1/log Y."""
    return _vertical(cfg, cfg.c, resolution or QuadParams(), "truncated vertical")


def residue_term(cfg: PerronConfig) -> complex:
    """Residue of zeta(s+it) Y^s/s at s = 1 - it, or 0 when the pole is outside the rectangle."""
    if abs(cfg.t) >= cfg.Y:
        return 0j
    s = complex(1.0, -cfg.t)
    return cmath.exp(s * math.log(cfg.Y)) / s


def contour_decomposition(cfg: PerronConfig, resolution: QuadParams | None = None) -> ContourPieces:
    resolution = resolution or QuadParams()
    if abs(abs(cfg.t) - cfg.Y) < 2.0 / math.log(cfg.Y):
        raise DomainError(
            f"pole s = 1 - it sits within 2/log Y of a horizontal leg (t={cfg.t:g}, Y={cfg.Y:g}); choose another t"
        )
    upper = _horizontal(cfg, cfg.Y, resolution)
    lower = _horizontal(cfg, -cfg.Y, resolution)
    # lower leg runs from c - iY to 1/2 - iY, i.e. right to left
    lower = EvalResult(-lower.value, lower.err)
    half = _vertical(cfg, 0.5, resolution, "critical-line leg")
    return ContourPieces(
        vertical_half=half.value,
        horiz_lower=lower.value,
        horiz_upper=upper.value,
        residue=residue_term(cfg),
        r1=r1_bound(cfg),
        r2=r2_bound(cfg),
        errs=(half.err, lower.err, upper.err),
    )


def r1_bound(cfg: PerronConfig) -> float:
    """sum over Y/2 < n < 2Y, n != Y of min(1, 1/|n - Y|)."""
    Y = cfg.Y
    n = np.arange(math.floor(Y / 2) + 1, math.ceil(2 * Y), dtype=float)
    n = n[(n > Y / 2) & (n < 2 * Y) & (n != Y)]
    return math.fsum(np.minimum(1.0, 1.0 / np.abs(n - Y)))


def r2_bound(cfg: PerronConfig, precision: str = "double") -> float:
    """(4^c + Y^c)/Y * zeta(c) with c = 1 + 1/log Y."""
    c = cfg.c
    zc = eval_zeta(complex(c, 0.0), precision=precision).value.real
    return (4.0 ** c + cfg.Y ** c) / cfg.Y * zc


def perron_residual(cfg: PerronConfig, resolution: QuadParams | None = None) -> BoundReport:
    direct = zsum_direct(cfg.Y, cfg.t)
    trunc = truncated_vertical(cfg, resolution)
    r1, r2 = r1_bound(cfg), r2_bound(cfg)
    return BoundReport(
        abs(direct - trunc.value), r1 + r2,
        config=f"Y={cfg.Y:g} t={cfg.t:g}",
        extra={"direct": direct, "truncated": trunc.value, "truncated_err": trunc.err, "r1": r1, "r2": r2},
    )


def contour_identity_gap(cfg: PerronConfig, resolution: QuadParams | None = None):
    """Return (|truncated - pieces.total|, combined quadrature error, pieces)."""
    trunc = truncated_vertical(cfg, resolution)
    pieces = contour_decomposition(cfg, resolution)
    return abs(trunc.value - pieces.total), trunc.err + pieces.err, pieces
