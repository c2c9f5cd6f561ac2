"""Moment integrals over t in [T, 2T].

Every integral here is a composite trapezoid rule on an equispaced grid with
an even number of panels.  The reported value uses the full grid; the error
estimate is the difference from the same rule on every other point (the
grid at twice the step).  A difference above ``QuadParams.rel_tol`` of the
value raises :class:`NumericalFailure` with both values in the message.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .bounds import ShiftConfig
from .dirichlet_sums import Grid, zsum_batch, zsum_rough_batch, zsum_smoothed_batch
from .errors import NumericalFailure, PreconditionError
from .results import QuadResult
from .smoothing import SmoothCutoff
from .zeta_eval import eval_zeta, eval_zeta_grid

DEFAULT_EPS = 0.05
VARIANTS = ("sharp", "smoothed", "rough")
WINDOW_INNER_STEP = 0.1


@dataclass(frozen=True)
class QuadParams:
    """Resolution controls.

    ``dt`` is the coarse grid step; integrands are sampled at ``dt/2``.
    When omitted it defaults to the largest step the aliasing rule allows.
    """

    dt: float | None = None
    rel_tol: float = 0.05
    zeta_tol: float = 1e-10
    threads: int | None = None


@dataclass(frozen=True)
class MomentSpec:
    m: float
    T: float
    Y: float
    variant: str = "sharp"
    cutoff: SmoothCutoff | None = None
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not self.m > 0:
            raise PreconditionError(f"m must be positive, got {self.m!r}")
        if not self.T >= 100:
            raise PreconditionError(f"T must be >= 100, got {self.T!r}")
        if not self.Y >= 1:
            raise PreconditionError(f"Y must be >= 1, got {self.Y!r}")
        if self.variant not in VARIANTS:
            raise PreconditionError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.variant != "sharp" and self.cutoff is None:
            raise PreconditionError(f"variant {self.variant!r} needs a cutoff")

    def check_standing_assumption(self) -> None:
        """Y <= (1 - eps) T, required whenever a bound comparison is made."""
        if self.Y > (1.0 - self.eps) * self.T:
            raise PreconditionError(f"need Y <= (1-eps)T with eps={self.eps}: Y={self.Y:g}, T={self.T:g}")


def max_step_for_length(Y: float) -> float:
    """Largest grid step for a sum whose fastest phase is Y^(it)."""
    if Y <= math.e:
        return 0.25
    return min(0.25, 1.0 / (4.0 * math.log(Y)))


def _resolve_step(resolution: QuadParams, limit: float) -> float:
    if resolution.dt is None:
        return limit
    if not 0 < resolution.dt <= limit * (1 + 1e-12):
        raise PreconditionError(f"dt={resolution.dt!r} exceeds the aliasing limit {limit:.6g}")
    return float(resolution.dt)


def fine_grid(a: float, b: float, dt: float) -> Grid:
    """Grid on [a, b] with step <= dt/2 and an even number of panels."""
    coarse = max(1, math.ceil((b - a) / dt - 1e-9))
    panels = 2 * coarse
    return Grid(float(a), (b - a) / panels, panels + 1)


def trapezoid(values, h: float) -> float:
    v = np.asarray(values, dtype=float)
    return h * (math.fsum(v) - 0.5 * (v[0] + v[-1]))


def refined_trapezoid(values, h: float, rel_tol: float, what: str = "integral") -> QuadResult:
    v = np.asarray(values, dtype=float)
    if (v.shape[0] - 1) % 2:
        raise ValueError("refined_trapezoid needs an even number of panels")
    fine = trapezoid(v, h)
    coarse = trapezoid(v[::2], 2 * h)
    err = abs(fine - coarse)
    if err > rel_tol * abs(fine):
        raise NumericalFailure(
            f"{what}: refinement disagreement {err / abs(fine) if fine else math.inf:.2%} "
            f"(fine={fine!r}, coarse={coarse!r})"
        )
    return QuadResult(fine, err, int(v.shape[0]), coarse)


def _sum_values(spec: MomentSpec, grid: Grid, threads):
    if spec.variant == "sharp":
        return zsum_batch(spec.Y, grid, threads)
    if spec.variant == "smoothed":
        return zsum_smoothed_batch(spec.Y, grid, spec.cutoff, threads)
    return zsum_rough_batch(spec.Y, grid, spec.cutoff, threads)


def integrate_moment(spec: MomentSpec, resolution: QuadParams | None = None) -> QuadResult:
    """S_m(T, Y) = int_T^2T |sum_{n<=Y} n^(-it)|^(2m) dt (or its smoothed/rough variant)."""
    resolution = resolution or QuadParams()
    dt = _resolve_step(resolution, max_step_for_length(spec.Y))
    grid = fine_grid(spec.T, 2 * spec.T, dt)
    vals = np.abs(_sum_values(spec, grid, resolution.threads)) ** (2 * spec.m)
    return refined_trapezoid(vals, grid.dt, resolution.rel_tol, f"S_{spec.m:g}(T={spec.T:g}, Y={spec.Y:g})")


def zeta_step(t_max: float) -> float:
    """Grid step for integrands built from zeta at heights up to t_max."""
    return max_step_for_length(max(abs(t_max), math.e))


def _zeta_product(a, b, sigma, grid: Grid, resolution: QuadParams):
    vals = np.ones(grid.count)
    for a_j, b_j in zip(a, b):
        if a_j == 0:
            continue
        z, _ = eval_zeta_grid(sigma, grid.shifted(b_j), resolution.zeta_tol, resolution.threads)
        vals *= np.abs(z) ** a_j
    return vals


def sigma_moment(a, b, sigma: float, T: float, resolution: QuadParams | None = None) -> QuadResult:
    """int_T^2T prod_j |zeta(sigma + i(t + b_j))|^(a_j) dt for sigma >= 1/2."""
    resolution = resolution or QuadParams()
    if not sigma >= 0.5:
        raise PreconditionError(f"sigma must be >= 1/2, got {sigma!r}")
    cfg = ShiftConfig(tuple(a), tuple(b))
    t_max = 2 * T + max(abs(v) for v in cfg.b)
    dt = _resolve_step(resolution, zeta_step(t_max))
    grid = fine_grid(T, 2 * T, dt)
    vals = _zeta_product(cfg.a, cfg.b, sigma, grid, resolution)
    return refined_trapezoid(vals, grid.dt, resolution.rel_tol, f"zeta moment sigma={sigma:g} T={T:g}")


def shifted_moment(cfg: ShiftConfig, T: float, resolution: QuadParams | None = None,
                   eps: float = DEFAULT_EPS) -> QuadResult:
    """int_T^2T prod_j |zeta(1/2 + i(t + b_j))|^(a_j) dt."""
    cfg.check_height(T, eps)
    return sigma_moment(cfg.a, cfg.b, 0.5, T, resolution)


def sigma_trivial_bound(a, sigma: float, T: float) -> float:
    """T prod zeta(sigma)^(a_j); majorizes the sigma-moment when sigma > 1."""
    if not sigma > 1:
        raise PreconditionError("trivial bound needs sigma > 1")
    z = eval_zeta(complex(sigma, 0.0)).value.real
    return T * math.prod(z ** a_j for a_j in a)


def _window_panels(T: float, E: float, dt: float) -> int:
    """Even panel count for [T, 2T] with step <= dt/2, chosen so E is a whole
    (even) number of steps whenever E/T is a modest rational."""
    base = 2 * max(1, math.ceil(T / dt - 1e-9))
    ratio = Fraction(E / T).limit_denominator(10 ** 6)
    if abs(float(ratio) - E / T) < 1e-14 * (E / T):
        lcm = 2 * ratio.denominator
        aligned = lcm * math.ceil(base / lcm)
        if aligned <= 4 * base:
            return aligned
    return base


def _cumulative(u0: float, h: float, mod: np.ndarray) -> CubicHermiteSpline:
    cum = np.concatenate([[0.0], np.cumsum(0.5 * h * (mod[1:] + mod[:-1]))])
    return CubicHermiteSpline(u0 + h * np.arange(mod.shape[0]), cum, mod)


def window_moment(m: float, T: float, E: float, sign: int = 1, resolution: QuadParams | None = None,
                  t_shift: float = 0.0, eps: float = DEFAULT_EPS) -> QuadResult:
    """int_T^2T (int_0^E |zeta(1/2 + i(sign*s + t))| ds)^(2m) dt.

    The inner integral is a difference of one cumulative trapezoid integral
    of |zeta(1/2 + iu)| on a shared u-grid, read off with cubic Hermite
    interpolation (its derivative is |zeta| itself).  The outer t-range is
    [T + t_shift, 2T + t_shift].  The reported error adds the outer
    refinement difference to the change caused by doubling the inner step.
    """
    resolution = resolution or QuadParams()
    if sign not in (1, -1):
        raise PreconditionError(f"sign must be +1 or -1, got {sign!r}")
    if not m >= 2:
        raise PreconditionError(f"m must be >= 2, got {m!r}")
    if not 10 <= E <= (1.0 - eps) * T:
        raise PreconditionError(f"need 10 <= E <= (1-eps)T, got E={E!r}")
    lo, hi = T + t_shift, 2 * T + t_shift
    dt = _resolve_step(resolution, min(WINDOW_INNER_STEP, zeta_step(hi + E)))
    panels = _window_panels(T, E, dt)
    h = T / panels
    outer = Grid(lo, h, panels + 1)
    pad = math.ceil(E / h - 1e-9) + 2
    u0 = lo - pad * h if sign < 0 else lo
    u_grid = Grid(u0, h, outer.count + pad)
    z, _ = eval_zeta_grid(0.5, u_grid, resolution.zeta_tol, resolution.threads)
    mod = np.abs(z)
    t = outer.points()

    def outer_values(spline):
        inner = spline(t + E) - spline(t) if sign > 0 else spline(t) - spline(t - E)
        return np.maximum(inner, 0.0) ** (2 * m)

    vals = outer_values(_cumulative(u0, h, mod))
    result = refined_trapezoid(vals, h, resolution.rel_tol, f"window moment m={m:g} T={T:g} E={E:g}")
    inner_delta = abs(trapezoid(outer_values(_cumulative(u0, 2 * h, mod[::2])), h) - result.value)
    return QuadResult(result.value, result.err + inner_delta, result.panels, result.coarse_value)
