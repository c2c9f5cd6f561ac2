"""Zeta sums sum_{n<=Y} n^(-it): exact, batched, smoothed, and long-range forms."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CapacityError, PreconditionError

Y_CAP = 1e8
BATCH_Y_CAP = 1e6
_DIRECT_CHUNK = 1 << 20


@dataclass(frozen=True)
class Grid:
    """Equispaced ordinates ``t0 + k*dt`` for ``0 <= k < count``."""

    t0: float
    dt: float
    count: int

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise PreconditionError(f"grid step must be positive, got dt={self.dt!r}")
        if int(self.count) != self.count or self.count < 1:
            raise PreconditionError(f"grid count must be a positive integer, got {self.count!r}")
        if not math.isfinite(self.t0):
            raise PreconditionError("grid origin must be finite")

    @classmethod
    def spanning(cls, a: float, b: float, max_step: float) -> "Grid":
        """Smallest grid with step <= max_step whose endpoints are exactly a and b."""
        if not b > a:
            raise PreconditionError(f"empty interval [{a}, {b}]")
        panels = max(1, math.ceil((b - a) / max_step - 1e-12))
        return cls(float(a), (b - a) / panels, panels + 1)

    @property
    def stop(self) -> float:
        return self.t0 + (self.count - 1) * self.dt

    def points(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.count, dtype=np.float64)

    def shifted(self, b: float) -> "Grid":
        return Grid(self.t0 + b, self.dt, self.count)


def _length(Y: float) -> int:
    if not math.isfinite(Y):
        raise PreconditionError(f"sum length must be finite, got {Y!r}")
    if Y > Y_CAP:
        raise CapacityError(f"Y={Y:g} exceeds the desk-scale cap {Y_CAP:g}")
    return max(0, math.floor(Y))


def zsum_direct(Y: float, t: float) -> complex:
    """Exactly rounded sum of n^(-it) over 1 <= n <= Y (empty for Y < 1)."""
    n_max = _length(Y)
    re, im = [], []
    for lo in range(1, n_max + 1, _DIRECT_CHUNK):
        hi = min(lo + _DIRECT_CHUNK, n_max + 1)
        phase = t * np.log(np.arange(lo, hi, dtype=np.float64))
        re.append(math.fsum(np.cos(phase)))
        im.append(-math.fsum(np.sin(phase)))
    return complex(math.fsum(re), math.fsum(im))


def zsum_batch(Y: float, grid: Grid, threads: int | None = None) -> np.ndarray:
    """zsum_direct(Y, t) at every ordinate of ``grid`` via the phase-recurrence kernel."""
    if Y > BATCH_Y_CAP:
        raise CapacityError(f"Y={Y:g} exceeds the batch guard {BATCH_Y_CAP:g}")
    n_max = _length(Y)
    return _kernels.dirichlet_batch(np.ones(n_max), grid.t0, grid.dt, grid.count, threads)


def weighted_batch(weights, grid: Grid, threads: int | None = None) -> np.ndarray:
    """sum_n weights[n-1] * n^(-it) on a grid; building block for smoothed and zeta sums."""
    return _kernels.dirichlet_batch(weights, grid.t0, grid.dt, grid.count, threads)


def smoothed_weights(Y: float, cutoff) -> np.ndarray:
    n_max = _length(Y)
    n = np.arange(1, n_max + 1, dtype=np.float64)
    return cutoff(n / Y)


def zsum_smoothed(Y: float, t: float, cutoff) -> complex:
    """sum_n n^(-it) * Phi_U(n/Y); the cutoff's support keeps n < Y."""
    w = smoothed_weights(Y, cutoff)
    return _kernels.fsum_complex(_kernels.direct_terms(w, t))


def zsum_smoothed_batch(Y: float, grid: Grid, cutoff, threads: int | None = None) -> np.ndarray:
    return weighted_batch(smoothed_weights(Y, cutoff), grid, threads)


def zsum_rough_batch(Y: float, grid: Grid, cutoff, threads: int | None = None) -> np.ndarray:
    """Batch of sum_{n<=Y} n^(-it) (1 - Phi_U(n/Y)), the part the cutoff removes."""
    return weighted_batch(1.0 - smoothed_weights(Y, cutoff), grid, threads)


def long_range_approx(x: float, t: float) -> complex:
    """Closed form ((2x)^(1+it) - x^(1+it)) / (1+it) for sum_{x<n<=2x} n^(it)."""
    if x < 1:
        raise PreconditionError(f"x must be >= 1, got {x!r}")
    s = complex(1.0, t)
    return ((2 * x) ** s - x ** s) / s


def block_sum(x: float, t: float) -> complex:
    """Direct sum of n^(it) over x < n <= 2x."""
    return (zsum_direct(2 * x, t) - zsum_direct(x, t)).conjugate()


def convexity_ratio(x: float, t: float) -> float:
    """|sum_{n<=x} n^(it)| / (t^(1/2) log t), a measured-constant diagnostic for x <= t."""
    if t <= 1:
        raise PreconditionError("t must exceed 1")
    return abs(zsum_direct(x, t)) / (math.sqrt(t) * math.log(t))
