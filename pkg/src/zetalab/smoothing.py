"""Smooth cutoff Phi_U on (0, 1) and its Mellin transform.

The cutoff is built from the C-infinity step

    f(y) = exp(-1/y) for y > 0, else 0,      h(y) = f(y) / (f(y) + f(1 - y)),

as Phi_U(x) = h(U x) * h(U (1 - x)).  It vanishes outside (0, 1), equals 1
on [1/U, 1 - 1/U], and its j-th derivative scales like U^j.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure, PreconditionError
from .results import BoundReport

MAX_DERIVATIVE = 6


def _f(y):
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    pos = y > 0
    # for subnormal y, -1/y overflows to -inf and exp gives the correct 0
    with np.errstate(over="ignore"):
        out[pos] = np.exp(-1.0 / y[pos])
    return out


def smooth_step(y):
    """h(y): 0 for y <= 0, 1 for y >= 1, C-infinity in between."""
    y = np.asarray(y, dtype=float)
    a = _f(y)
    b = _f(1.0 - y)
    return a / (a + b)


@dataclass(frozen=True)
class SmoothCutoff:
    U: float
    C_exponent: float = 1.0

    def __post_init__(self):
        if not self.U > 2:
            raise PreconditionError(f"cutoff sharpness U must exceed 2, got {self.U!r}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.eval_pair(x, 1.0 - x)

    def eval_pair(self, x, one_minus_x):
        """Evaluate with the distance to 1 supplied separately (no cancellation near x = 1)."""
        x = np.asarray(x, dtype=float)
        return smooth_step(self.U * x) * smooth_step(self.U * np.asarray(one_minus_x, dtype=float))

    @property
    def plateau(self) -> tuple[float, float]:
        return 1.0 / self.U, 1.0 - 1.0 / self.U


def build_cutoff(U: float, C_exponent: float = 1.0) -> SmoothCutoff:
    return SmoothCutoff(float(U), float(C_exponent))


def cutoff_for_height(T: float, C_exponent: float) -> SmoothCutoff:
    """Cutoff with U = (log T)^C."""
    return build_cutoff(math.log(T) ** C_exponent, C_exponent)


# Truncated Taylor series ("jets"): row k holds f^(k)(x0)/k!, columns index points.

def _jet_mul(a, b):
    out = np.zeros_like(a)
    for k in range(a.shape[0]):
        out[k] = sum(a[j] * b[k - j] for j in range(k + 1))
    return out


def _jet_recip(a):
    out = np.zeros_like(a)
    out[0] = 1.0 / a[0]
    for k in range(1, a.shape[0]):
        out[k] = -out[0] * sum(a[j] * out[k - j] for j in range(1, k + 1))
    return out


def _jet_exp(a):
    out = np.zeros_like(a)
    out[0] = np.exp(a[0])
    for k in range(1, a.shape[0]):
        out[k] = sum(j * a[j] * out[k - j] for j in range(1, k + 1)) / k
    return out


def _f_jet(y0, slope, order):
    """Jet of f(y0 + slope*e) in e."""
    jet = np.zeros((order + 1, y0.shape[0]))
    pos = y0 > 0
    if np.any(pos):
        lin = np.zeros((order + 1, int(pos.sum())))
        lin[0] = y0[pos]
        if order >= 1:
            lin[1] = slope
        with np.errstate(under="ignore"):
            jet[:, pos] = _jet_exp(-_jet_recip(lin))
    return jet


def _step_jet(y0, slope, order):
    """Jet of h(y0 + slope*e) in e."""
    a = _f_jet(y0, slope, order)
    b = _f_jet(1.0 - y0, -slope, order)
    with np.errstate(under="ignore"):
        jet = _jet_mul(a, _jet_recip(a + b))
    # outside (0, 1) the step is exactly constant
    flat = (y0 <= 0) | (y0 >= 1)
    jet[:, flat] = 0.0
    jet[0, y0 >= 1] = 1.0
    return jet


def eval_cutoff_derivative(cutoff: SmoothCutoff, x, j: int):
    """Phi_U^(j)(x), exact up to rounding, via Taylor-series arithmetic."""
    if int(j) != j or not 0 <= j <= MAX_DERIVATIVE:
        raise PreconditionError(f"derivative order must be an integer in [0, {MAX_DERIVATIVE}], got {j!r}")
    j = int(j)
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    U = cutoff.U
    left = _step_jet(U * x_arr, U, j)
    right = _step_jet(U * (1.0 - x_arr), -U, j)
    value = _jet_mul(left, right)[j] * math.factorial(j)
    return float(value[0]) if np.ndim(x) == 0 else value


def derivative_sup(cutoff: SmoothCutoff, j: int, points: int = 20001) -> float:
    """max |Phi_U^(j)| over a dense grid of the two transition layers."""
    U = cutoff.U
    layer = np.linspace(0.0, 1.0 / U, points)
    xs = np.concatenate([layer, 1.0 - layer])
    return float(np.max(np.abs(eval_cutoff_derivative(cutoff, xs, j))))


@dataclass(frozen=True)
class MellinValue:
    s: complex
    value: complex
    err: float


_TS_UMAX = 3.5


def _tanh_sinh_nodes(h: float, odd_only: bool):
    kmax = int(_TS_UMAX / h)
    if odd_only:
        k = np.arange(1, kmax + 1, 2)
        u = np.concatenate([-k[::-1], k]) * h
    else:
        u = np.arange(-kmax, kmax + 1) * h
    q = 0.5 * math.pi * np.sinh(u)
    with np.errstate(over="ignore"):
        lo = 1.0 / (1.0 + np.exp(-2.0 * q))  # (1 + tanh q) / 2
        hi = 1.0 / (1.0 + np.exp(2.0 * q))   # (1 - tanh q) / 2
        w = 0.5 * math.pi * np.cosh(u) / np.cosh(q) ** 2
    return lo, hi, w


def tanh_sinh(integrand, a: float, b: float, tol: float = 1e-13, min_level: int = 3, max_level: int = 14):
    """Double-exponential quadrature of ``integrand(x, b - x)`` over [a, b].

    The integrand receives the node and its distance to ``b`` so that it can
    stay accurate near the right endpoint.  Returns (value, last refinement
    delta, level).
    """
    width = b - a

    def level_sum(h, odd_only):
        lo, hi, w = _tanh_sinh_nodes(h, odd_only)
        keep = w > 0
        x = a + width * lo[keep]
        vals = integrand(x, width * hi[keep])
        return 0.5 * width * np.sum(w[keep] * vals)

    h = 1.0
    raw = level_sum(h, False)
    total = raw * h
    delta = math.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        raw = raw + level_sum(h, True)
        new = raw * h
        delta = abs(new - total)
        total = new
        if level >= min_level and delta < tol:
            return total, delta, level
    raise NumericalFailure(f"tanh-sinh did not converge: last delta {delta:.3e}")


def mellin_transform(cutoff: SmoothCutoff, s: complex, tol: float = 1e-13) -> MellinValue:
    """Phi_hat_U(s) = int_0^1 Phi_U(x) x^(s-1) dx for Re(s) >= 1/2.

    The plateau [1/U, 1 - 1/U] contributes ((1-1/U)^s - U^-s)/s in closed
    form; the two transition layers go through tanh-sinh quadrature.
    """
    s = complex(s)
    if s.real < 0.5:
        raise PreconditionError(f"Re(s) must be >= 1/2, got {s!r}")
    a, b = cutoff.plateau
    sm1 = s - 1.0

    def left(x, _):
        with np.errstate(divide="ignore", invalid="ignore"):
            g = cutoff.eval_pair(x, 1.0 - x) * np.exp(sm1 * np.log(x))
        return np.where(x > 0, g, 0.0)

    def right(x, d):
        # x in [b, 1]; d = 1 - x computed without cancellation
        return cutoff.eval_pair(x, d) * np.exp(sm1 * np.log1p(-d))

    plateau = (np.exp(s * math.log(b)) - np.exp(s * math.log(a))) / s
    v_left, e_left, _ = tanh_sinh(left, 0.0, a, tol)
    v_right, e_right, _ = tanh_sinh(right, b, 1.0, tol)
    value = complex(plateau + v_left + v_right)
    return MellinValue(s, value, float(e_left + e_right + 4 * np.finfo(float).eps * abs(plateau)))


def decay_envelope_check(cutoff: SmoothCutoff, i: int, s_samples) -> BoundReport:
    """Measured constant K_i = max_s |Phi_hat_U(s)| (1+|s|)^i / U^(i-1).

    The report's lhs/rhs are |Phi_hat_U| and U^(i-1)(1+|s|)^-i at the
    maximizing sample, so ``ratio`` is K_i.
    """
    if int(i) != i or not 1 <= i <= 4:
        raise PreconditionError(f"envelope order must be in 1..4, got {i!r}")
    best = None
    for s in s_samples:
        s = complex(s)
        if s.real < 0.5:
            raise PreconditionError(f"Re(s) must be >= 1/2, got {s!r}")
        mv = mellin_transform(cutoff, s)
        envelope = cutoff.U ** (i - 1) * (1.0 + abs(s)) ** (-i)
        k_i = abs(mv.value) / envelope
        if best is None or k_i > best[0]:
            best = (k_i, abs(mv.value), envelope, s, mv.err)
    if best is None:
        raise PreconditionError("need at least one sample point")
    k_i, lhs, rhs, s_star, err = best
    return BoundReport(
        lhs, rhs,
        config=f"U={cutoff.U:g} i={i} argmax_s={s_star}",
        extra={"K": k_i, "s_star": s_star, "quad_err": err},
    )


def diff_mass(Y: float, cutoff: SmoothCutoff) -> float:
    """sum_{n<=Y} (1 - Phi_U(n/Y))^2."""
    if not Y >= 1:
        raise PreconditionError(f"Y must be >= 1, got {Y!r}")
    n = np.arange(1, math.floor(Y) + 1, dtype=float)
    x = n / Y
    return math.fsum((1.0 - cutoff.eval_pair(x, (Y - n) / Y)) ** 2)
