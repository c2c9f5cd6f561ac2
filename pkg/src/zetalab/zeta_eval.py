"""Euler-Maclaurin evaluation of zeta(s) for Re(s) >= 1/2, plus the Hardy Z-function.

With N terms and M = 8 correction pairs,

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_{k=1}^{M} B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(1-s-2k) + R_M,

and |R_M| is bounded by the modulus of the next correction times
|s+2M+1|/(sigma+2M+1).  The starting N is max(ceil(|s|/2), 32); N is
doubled until four times that bound falls below the requested tolerance.
Reported errors are that truncation estimate plus an estimate of rounding
in the head sum, which ``tol`` does not control.  They are heuristic, not
interval bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.special import bernoulli, factorial, loggamma

from . import _kernels
from .dirichlet_sums import Grid, weighted_batch
from .errors import DomainError, NumericalFailure, PreconditionError
from .results import EvalResult

CORRECTION_ORDER = 8
SAFETY = 4.0
MIN_TERMS = 32
MAX_DOUBLINGS = 24
T_CAP = 1e7
POLE_RADIUS = 1e-8
DEFAULT_TOL = 1e-12
EXTENDED_DPS = 34
_EPS = np.finfo(float).eps
_MANY_CHUNK = 1 << 21

_B = bernoulli(2 * CORRECTION_ORDER + 2)
# B_2k / (2k)! for k = 1..M+1
_COEF = np.array([_B[2 * k] / factorial(2 * k, exact=True) for k in range(1, CORRECTION_ORDER + 2)])

PRECISIONS = ("double", "extended")


@dataclass(frozen=True)
class ZetaPoint:
    sigma: float
    t: float

    def __post_init__(self):
        _check_point(self.sigma, self.t)

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.t)


def _check_point(sigma, t):
    sigma = np.asarray(sigma, dtype=float)
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(sigma)) or not np.all(np.isfinite(t)):
        raise PreconditionError("sigma and t must be finite")
    if np.any(sigma < 0.5):
        raise DomainError(f"sigma must be >= 1/2, got min {sigma.min()!r}")
    if np.any(np.abs(t) > T_CAP):
        raise DomainError(f"|t| must be <= {T_CAP:g}")
    if np.any(np.abs(sigma - 1.0) + np.abs(t) < POLE_RADIUS):
        raise DomainError("evaluation point lies within 1e-8 of the pole at s = 1")


def _corrections(s: np.ndarray, n: int):
    """Return (tail terms past the head sum, truncation bound) for each s."""
    log_n = math.log(n)
    n_pow = np.exp(-s * log_n)
    body = n * n_pow / (s - 1.0) + 0.5 * n_pow
    poch = s.copy()
    pw = n_pow / n
    for k in range(CORRECTION_ORDER):
        body = body + _COEF[k] * poch * pw
        poch = poch * (s + 2 * k + 1) * (s + 2 * k + 2)
        pw = pw / (n * n)
    m = CORRECTION_ORDER
    bound = np.abs(_COEF[m] * poch * pw) * np.abs(s + 2 * m + 1) / (s.real + 2 * m + 1)
    return body, bound


def _choose_terms(s: np.ndarray, tol: float) -> int:
    n = max(math.ceil(float(np.max(np.abs(s))) / 2.0), MIN_TERMS)
    for _ in range(MAX_DOUBLINGS):
        _, bound = _corrections(s, n)
        if SAFETY * float(np.max(bound)) < tol:
            return n
        n *= 2
    raise NumericalFailure(f"Euler-Maclaurin tail did not fall below tol={tol:g}")


def _rounding_floor(sigma_min: float, t_max: float, n: int) -> float:
    """Rounding estimate for the head sum: summation error plus phase error.

    Each phase t*log(k) carries an absolute error of about eps*|t|*log(k);
    those errors are treated as a random walk weighted by k^-sigma.
    """
    if abs(sigma_min - 1.0) < 1e-12:
        mass = 1.0 + math.log(n)
    else:
        mass = 1.0 + (n ** (1.0 - sigma_min) - 1.0) / (1.0 - sigma_min)
    walk = math.sqrt(1.0 + math.log(n))
    return 2.0 * _EPS * mass + _EPS * abs(t_max) * math.log(n) * walk


def eval_zeta(p, tol: float = DEFAULT_TOL, precision: str = "double") -> EvalResult:
    """zeta(sigma + i t) for a :class:`ZetaPoint` (or a complex ``s``)."""
    if not isinstance(p, ZetaPoint):
        s = complex(p)
        p = ZetaPoint(s.real, s.imag)
    if not tol > 0:
        raise PreconditionError("tol must be positive")
    if precision == "extended":
        return _eval_extended(p.sigma, p.t, tol)
    if precision != "double":
        raise PreconditionError(f"unknown precision {precision!r}")
    s = np.array([p.s])
    n = _choose_terms(s, tol)
    body, bound = _corrections(s, n)
    head = _kernels.fsum_complex(_kernels.direct_terms(np.arange(1, n) ** -p.sigma, p.t))
    err = SAFETY * bound[0] + _rounding_floor(p.sigma, p.t, n)
    return EvalResult(complex(head + body[0]), float(err))


def _eval_extended(sigma: float, t: float, tol: float) -> EvalResult:
    s_np = np.array([complex(sigma, t)])
    n = _choose_terms(s_np, tol)
    with mpmath.workdps(EXTENDED_DPS):
        s = mpmath.mpc(sigma, t)
        head = mpmath.fsum(mpmath.power(k, -s) for k in range(1, n))
        n_pow = mpmath.power(n, -s)
        total = head + n * n_pow / (s - 1) + n_pow / 2
        poch, pw = s, n_pow / n
        for k in range(1, CORRECTION_ORDER + 1):
            total += mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k) * poch * pw
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            pw /= n * n
        m = CORRECTION_ORDER + 1
        bound = abs(mpmath.bernoulli(2 * m) / mpmath.factorial(2 * m) * poch * pw)
        bound *= abs(s + 2 * m - 1) / (sigma + 2 * m - 1)
        value = complex(total)
    err = SAFETY * float(bound) + 10.0 ** (2 - EXTENDED_DPS) * n + _EPS * abs(value)
    return EvalResult(value, err)


def eval_zeta_many(s, tol: float = 1e-10):
    """Vectorized zeta over an arbitrary array of points; returns (values, errs)."""
    s = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    _check_point(s.real, s.imag)
    n = _choose_terms(s, tol)
    body, bound = _corrections(s, n)
    logn = np.log(np.arange(1, n, dtype=np.float64))
    head = np.empty_like(s)
    rows = max(1, _MANY_CHUNK // max(1, n))
    for lo in range(0, s.shape[0], rows):
        chunk = s[lo:lo + rows]
        head[lo:lo + rows] = np.exp(-np.multiply.outer(chunk, logn)).sum(axis=1)
    floor = _rounding_floor(float(s.real.min()), float(np.abs(s.imag).max()), n)
    return head + body, SAFETY * bound + floor


def eval_zeta_grid(sigma: float, grid: Grid, tol: float = 1e-10, threads: int | None = None):
    """zeta(sigma + i t_k) on an equispaced grid, sharing one head length N."""
    t = grid.points()
    _check_point(sigma, t)
    s = sigma + 1j * t
    n = _choose_terms(s, tol)
    body, bound = _corrections(s, n)
    weights = np.arange(1, n, dtype=np.float64) ** -sigma
    head = weighted_batch(weights, grid, threads)
    floor = _rounding_floor(sigma, float(np.abs(t).max()), n)
    return head + body, SAFETY * bound + floor


def riemann_siegel_theta(t):
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, continuous in t."""
    t = np.asarray(t, dtype=float)
    return loggamma(0.25 + 0.5j * t).imag - 0.5 * t * math.log(math.pi)


def hardy_z(t: float, tol: float = DEFAULT_TOL, precision: str = "double") -> EvalResult:
    """Z(t) = e^(i theta(t)) zeta(1/2 + it).

    The returned value is complex; its imaginary part should vanish and is
    kept as a diagnostic of evaluation accuracy.
    """
    if not t >= 0:
        raise PreconditionError(f"hardy_z needs t >= 0, got {t!r}")
    z = eval_zeta(ZetaPoint(0.5, t), tol, precision)
    if precision == "extended":
        with mpmath.workdps(EXTENDED_DPS):
            theta = float(mpmath.siegeltheta(t))
    else:
        theta = float(riemann_siegel_theta(t))
    theta_err = 4.0 * _EPS * (abs(theta) + 1.0)
    value = complex(math.cos(theta), math.sin(theta)) * z.value
    return EvalResult(value, z.err + abs(z.value) * theta_err)


def eval_zeta_one_line(alpha: float, T: float, tol: float = DEFAULT_TOL,
                       precision: str = "double") -> EvalResult:
    """zeta(1 + 1/log T + i alpha)."""
    if not T >= 16:
        raise PreconditionError(f"T must be >= 16, got {T!r}")
    return eval_zeta(ZetaPoint(1.0 + 1.0 / math.log(T), alpha), tol, precision)
