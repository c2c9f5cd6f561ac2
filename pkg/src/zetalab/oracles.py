"""Independent high-precision reference values.

None of these share code with the production evaluators: zeta goes through
the alternating (eta) series with Borwein's acceleration, zeta sums through
plain multiprecision summation.
"""
from __future__ import annotations

import math

import mpmath


def eta_zeta(s: complex, digits: int = 20) -> complex:
    """zeta(s) = eta(s) / (1 - 2^(1-s)) with eta summed by Borwein's algorithm.

    The truncation error is below 3 (1+2|t|) e^(pi|t|/2) / (3+sqrt 8)^n, so
    the term count n and the working precision both grow with |t|.
    """
    s = complex(s)
    t = abs(s.imag)
    growth = math.pi * t / 2 + math.log(3 * (1 + 2 * t))
    n = math.ceil((growth + digits * math.log(10) + 5) / math.log(3 + math.sqrt(8)))
    dps = digits + math.ceil(growth / math.log(10)) + 10
    with mpmath.workdps(dps):
        sm = mpmath.mpc(s.real, s.imag)
        denom = 1 - mpmath.power(2, 1 - sm)
        if abs(denom) < mpmath.mpf(10) ** (-digits // 2):
            raise ValueError("s is too close to a zero of 1 - 2^(1-s)")
        d = []
        acc = mpmath.mpf(0)
        for i in range(n + 1):
            acc += mpmath.factorial(n + i - 1) * mpmath.power(4, i) / (
                mpmath.factorial(n - i) * mpmath.factorial(2 * i))
            d.append(n * acc)
        dn = d[n]
        eta = mpmath.mpf(0)
        for k in range(n):
            term = (d[k] - dn) / mpmath.power(k + 1, sm)
            eta += -term if k % 2 else term
        eta = -eta / dn
        return complex(eta / denom)


def zsum_mp(Y: float, t: float, dps: int = 50) -> complex:
    """sum_{n<=Y} n^(-it) in ``dps``-digit arithmetic."""
    with mpmath.workdps(dps):
        tm = mpmath.mpf(t)
        total = mpmath.mpc(0)
        for n in range(1, math.floor(Y) + 1):
            total += mpmath.expjpi(-tm * mpmath.log(n) / mpmath.pi)
        return complex(total)


def zeta_series_with_tail(s: complex, n_terms: int = 4000):
    """Truncated Dirichlet series plus an integral tail with one end correction.

    zeta(s) ~ sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2 + s N^(-s-1)/12.
    Returns (value, bound) where bound majorizes the neglected remainder,
    |s(s+1)(s+2)(s+3)| N^(-sigma-3) / (720 (sigma+3)).  Meant for Re(s) >= 1.5.
    """
    with mpmath.workdps(30):
        sm = mpmath.mpc(complex(s).real, complex(s).imag)
        head = mpmath.fsum(mpmath.power(k, -sm) for k in range(1, n_terms))
        N = mpmath.mpf(n_terms)
        tail = (mpmath.power(N, 1 - sm) / (sm - 1) + mpmath.power(N, -sm) / 2
                + sm * mpmath.power(N, -sm - 1) / 12)
        value = complex(head + tail)
    sc = complex(s)
    rising = abs(sc * (sc + 1) * (sc + 2) * (sc + 3))
    bound = rising * n_terms ** (-sc.real - 3) / (720 * (sc.real + 3))
    return value, bound
