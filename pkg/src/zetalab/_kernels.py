"""Batch evaluation of Dirichlet polynomials on equispaced ordinate grids.

The workhorse here is :func:`dirichlet_batch`, which computes

    P(t_k) = sum_{n=1}^{N} c_n * n^(-i t_k),    t_k = t0 + k*dt,

for every grid point.  Grid points are processed in blocks of
``RENORM_EVERY`` ordinates.  Inside a block the phase factor is split as
``n^(-i t_start) * (n^(-i dt))^j``; the second factor is tabulated once per
coefficient chunk and the first is recomputed from scratch at the start of
each block, so rounding drift never accumulates across blocks.

Each block's reduction over ``n`` is one fixed-shape matrix-vector product
per coefficient chunk, and chunks are accumulated in increasing ``n``.
Work is split across threads by block only, so every block sees the same
sequence of floating-point operations and results are bit-identical for
any thread count.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

RENORM_EVERY = 512
N_CHUNK = 2048
THREADS_ENV = "ZETALAB_THREADS"


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, int(threads))


def dirichlet_batch(coeffs, t0: float, dt: float, count: int, threads: int | None = None) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    n_terms = coeffs.shape[0]
    out = np.zeros(count, dtype=np.complex128)
    if n_terms == 0 or count == 0:
        return out

    nblocks = -(-count // RENORM_EVERY)
    starts = t0 + dt * RENORM_EVERY * np.arange(nblocks, dtype=np.float64)
    steps = dt * np.arange(RENORM_EVERY, dtype=np.float64)
    acc = np.zeros((nblocks, RENORM_EVERY), dtype=np.complex128)
    workers = min(resolve_threads(threads), nblocks)

    for lo in range(0, n_terms, N_CHUNK):
        hi = min(lo + N_CHUNK, n_terms)
        logn = np.log(np.arange(lo + 1, hi + 1, dtype=np.float64))
        c = coeffs[lo:hi]
        table = np.exp(-1j * np.multiply.outer(steps, logn))

        def run(b, c=c, logn=logn, table=table):
            base = c * np.exp(-1j * starts[b] * logn)
            acc[b] += table @ base

        if workers == 1:
            for b in range(nblocks):
                run(b)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(run, range(nblocks)))

    return acc.reshape(-1)[:count].copy()


def direct_terms(coeffs, t: float) -> np.ndarray:
    """Return the individual terms c_n * n^(-i t), n = 1..N."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    logn = np.log(np.arange(1, coeffs.shape[0] + 1, dtype=np.float64))
    return coeffs * np.exp(-1j * t * logn)


def fsum_complex(terms) -> complex:
    terms = np.asarray(terms, dtype=np.complex128)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))
