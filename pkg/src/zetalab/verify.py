"""Named invariant checks, grouped into a fast and a full suite.

Each check returns ``(passed, detail)``.  A check that raises counts as a
failure and the exception text becomes its detail.  Library functions that
fault-injection tests may patch are looked up through their module at call
time (``bounds.g_func`` rather than a bound name).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds, dirichlet_sums, moments, perron, smoothing, zeta_eval
from .oracles import eta_zeta, zeta_series_with_tail

SUITES = ("fast", "full")

# (sigma, t) points checked against the eta-series oracle
ACCURACY_POINTS = (
    (0.5, 0.0), (0.5, 1.0), (0.5, 14.134725141734693), (0.5, 21.02203963877155),
    (0.5, 50.0), (0.5, 100.0), (0.5, 250.5), (0.5, 500.0), (0.5, 777.0), (0.5, 1000.0),
    (0.6, 3.0), (0.75, 40.0), (0.75, -321.5), (0.9, 123.4), (1.1, 0.0),
    (1.25, 60.0), (1.5, -10.0), (2.0, 3.0), (3.0, 200.0), (5.0, 1.0),
)
ACCURACY_TOL = 1e-9

# regression pins, first computed by this library and cross-checked in tests
R_PINS = {
    10.5: (5.841114234922284, 10.074878772058957),
    100.5: (10.444234075553084, 14.422777035118635),
    1000.5: (15.049383637780386, 20.412620833032157),
}
R_PIN_TOL = 1e-12

PERRON_SAMPLE = tuple((Y, t) for Y in (10.5, 100.5) for t in (0.0, 5.0, 20.0))
G_JUMP_AT_10 = 0.1 - math.log(math.log(10.0))


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    module: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "module": self.module, "passed": self.passed, "detail": self.detail}


_CHECKS: list = []


def check(module: str, full_only: bool = False):
    def register(fn):
        _CHECKS.append((fn.__name__, module, full_only, fn))
        return fn
    return register


def check_names(suite: str = "fast") -> list[str]:
    _suite_ok(suite)
    return [name for name, _, full_only, _ in _CHECKS if suite == "full" or not full_only]


def _suite_ok(suite):
    if suite not in SUITES:
        raise ValueError(f"suite must be one of {SUITES}, got {suite!r}")


def run_suite(suite: str = "fast", stop_at_first: bool = False) -> list[CheckOutcome]:
    _suite_ok(suite)
    out = []
    for name, module, full_only, fn in _CHECKS:
        if full_only and suite != "full":
            continue
        try:
            passed, detail = fn()
        except Exception as exc:  # a crash inside a check is a failed check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        out.append(CheckOutcome(name, module, bool(passed), detail))
        if stop_at_first and not passed:
            break
    return out


def first_failure(outcomes) -> CheckOutcome | None:
    return next((o for o in outcomes if not o.passed), None)


# ---------------------------------------------------------------- zeta_eval

@check("zeta_eval")
def zeta_conjugate_symmetry():
    worst = 0.0
    for sigma in (0.5, 0.8, 1.3, 2.5):
        for t in (0.5, 7.0, 33.3, 410.0, 2500.0):
            a = zeta_eval.eval_zeta(complex(sigma, t))
            b = zeta_eval.eval_zeta(complex(sigma, -t))
            excess = abs(a.value - b.value.conjugate()) / (2 * max(a.err, b.err))
            worst = max(worst, excess)
    return worst <= 1.0, f"max |z(-t) - conj z(t)| / (2 err) = {worst:.3g}"


@check("zeta_eval")
def hardy_realness():
    worst = 0.0
    for t in np.linspace(0.0, 1000.0, 200):
        z = zeta_eval.hardy_z(float(t))
        worst = max(worst, abs(z.value.imag) / max(1e-8, 2 * z.err))
    return worst <= 1.0, f"max |Im Z| / max(1e-8, 2 err) = {worst:.3g}"


@check("zeta_eval")
def zeta_series_consistency():
    worst = 0.0
    for sigma in (1.5, 2.0, 3.5):
        for t in (0.0, 2.0, 9.5, 30.0):
            r = zeta_eval.eval_zeta(complex(sigma, t))
            ref, bound = zeta_series_with_tail(complex(sigma, t), 4000)
            worst = max(worst, abs(r.value - ref) / (r.err + bound))
    return worst <= 1.0, f"max |zeta - series| / (err + tail bound) = {worst:.3g}"


@check("zeta_eval")
def zeta_accuracy_regression():
    worst = 0.0
    for sigma, t in ACCURACY_POINTS:
        s = complex(sigma, t)
        worst = max(worst, abs(zeta_eval.eval_zeta(s).value - eta_zeta(s)))
    return worst <= ACCURACY_TOL, f"max deviation from eta oracle = {worst:.3g}"


# ----------------------------------------------------------- dirichlet_sums

@check("dirichlet_sums")
def zsum_triangle_bound():
    bad = [(Y, t) for Y in (1, 2.5, 37, 1000.7) for t in (0.0, 1.0, 123.0, -5e4)
           if abs(dirichlet_sums.zsum_direct(Y, t)) > math.floor(Y) * (1 + 1e-15)]
    return not bad, f"violations: {bad}" if bad else "|sum| <= floor(Y) everywhere"


@check("dirichlet_sums")
def zsum_conjugate():
    worst = 0.0
    for Y in (10, 999.5, 5000):
        for t in (0.3, 77.0, 1e4):
            a = dirichlet_sums.zsum_direct(Y, t)
            b = dirichlet_sums.zsum_direct(Y, -t)
            worst = max(worst, abs(a - b.conjugate()) / max(abs(a), 1e-300))
    return worst <= 1e-12, f"max relative conjugate mismatch = {worst:.3g}"


@check("dirichlet_sums")
def batch_direct_equivalence():
    worst = 0.0
    for Y in (100, 1000, 10000):
        grid = dirichlet_sums.Grid.spanning(1000.0, 2000.0, 200)
        batch = dirichlet_sums.zsum_batch(Y, grid)
        for t, v in zip(grid.points(), batch):
            d = dirichlet_sums.zsum_direct(Y, float(t))
            worst = max(worst, abs(v - d) / max(abs(d), 1.0))
    return worst <= 1e-9, f"max relative batch/direct deviation = {worst:.3g}"


@check("dirichlet_sums")
def smoothed_sharp_difference():
    worst = 0.0
    for Y, U in ((100, 10), (1000, 10), (1000, 64), (250.5, 3)):
        cut = smoothing.build_cutoff(U)
        limit = 2 * Y / U + 2
        for t in (0.0, 10.0, 500.0):
            diff = abs(dirichlet_sums.zsum_direct(Y, t) - dirichlet_sums.zsum_smoothed(Y, t, cut))
            worst = max(worst, diff / limit)
    return worst <= 1.0, f"max |sharp - smoothed| / (2Y/U + 2) = {worst:.3g}"


# ---------------------------------------------------------------- smoothing

@check("smoothing")
def cutoff_range_support_plateau():
    problems = []
    for U in (2.5, 10.0, 100.0):
        cut = smoothing.build_cutoff(U)
        x = np.linspace(-0.5, 1.5, 10000)
        v = cut(x)
        if np.any(v < 0) or np.any(v > 1):
            problems.append(f"U={U}: range")
        if np.any(v[(x <= 0) | (x >= 1)] != 0):
            problems.append(f"U={U}: support")
        a, b = cut.plateau
        inner = (x > a) & (x < b)
        if np.any(v[inner] != 1):
            problems.append(f"U={U}: plateau")
    return not problems, "; ".join(problems) or "range, support and plateau hold"


@check("smoothing")
def cutoff_monotone():
    problems = []
    for U in (2.5, 10.0, 100.0):
        cut = smoothing.build_cutoff(U)
        layer = np.linspace(0.0, 1.0 / U, 5000)
        if np.any(np.diff(cut(layer)) < 0):
            problems.append(f"U={U}: left layer decreases")
        right = np.linspace(1.0 - 1.0 / U, 1.0, 5000)
        if np.any(np.diff(cut(right)) > 0):
            problems.append(f"U={U}: right layer increases")
    return not problems, "; ".join(problems) or "monotone on both layers"


MELLIN_TAUS = (10.0, 30.0, 100.0, 300.0)


def mellin_decay_ratios():
    samples = [complex(0.5, tau) for tau in MELLIN_TAUS]
    ratios = {}
    for i in (1, 2, 3):
        k16 = smoothing.decay_envelope_check(smoothing.build_cutoff(16.0), i, samples).ratio
        k32 = smoothing.decay_envelope_check(smoothing.build_cutoff(32.0), i, samples).ratio
        ratios[i] = (k16, k32, k32 / k16)
    return ratios


@check("smoothing")
def mellin_decay_uniformity():
    ratios = mellin_decay_ratios()
    ok = all(math.isfinite(k16) and math.isfinite(k32) and 0.5 < r < 2.0 for k16, k32, r in ratios.values())
    return ok, ", ".join(f"K{i}(32)/K{i}(16)={r[2]:.3f}" for i, r in ratios.items())


@check("smoothing")
def mellin_quadrature_convergence():
    worst = 0.0
    for U in (4.0, 16.0, 64.0):
        cut = smoothing.build_cutoff(U)
        for s in (0.5, 0.5 + 10j, 0.5 + 300j, 1.0 + 30j, 2.0 - 7j):
            worst = max(worst, smoothing.mellin_transform(cut, s).err)
    return worst < 1e-10, f"max step-halving change = {worst:.3g}"


@check("smoothing")
def diff_mass_bounds():
    cases = [(100, 10, 22.0), (100, 200, 2.0)]
    bad = [(Y, U, smoothing.diff_mass(Y, smoothing.build_cutoff(U))) for Y, U, lim in cases
           if smoothing.diff_mass(Y, smoothing.build_cutoff(U)) > lim]
    return not bad, f"violations: {bad}" if bad else "mass within 2Y/U + 2"


# ------------------------------------------------------------------ moments

@check("moments")
def moment_trivial_length():
    bad = []
    for m in (0.5, 1.0, 2.5):
        for T in (100.0, 1234.5):
            v = moments.integrate_moment(moments.MomentSpec(m, T, 1.0)).value
            if abs(v - T) > 1e-9 * T:
                bad.append((m, T, v))
    return not bad, f"S_m(T,1) != T at {bad}" if bad else "S_m(T,1) = T"


@check("moments")
def moment_refinement():
    worst = 0.0
    for m, T, Y in ((1.0, 2000.0, 50.0), (2.5, 1000.0, 30.0), (1.25, 1000.0, 30.0)):
        r = moments.integrate_moment(moments.MomentSpec(m, T, Y))
        worst = max(worst, r.err / r.value)
    return worst < 0.02, f"max relative half-step change = {worst:.3g}"


def _holder_margins(T=1000.0, Y=30.0, pairs=((1.0, 2.0), (1.25, 2.0), (2.0, 1.5))):
    out = {}
    for m, n in pairs:
        s_m = moments.integrate_moment(moments.MomentSpec(m, T, Y))
        s_mn = moments.integrate_moment(moments.MomentSpec(m * n, T, Y))
        rhs = bounds.holder_reduce(m, n, s_mn.value, T)
        rhs_err = rhs * s_mn.err / (n * s_mn.value)
        out[(m, n)] = (s_m.value, rhs, s_m.err + rhs_err)
    return out


@check("moments")
def holder_consistency():
    margins = _holder_margins()
    ok = all(lhs <= rhs + 3 * err for lhs, rhs, err in margins.values())
    return ok, ", ".join(f"(m,n)={k}: S_m/bound={v[0] / v[1]:.4f}" for k, v in margins.items())


@check("moments")
def power_mean_ordering():
    T, Y = 1000.0, 30.0
    prev = None
    for m in (0.5, 1.0, 1.5, 2.0, 3.0):
        r = moments.integrate_moment(moments.MomentSpec(m, T, Y))
        mean = (r.value / T) ** (1 / (2 * m))
        slack = mean * r.err / (2 * m * r.value)
        if prev is not None and mean + slack < prev[1] - prev[2]:
            return False, f"power mean decreases between m={prev[0]} and m={m}"
        prev = (m, mean, slack)
    return True, "power means nondecreasing in m"


@check("moments")
def sigma_two_trivial_bound():
    T = 500.0
    r = moments.sigma_moment((2.0,), (0.0,), 2.0, T)
    bound = moments.sigma_trivial_bound((2.0,), 2.0, T)
    return r.value <= bound, f"value/bound = {r.value / bound:.4f}"


# ------------------------------------------------------------------- bounds

@check("bounds")
def g_continuity():
    problems = []
    for T in (math.e ** 2, 50.0, 700.0):
        p = bounds.EnvelopeParams(T)
        log_T = p.log_T
        x0 = 1.0 / log_T
        if bounds.g_func(x0, p) != log_T or bounds.g_func(0.5 * x0, p) != log_T:
            problems.append(f"g != log T on [0, 1/log T] (T={T:g})")
        right = bounds.g_func(math.nextafter(x0, 1.0), p)
        if abs(right - log_T) > 1e-12 * log_T:
            problems.append(f"jump at 1/log T: {right} vs {log_T}")
        left10 = bounds.g_func(10.0, p)
        right10 = bounds.g_func(math.nextafter(10.0, 11.0), p)
        if left10 != 0.1 or abs((left10 - right10) - G_JUMP_AT_10) > 1e-9:
            problems.append(f"x=10: g(10)={left10}, g(10+)={right10}")
        x_top = math.exp(T)
        at = bounds.g_func(x_top, p)
        below = bounds.g_func(math.nextafter(x_top, 0.0), p)
        if abs(at - log_T) > 1e-12 * log_T or abs(below - log_T) > 1e-12 * log_T:
            problems.append(f"x=e^T: g={at}, g(-)={below}, log T={log_T}")
    for x in (1.0, 2.0, 5.0):
        if bounds.g_func(x, bounds.EnvelopeParams(50.0)) != 1.0 / x:
            problems.append(f"g({x}) != 1/{x}")
    return not problems, "; ".join(problems) or "branches continuous; pinned jump at x=10"


@check("bounds")
def g_envelope_maximum():
    p = bounds.EnvelopeParams.from_log(100.0)
    xs = np.concatenate([[0.0], np.geomspace(1e-6, 1e40, 2000)])
    vals = [bounds.g_func(float(x), p) for x in xs]
    top = max(vals)
    first = bounds.g_func(0.0, p)
    ok = top == 100.0 and first == top and min(vals) > 0
    return ok, f"max g = {top}, g(0) = {first}, min g = {min(vals):.4g}"


@check("bounds")
def rhs_permutation_symmetry():
    T = 5000.0
    a, b = (2.0, 1.0, 0.5), (0.0, 3.0, -40.0)
    base = bounds.ShiftConfig(a, b)
    worst = 0.0
    for perm in ((1, 0, 2), (2, 1, 0), (1, 2, 0)):
        cfg = bounds.ShiftConfig(tuple(a[i] for i in perm), tuple(b[i] for i in perm))
        for fn in (bounds.curran_rhs, bounds.corollary_rhs):
            ref = fn(base, T)
            worst = max(worst, abs(fn(cfg, T) - ref) / ref)
    return worst <= 1e-12, f"max relative change under permutation = {worst:.3g}"


@check("bounds")
def main_rhs_monotone():
    problems = []
    for m in (0.5, 1.0, 2.5, 4.0):
        for T in (10.0, 1e3, 1e5):
            for Y in (1.0, 10.0, 300.0):
                base = bounds.main_rhs(m, T, Y)
                if not bounds.main_rhs(m, T * 1.01, Y) > base:
                    problems.append(f"T at {(m, T, Y)}")
                if not bounds.main_rhs(m, T, Y * 1.01) > base:
                    problems.append(f"Y at {(m, T, Y)}")
                if Y * math.log(T) ** (2 * (m - 1)) > 1.05 and not bounds.main_rhs(m + 0.01, T, Y) > base:
                    problems.append(f"m at {(m, T, Y)}")
    return not problems, "; ".join(problems) or "increasing in T, Y and m"


@check("bounds")
def fit_exponent_synthetic():
    T = np.geomspace(1e3, 1e9, 7)
    ll = np.log(np.log(T))
    y = math.log(3.7) + 2.25 * ll
    res = bounds.fit_exponent(zip(ll, y))
    return abs(res.slope - 2.25) <= 1e-6, f"fitted slope = {res.slope!r}"


# ------------------------------------------------------------------- perron

@check("perron")
def r1_r2_pinned():
    worst = 0.0
    for Y, (r1, r2) in R_PINS.items():
        cfg = perron.PerronConfig(Y)
        worst = max(worst, abs(perron.r1_bound(cfg) - r1) / r1, abs(perron.r2_bound(cfg) - r2) / r2)
    return worst <= R_PIN_TOL, f"max relative drift from pins = {worst:.3g}"


@check("perron", full_only=True)
def perron_residual_sample():
    ratios = {(Y, t): perron.perron_residual(perron.PerronConfig(Y, t)).ratio for Y, t in PERRON_SAMPLE}
    worst = max(ratios.values())
    return worst <= 10.0, f"max |direct - truncated| / (r1 + r2) = {worst:.4g}"


@check("perron", full_only=True)
def contour_identity():
    worst = 0.0
    for Y, t in PERRON_SAMPLE:
        gap, err, _ = perron.contour_identity_gap(perron.PerronConfig(Y, t))
        worst = max(worst, gap / (3 * err))
    return worst <= 1.0, f"max gap / (3 x combined quadrature error) = {worst:.3g}"


@check("perron", full_only=True)
def perron_leg_conjugate_symmetry():
    worst = 0.0
    for Y, t in ((10.5, 5.0), (100.5, 20.0)):
        a = perron.contour_decomposition(perron.PerronConfig(Y, t))
        b = perron.contour_decomposition(perron.PerronConfig(Y, -t))
        pairs = ((a.vertical_half, b.vertical_half), (a.horiz_lower, b.horiz_upper),
                 (a.horiz_upper, b.horiz_lower), (a.residue, b.residue))
        scale = max(abs(x) for x, _ in pairs)
        worst = max(worst, max(abs(x - y.conjugate()) for x, y in pairs) / scale)
    return worst <= 1e-9, f"max relative leg mismatch under t -> -t = {worst:.3g}"


# ------------------------------------------------------ classical mean values

@check("moments", full_only=True)
def mean_square_check():
    T, Y = 2000.0, 50.0
    r = moments.integrate_moment(moments.MomentSpec(1.0, T, Y))
    ratio = r.value / ((2 * T - T) * Y)
    ok = 0.9 <= ratio <= 1.1 and r.err / r.value < 0.02
    return ok, f"S_1/(T Y) = {ratio:.5f}, refinement change {r.err / r.value:.2e}"


@check("moments", full_only=True)
def second_moment_growth():
    details, ok = [], True
    for T in (2000.0, 5000.0):
        r = moments.shifted_moment(bounds.ShiftConfig((2.0,), (0.0,)), T)
        mean = r.value / T
        target = math.log(T * math.sqrt(2.0))
        ok = ok and abs(mean / target - 1.0) <= 0.2 and r.err / r.value < 0.02
        details.append(f"T={T:g}: mean={mean:.4f} vs log(T sqrt 2)={target:.4f}")
    return ok, "; ".join(details)


@check("moments", full_only=True)
def window_sign_symmetry():
    T, E = 2000.0, 10.0
    plus = moments.window_moment(2, T, E, +1)
    minus = moments.window_moment(2, T, E, -1, t_shift=E)
    gap = abs(plus.value - minus.value)
    return gap <= plus.err + minus.err, f"|plus - minus| = {gap:.3g}, combined err = {plus.err + minus.err:.3g}"
