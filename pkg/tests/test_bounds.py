import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab.bounds import (
    PROP24_CONFIG,
    EnvelopeParams,
    ShiftConfig,
    corollary_rhs,
    curran_rhs,
    fit_exponent,
    g_func,
    holder_reduce,
    main_rhs,
    prop24_rhs,
    prop24_terms,
)
from zetalab.errors import FitError, PreconditionError
from zetalab.results import BoundReport
from zetalab.zeta_eval import eval_zeta_one_line

E100 = EnvelopeParams.from_log(100.0)


def test_g_branch_examples():
    assert g_func(0.005, E100) == 100.0
    assert g_func(2.0, E100) == 0.5
    assert g_func(100.0, E100) == pytest.approx(1.5271796258079011, abs=1e-12)


def test_g_tie_break_at_ten_uses_first_branch():
    assert g_func(10.0, E100) == 0.1
    assert g_func(math.nextafter(10.0, 11.0), E100) == pytest.approx(math.log(math.log(10.0)), abs=1e-12)


def test_g_accepts_plain_T():
    assert g_func(2.0, 1000.0) == 0.5
    assert g_func(0.0, 1000.0) == pytest.approx(math.log(1000.0))


def test_g_top_branch():
    p = EnvelopeParams(30.0)
    assert g_func(math.exp(31.0), p) == p.log_T
    assert g_func(math.exp(29.0), p) == pytest.approx(math.log(29.0))


def test_g_rejects_negative_x():
    with pytest.raises(PreconditionError):
        g_func(-1.0, E100)


def test_envelope_params_validation():
    with pytest.raises(PreconditionError):
        EnvelopeParams(2.0)
    with pytest.raises(PreconditionError):
        EnvelopeParams(-1.0)
    huge = EnvelopeParams.from_log(1e4)
    assert huge.T == math.inf and huge.log_T == 1e4
    assert g_func(1e300, huge) == pytest.approx(math.log(math.log(1e300)))


def test_g_max_on_first_branch_for_large_T():
    xs = np.concatenate([[0.0], np.geomspace(1e-8, 1e300, 3000)])
    vals = [g_func(float(x), E100) for x in xs]
    assert max(vals) == 100.0
    assert vals[0] == 100.0
    assert min(vals) > 0


def test_shift_config_validation():
    with pytest.raises(PreconditionError):
        ShiftConfig((), ())
    with pytest.raises(PreconditionError):
        ShiftConfig((1.0, 2.0), (0.0,))
    with pytest.raises(PreconditionError):
        ShiftConfig((-1.0,), (0.0,))
    cfg = ShiftConfig([1, 2], [0, 3])
    assert cfg.a == (1.0, 2.0) and cfg.k == 2
    assert list(cfg.pairs()) == [(0, 1)]


def test_single_factor_rhs_is_empty_product():
    T = 5000.0
    cfg = ShiftConfig((3.0,), (0.0,))
    expected = T * math.log(T) ** (9 / 4)
    assert curran_rhs(cfg, T) == pytest.approx(expected, rel=1e-14)
    assert corollary_rhs(cfg, T) == pytest.approx(expected, rel=1e-14)


def test_corollary_rhs_example():
    T = math.exp(100.0)
    cfg = ShiftConfig((2.0, 2.0), (0.0, 1.0))
    assert corollary_rhs(cfg, T) == pytest.approx(T * 1e4, rel=1e-12)


def test_curran_degenerate_shift():
    T = 1e4
    cfg = ShiftConfig((2.0, 2.0), (0.0, 0.0))
    z = abs(eval_zeta_one_line(0.0, T).value)
    assert curran_rhs(cfg, T) == pytest.approx(T * math.log(T) ** 2 * z ** 2, rel=1e-13)
    assert z <= 2 * math.log(T)


def test_curran_finite_at_e10():
    v = curran_rhs(ShiftConfig((2.0, 2.0), (0.0, 5.0)), math.exp(10.0))
    assert math.isfinite(v) and v > 0


def test_corollary_dominates_curran_up_to_measured_constant():
    T = 1e4
    ks = []
    for beta in (0.01, 0.5, 2.0, 9.0, 50.0, 400.0):
        z = abs(eval_zeta_one_line(beta, T).value)
        ks.append(z / g_func(beta, T))
    K = max(ks)
    # g >= 1/10 on the 1/x branch, so K is at most 10 max|zeta| there; measured about 12
    zmax = max(abs(eval_zeta_one_line(b, T).value) for b in np.linspace(1.0, 10.0, 50))
    assert K <= 10 * zmax * (1 + 1e-9)
    for beta in (0.01, 2.0, 50.0):
        cfg = ShiftConfig((1.0, 1.0), (0.0, beta))
        assert corollary_rhs(cfg, T) >= curran_rhs(cfg, T) / K ** 0.5 * (1 - 1e-12)


def test_main_rhs_examples():
    T = math.exp(10.0)
    assert main_rhs(3.0, T, 100.0) == pytest.approx(T * 1e6 * 1e4, rel=1e-13)
    assert main_rhs(1.0, 1234.0, 56.0) == pytest.approx(1234.0 * 56.0, rel=1e-15)
    assert main_rhs(2.5, 1e4, 1e2) == pytest.approx(1e9 * math.log(1e4) ** 2.25, rel=1e-14)
    with pytest.raises(PreconditionError):
        main_rhs(0.0, 10.0, 1.0)


def test_prop24_example():
    T = math.exp(10.0)
    first, second = prop24_terms(3.0, T, 10.0)
    llE = math.log(math.log(10.0))
    assert first == pytest.approx(T * 1e4 * 1e3 * llE, rel=1e-13)
    assert second == pytest.approx(T * 1e3 * 1e6 * llE * math.log(10.0), rel=1e-13)
    total = prop24_rhs(3.0, T, 10.0)
    assert total >= first and total >= second
    assert "set to 1" in PROP24_CONFIG
    with pytest.raises(PreconditionError):
        prop24_rhs(3.0, T, 5.0)


def test_prop24_E_scaling():
    m, T, E = 3.0, 1e4, 20.0
    ratio = prop24_rhs(m, T, 2 * E) / prop24_rhs(m, T, E)
    ll_adjust = math.log(math.log(2 * E)) / math.log(math.log(E))
    assert 2 ** 3 * 0.9 <= ratio <= 2 ** (2 * m) * 1.1 * ll_adjust


def test_holder_examples():
    T, c, m, n = 1000.0, 1.7, 1.5, 2.0
    assert holder_reduce(m, n, T * c ** (2 * m * n), T) == pytest.approx(T * c ** (2 * m), rel=1e-13)
    assert holder_reduce(1.0, 1.0 + 1e-9, 5e4, T) == pytest.approx(5e4, rel=1e-6)
    with pytest.raises(PreconditionError):
        holder_reduce(1.0, 1.0, 10.0, T)
    with pytest.raises(PreconditionError):
        holder_reduce(1.0, 2.0, -1.0, T)


def test_fit_examples():
    r = fit_exponent([(0.0, 1.0), (1.0, 3.0), (2.0, 5.0), (3.0, 7.0)])
    assert r.slope == pytest.approx(2.0) and r.intercept == pytest.approx(1.0)
    assert r.residual == pytest.approx(0.0, abs=1e-14)
    r = fit_exponent([(1, 1), (2, 3), (3, 5)])
    assert (r.slope, r.intercept) == (pytest.approx(2.0), pytest.approx(-1.0))


def test_fit_synthetic_moments():
    T = np.geomspace(1e3, 1e12, 8)
    Y, m, C = 30.0, 2.5, 0.37
    S = C * T * Y ** m * np.log(T) ** 2.25
    pts = zip(np.log(np.log(T)), np.log(S / (T * Y ** m)))
    assert fit_exponent(pts).slope == pytest.approx(2.25, abs=1e-6)


def test_fit_errors():
    with pytest.raises(FitError):
        fit_exponent([(1, 2), (2, 3)])
    with pytest.raises(FitError):
        fit_exponent([(1, 2), (1, 3), (1, 4)])
    with pytest.raises(FitError):
        fit_exponent([(1, 2), (2, 3), (2, 4)])
    with pytest.raises(FitError):
        fit_exponent([(1, 2), (2, math.nan), (3, 4)])


def test_bound_report_invariants():
    rep = BoundReport(3.0, 4.0, config="x")
    assert rep.ratio == 0.75
    assert rep.as_dict()["ratio"] == 0.75
    with pytest.raises(ValueError):
        BoundReport(1.0, 0.0)
    with pytest.raises(ValueError):
        BoundReport(-1.0, 1.0)


@settings(max_examples=60, deadline=None)
@given(x=st.floats(0.0, 1e300), log_T=st.floats(1.01, 700.0))
def test_property_g_positive_and_capped(x, log_T):
    p = EnvelopeParams.from_log(log_T)
    v = g_func(x, p)
    assert v > 0
    if math.log(math.log(max(x, 10.0))) <= log_T:
        assert v <= log_T * (1 + 1e-15)


@settings(max_examples=20, deadline=None)
@given(a=st.lists(st.floats(0.0, 3.0), min_size=2, max_size=4),
       data=st.data())
def test_property_rhs_permutation_symmetry(a, data):
    b = data.draw(st.lists(st.floats(-100.0, 100.0), min_size=len(a), max_size=len(a)))
    T = 3000.0
    base_c = corollary_rhs(ShiftConfig(a, b), T)
    base_r = curran_rhs(ShiftConfig(a, b), T)
    for perm in list(permutations(range(len(a))))[:6]:
        cfg = ShiftConfig([a[i] for i in perm], [b[i] for i in perm])
        assert corollary_rhs(cfg, T) == pytest.approx(base_c, rel=1e-12)
        assert curran_rhs(cfg, T) == pytest.approx(base_r, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(m=st.floats(0.1, 5.0), T=st.floats(3.0, 1e8), Y=st.floats(1.0, 1e4))
def test_property_main_rhs_monotone(m, T, Y):
    base = main_rhs(m, T, Y)
    assert main_rhs(m, T * 1.01, Y) > base
    assert main_rhs(m, T, Y * 1.01) > base
    if Y * math.log(T) ** (2 * (m - 1)) > 1.01:
        assert main_rhs(m + 1e-3, T, Y) > base


@settings(max_examples=40, deadline=None)
@given(slope=st.floats(-5, 5), icpt=st.floats(-10, 10),
       xs=st.lists(st.floats(-10, 10), min_size=3, max_size=10, unique=True))
def test_property_fit_recovers_exact_lines(slope, icpt, xs):
    if max(xs) - min(xs) < 1e-3:
        return
    r = fit_exponent((x, slope * x + icpt) for x in xs)
    assert r.slope == pytest.approx(slope, abs=1e-8)
    assert r.residual >= 0
