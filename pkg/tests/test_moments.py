import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import cumulative_simpson, simpson

from zetalab.bounds import ShiftConfig, holder_reduce, prop24_rhs
from zetalab.dirichlet_sums import Grid
from zetalab.errors import NumericalFailure, PreconditionError
from zetalab.moments import (
    MomentSpec,
    QuadParams,
    fine_grid,
    integrate_moment,
    max_step_for_length,
    refined_trapezoid,
    shifted_moment,
    sigma_moment,
    sigma_trivial_bound,
    trapezoid,
    window_moment,
)
from zetalab.smoothing import build_cutoff, diff_mass
from zetalab.zeta_eval import eval_zeta_grid


@pytest.mark.parametrize("m", [0.5, 1.0, 3.0])
def test_trivial_length_gives_T(m):
    r = integrate_moment(MomentSpec(m, 1000.0, 1.0))
    assert r.value == pytest.approx(1000.0, rel=1e-8)


def test_two_term_sum_against_antiderivative():
    T = 1000.0
    r = integrate_moment(MomentSpec(1.0, T, 2.0))
    # |1 + 2^(-it)|^2 = 2 + 2 cos(t log 2)
    L = math.log(2.0)
    exact = 2 * T + 2 * (math.sin(2 * T * L) - math.sin(T * L)) / L
    assert abs(r.value - 2 * T) <= 6
    assert abs(r.value - exact) <= max(r.err, 1e-9 * exact)


def test_mean_value_at_Y_50():
    T, Y = 2000.0, 50.0
    r = integrate_moment(MomentSpec(1.0, T, Y))
    assert 0.9 <= r.value / (T * Y) <= 1.1
    finer = integrate_moment(MomentSpec(1.0, T, Y), QuadParams(dt=max_step_for_length(Y) / 4))
    assert abs(finer.value - r.value) / r.value < 0.02


def test_smoothed_and_rough_mean_values():
    T, Y, U = 2000.0, 200.0, 10.0
    cut = build_cutoff(U)
    n = np.arange(1, 201)
    mass_smooth = float(np.sum(cut(n / Y) ** 2))
    smooth = integrate_moment(MomentSpec(1.0, T, Y, "smoothed", cut))
    rough = integrate_moment(MomentSpec(1.0, T, Y, "rough", cut))
    assert smooth.value / (T * mass_smooth) == pytest.approx(1.0, abs=0.1)
    assert rough.value / (T * diff_mass(Y, cut)) == pytest.approx(1.0, abs=0.15)


def test_spec_validation():
    with pytest.raises(PreconditionError):
        MomentSpec(0.0, 1000.0, 10.0)
    with pytest.raises(PreconditionError):
        MomentSpec(1.0, 50.0, 10.0)
    with pytest.raises(PreconditionError):
        MomentSpec(1.0, 1000.0, 0.5)
    with pytest.raises(PreconditionError):
        MomentSpec(1.0, 1000.0, 10.0, "fancy")
    with pytest.raises(PreconditionError):
        MomentSpec(1.0, 1000.0, 10.0, "smoothed")


def test_standing_assumption():
    MomentSpec(1.0, 1000.0, 950.0).check_standing_assumption()
    with pytest.raises(PreconditionError):
        MomentSpec(1.0, 1000.0, 951.0).check_standing_assumption()


def test_step_above_aliasing_limit_rejected():
    with pytest.raises(PreconditionError):
        integrate_moment(MomentSpec(1.0, 1000.0, 100.0), QuadParams(dt=0.2))


def test_fine_grid_has_even_panels():
    g = fine_grid(1000.0, 2000.0, 0.3)
    assert (g.count - 1) % 2 == 0
    assert g.dt <= 0.15
    assert g.stop == pytest.approx(2000.0)


def test_trapezoid_exact_on_linear():
    x = np.linspace(0.0, 2.0, 9)
    assert trapezoid(3 * x + 1, x[1] - x[0]) == pytest.approx(8.0, abs=1e-15)


def test_refinement_disagreement_raises_with_values():
    vals = np.array([0.0, 10.0, 0.0, 10.0, 0.0])
    with pytest.raises(NumericalFailure, match="fine=.*coarse="):
        refined_trapezoid(vals, 1.0, 0.05)
    with pytest.raises(ValueError):
        refined_trapezoid(np.ones(4), 1.0, 0.05)


def test_shifted_zero_exponent():
    r = shifted_moment(ShiftConfig((0.0,), (0.0,)), 1000.0)
    assert r.value == pytest.approx(1000.0, rel=1e-12)


def test_shifted_symmetric_in_shifts():
    a = shifted_moment(ShiftConfig((1.0, 1.0), (0.0, 3.0)), 500.0)
    b = shifted_moment(ShiftConfig((1.0, 1.0), (3.0, 0.0)), 500.0)
    assert a.value == pytest.approx(b.value, rel=1e-12)


def test_shifted_height_guard():
    with pytest.raises(PreconditionError):
        shifted_moment(ShiftConfig((1.0,), (960.0,)), 1000.0)


def test_second_moment_classical_asymptotic():
    # mean of log(t/2pi) + 2 gamma over [T, 2T] is log(2T/pi) - 1 + 2 gamma
    T = 2000.0
    r = shifted_moment(ShiftConfig((2.0,), (0.0,)), T)
    classical = math.log(2 * T / math.pi) - 1 + 2 * 0.5772156649015329
    assert r.value / T == pytest.approx(classical, rel=0.02)


def test_sigma_two_trivial_bound():
    T = 1000.0
    r = sigma_moment((2.0,), (0.0,), 2.0, T)
    assert r.value <= T * (math.pi ** 2 / 6) ** 2
    assert sigma_trivial_bound((2.0,), 2.0, T) == pytest.approx(T * (math.pi ** 2 / 6) ** 2, rel=1e-13)
    with pytest.raises(PreconditionError):
        sigma_trivial_bound((2.0,), 1.0, T)


def test_sigma_half_equals_shifted():
    cfg = ShiftConfig((2.0,), (1.0,))
    assert sigma_moment(cfg.a, cfg.b, 0.5, 300.0).value == shifted_moment(cfg, 300.0).value


def test_sigma_one_fourth_moment_refines():
    T = 2000.0
    coarse = sigma_moment((4.0,), (0.0,), 1.0, T)
    assert coarse.err / coarse.value < 0.01
    dt = max_step_for_length(2 * T) / 2
    fine = sigma_moment((4.0,), (0.0,), 1.0, T, QuadParams(dt=dt))
    assert abs(fine.value - coarse.value) / coarse.value < 0.01


def test_sigma_below_half_rejected():
    with pytest.raises(PreconditionError):
        sigma_moment((2.0,), (0.0,), 0.4, 1000.0)


def test_window_sign_symmetry():
    T, E = 2000.0, 10.0
    plus = window_moment(2, T, E, +1)
    minus = window_moment(2, T, E, -1, t_shift=E)
    assert abs(plus.value - minus.value) <= plus.err + minus.err


def test_window_matches_independent_nested_simpson():
    # reference: |zeta| on a 0.005 grid, cumulative Simpson inside, Simpson outside
    T, E, h = 200.0, 10.0, 0.005
    r = window_moment(2, T, E, +1)
    n_inner, n_outer = round(E / h), round(T / h)
    z, _ = eval_zeta_grid(0.5, Grid(T, h, n_inner + n_outer + 1))
    cum = cumulative_simpson(np.abs(z), dx=h, initial=0)
    inner = cum[n_inner:n_inner + n_outer + 1] - cum[:n_outer + 1]
    ref = simpson(inner ** 4, dx=h)
    assert abs(r.value - ref) <= r.err


def test_window_nondecreasing_in_E():
    a = window_moment(2, 500.0, 10.0)
    b = window_moment(2, 500.0, 14.0)
    assert 0 <= a.value <= b.value


def test_window_ratio_recorded():
    r = window_moment(2, 2000.0, 10.0)
    ratio = r.value / prop24_rhs(2, 2000.0, 10.0)
    assert 0 < ratio < math.inf


def test_window_preconditions():
    with pytest.raises(PreconditionError):
        window_moment(1.5, 1000.0, 10.0)
    with pytest.raises(PreconditionError):
        window_moment(2, 1000.0, 5.0)
    with pytest.raises(PreconditionError):
        window_moment(2, 1000.0, 990.0)
    with pytest.raises(PreconditionError):
        window_moment(2, 1000.0, 10.0, sign=0)


@pytest.mark.parametrize("m,n", [(1.0, 2.0), (1.25, 2.0), (2.0, 1.5)])
def test_holder_within_quadrature_error(m, n):
    T, Y = 1000.0, 30.0
    s_m = integrate_moment(MomentSpec(m, T, Y))
    s_mn = integrate_moment(MomentSpec(m * n, T, Y))
    bound = holder_reduce(m, n, s_mn.value, T)
    combined = s_m.err + bound * s_mn.err / (n * s_mn.value)
    assert s_m.value <= bound + 3 * combined


@settings(max_examples=15, deadline=None)
@given(m1=st.floats(0.25, 3.0), m2=st.floats(0.25, 3.0), Y=st.floats(2.0, 60.0))
def test_property_power_mean_ordering(m1, m2, Y):
    if m1 > m2:
        m1, m2 = m2, m1
    T = 300.0
    a = integrate_moment(MomentSpec(m1, T, Y))
    b = integrate_moment(MomentSpec(m2, T, Y))
    lhs = (a.value / T) ** (1 / (2 * m1))
    rhs = (b.value / T) ** (1 / (2 * m2))
    slack = lhs * a.err / (2 * m1 * a.value) + rhs * b.err / (2 * m2 * b.value)
    assert lhs <= rhs + slack + 1e-12 * rhs


@settings(max_examples=15, deadline=None)
@given(m=st.floats(0.1, 4.0), T=st.floats(100.0, 600.0), Y=st.floats(1.0, 80.0))
def test_property_moment_nonnegative_and_converged(m, T, Y):
    r = integrate_moment(MomentSpec(m, T, Y))
    assert r.value >= 0 and r.err >= 0
    assert r.err <= 0.05 * r.value
