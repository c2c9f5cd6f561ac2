import math

import pytest

from zetalab import bounds, verify
from zetalab.expcli import main


def test_fast_suite_passes():
    outcomes = verify.run_suite("fast")
    failed = [(o.name, o.detail) for o in outcomes if not o.passed]
    assert not failed
    assert [o.name for o in outcomes] == verify.check_names("fast")
    assert verify.first_failure(outcomes) is None


def test_suite_names():
    fast, full = verify.check_names("fast"), verify.check_names("full")
    assert set(fast) < set(full)
    assert {"perron_residual_sample", "contour_identity", "mean_square_check"} <= set(full) - set(fast)
    assert "g_continuity" in fast and "r1_r2_pinned" in fast
    with pytest.raises(ValueError):
        verify.check_names("slow")


def _swapped_g(x, p):
    # the 1/x and log log x cases tried in the wrong order
    p = bounds._params(p)
    if x <= 1.0 / p.log_T or (x > 0 and math.log(x) >= p.T):
        return p.log_T
    if x > math.e:
        return math.log(math.log(x))
    return 1.0 / x


def _log_t_last(x, p):
    p = bounds._params(p)
    if x > 0 and x <= 10.0:
        return 1.0 / x
    if x > 10.0 and math.log(x) < p.T:
        return math.log(math.log(x))
    return p.log_T


@pytest.mark.parametrize("fault", [_swapped_g, _log_t_last])
def test_branch_order_fault_is_caught(monkeypatch, capsys, fault):
    monkeypatch.setattr(bounds, "g_func", fault)
    assert main(["verify"]) == 3
    err = capsys.readouterr().err
    assert "g_continuity" in err


def test_crashing_check_counts_as_failure(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("injected")
    monkeypatch.setattr(bounds, "g_func", boom)
    outcomes = verify.run_suite("fast", stop_at_first=False)
    bad = verify.first_failure(outcomes)
    assert bad is not None and bad.module == "bounds"
    assert "injected" in bad.detail


def test_stop_at_first(monkeypatch):
    monkeypatch.setattr(bounds, "g_func", _swapped_g)
    outcomes = verify.run_suite("fast", stop_at_first=True)
    assert outcomes[-1].name == "g_continuity" and not outcomes[-1].passed
    assert all(o.passed for o in outcomes[:-1])


@pytest.mark.slow
def test_full_suite_passes():
    outcomes = verify.run_suite("full")
    assert all(o.passed for o in outcomes), [(o.name, o.detail) for o in outcomes if not o.passed]
