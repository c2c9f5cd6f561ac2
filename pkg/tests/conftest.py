import re

import pytest

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    match = re.search(r"test_ac(\d+)_", report.nodeid)
    if not match:
        return
    n = int(match.group(1))
    detail = dict(report.user_properties).get("detail", "")
    if report.when == "call" or report.outcome != "passed":
        prev = _ACCEPTANCE.get(n)
        passed = report.outcome == "passed" and (prev is None or prev[0])
        _ACCEPTANCE[n] = (passed, detail or (prev[1] if prev else ""))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"AC{n:<2} {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def detail(request):
    """Attach a one-line measurement summary to the running test."""
    def record(text):
        request.node.user_properties.append(("detail", text))
    return record
