import numpy as np
import pytest

from lsmimo_secrecy.system_model import reference_params
from lsmimo_secrecy.verify import random_feasible_params


@pytest.fixture
def reference():
    """Baseline scenario: N_R=100, rho=0.9, eps=0.01, unit path losses, P_S=10, W=10 kHz."""
    return reference_params()


@pytest.fixture
def feasible_sets():
    rng = np.random.default_rng(1234)
    return [random_feasible_params(rng) for _ in range(200)]


# One PASS/FAIL line per acceptance criterion, printed after the run.
_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and report.passed:
        return
    detail = dict(item.user_properties).get("detail", "")
    if report.failed and not detail:
        detail = str(call.excinfo.value).splitlines()[0] if call.excinfo else "error"
    _ACCEPTANCE[marker.args[0]] = ("PASS" if report.passed else "FAIL", marker.args[1], detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{status} criterion {number} ({title}): {detail}")
