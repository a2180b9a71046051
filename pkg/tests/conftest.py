import pytest

from arrangement_lab import kernels
from arrangement_lab.arrangement import boolean
from helpers import rows


@pytest.fixture
def boolean3():
    return boolean(3)


@pytest.fixture
def gp4():
    """x=0, y=0, z=0, x+y+z=1: four planes in general position."""
    return rows([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 1], labels=["x", "y", "z", "w"])


@pytest.fixture
def concurrent3():
    """x=0, y=0, x+y=0 in dimension 2."""
    return rows([1, 0, 0], [0, 1, 0], [1, 1, 0])


@pytest.fixture
def parallel_line():
    """x=0, x=1, y=0 in dimension 2."""
    return rows([1, 0, 0], [1, 0, 1], [0, 1, 0])


@pytest.fixture
def parallel_pair():
    return rows([1, 0, 0], [1, 0, 1])


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    old = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(old)


_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    key = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE[key] = (marker.args[1], rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        text, outcome = _ACCEPTANCE[key]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {key:>2}. {text}")
