import pytest

from qwperiod.exact import ExactScalar


@pytest.fixture
def inv_sqrt2():
    return ExactScalar(1, 0, 0, 0, 1)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
