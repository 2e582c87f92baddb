import sys

import pytest

from equicyclic.core import field


@pytest.fixture(params=[0, 2, 3], ids=["Q", "F2", "F3"])
def F(request):
    return field(request.param)


@pytest.fixture(scope="session")
def gauge():
    from equicyclic.fixtures import gauge_functors
    return gauge_functors(field(0))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
