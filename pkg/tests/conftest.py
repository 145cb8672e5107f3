import numpy as np
import pytest

from digraph_forge.rng import make_rng

_ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return make_rng(12345)


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for the acceptance summary."""

    def record(name, passed, detail):
        line = f"{name} {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

