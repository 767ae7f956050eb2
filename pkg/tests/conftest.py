import math

import pytest

from cavityswitch import ModelParams

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    """Collects one pass/fail line per acceptance criterion for the terminal summary."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def fig2a():
    # omega_2 - omega_a = 2, xi = 2, g_b = 1, n = 1, delta_b = 0
    return ModelParams(omega_a=0.0, omega_b=2.0, omega_2=2.0, omega_3=4.0, xi=2.0, g_b=1.0, n=1)


@pytest.fixture
def fig2e(fig2a):
    return fig2a.replace(n=0)


@pytest.fixture
def generic():
    return ModelParams(omega_a=0.3, omega_b=1.7, omega_2=1.1, omega_3=3.2, xi=1.3, g_a=0.9, g_b=0.7, n=3)


K_RES = 2 * math.pi / 3
