import pytest


@pytest.fixture
def eps_grid():
    import numpy as np

    return np.linspace(0.01, 0.99, 99)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
