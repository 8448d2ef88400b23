import numpy as np
import pytest

from pbphase.finite import FiniteSpace


@pytest.fixture(params=[0, 1, 2, 5])
def space(request):
    return FiniteSpace(request.param)


def dft_matrix(d):
    m = np.arange(d) - d // 2
    phi = 2 * np.pi * np.arange(d) / d
    return np.exp(-1j * np.outer(m, phi)) / np.sqrt(d)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
