import itertools

import pytest

from spinc_bounds.indextheory import CompleteIntersection

ACCEPTANCE_LOG: list[str] = []


def scan_family(n_max=6, r_max=3, a_max=5):
    """Every ``V^n(a_1..a_r)`` with ordered degree tuples, as used by the acceptance gate."""
    return [
        CompleteIntersection(n, degrees)
        for n in range(1, n_max + 1)
        for r in range(r_max + 1)
        for degrees in itertools.product(range(1, a_max + 1), repeat=r)
    ]


@pytest.fixture(scope="session")
def family():
    return scan_family()


@pytest.fixture(scope="session")
def small_family():
    return scan_family(4, 2, 4)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LOG


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
