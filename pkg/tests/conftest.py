import random

import pytest

from fixprop import example_path, load_csp
from fixprop.oracle import random_csp

ACCEPTANCE_LINES: list[str] = []
SUITE_SIZE = 500
SUITE_SEED = 20240601


def record(criterion: int, passed: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def random_suite():
    """500 random CSPs, at most 4 variables and 3 atoms per domain."""
    rng = random.Random(SUITE_SEED)
    return [random_csp(rng, max_vars=4, max_atoms=3, duplicates=0.15) for _ in range(SUITE_SIZE)]


@pytest.fixture(scope="session")
def crossword():
    return load_csp(example_path("crossword.csp"))


@pytest.fixture(scope="session")
def example1():
    return load_csp(example_path("example1.csp"))


@pytest.fixture(scope="session")
def shared_variable():
    return load_csp(example_path("shared_variable.csp"))
