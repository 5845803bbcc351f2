from pathlib import Path

import pytest
from hypothesis import settings

from dgscert.graph import parse_adjacency_text
from dgscert.qmatrix import RationalOrthogonal, parse_q_text

# exact arithmetic has no latency contract; wall-clock deadlines only flake under load
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

DATA = Path(__file__).parent / "data"


def load(name: str):
    return parse_adjacency_text((DATA / name).read_text())


@pytest.fixture(scope="session")
def g1():
    return load("g1.txt")


@pytest.fixture(scope="session")
def g2():
    return load("g2.txt")


@pytest.fixture(scope="session")
def counterexample():
    return load("counterexample.txt")


@pytest.fixture(scope="session")
def q3():
    rows, ell = parse_q_text((DATA / "q3.txt").read_text())
    return RationalOrthogonal.from_scaled(rows, ell)


# criterion number -> (passed, one-line summary); filled by test_acceptance
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, line = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {line}")
