import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from netident import NetworkPattern

sys.path.insert(0, str(Path(__file__).parent))

EXAMPLE_A_EDGES = [(3, 1), (4, 1), (1, 2), (3, 2), (4, 2), (1, 5)]
EXAMPLE_B_EDGES = [(3, 1), (4, 1), (1, 2), (3, 2), (4, 2), (2, 3), (1, 5)]


@pytest.fixture
def example_a():
    return NetworkPattern(5, EXAMPLE_A_EDGES)


@pytest.fixture
def example_b():
    return NetworkPattern(5, EXAMPLE_B_EDGES)


@pytest.fixture
def rng():
    return np.random.default_rng(20221014)


@st.composite
def patterns(draw, min_n=2, max_n=8):
    """Random patterns without self-loops or isolated nodes."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(j, i) for j in range(1, n + 1) for i in range(1, n + 1) if i != j]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {p for p, m in zip(pairs, mask) if m}
    # attach each isolated node to its successor so the draw stays valid
    touched = {v for e in edges for v in e}
    for v in range(1, n + 1):
        if v not in touched:
            edges.add((v, v % n + 1))
            touched |= {v, v % n + 1}
    return NetworkPattern(n, edges)


# acceptance criterion reporting: one line per criterion in the terminal summary
_CRITERIA: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[report.nodeid.split("::")[-1]] = report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _CRITERIA.items():
        terminalreporter.write_line(f"{'PASS' if outcome == 'PASSED' else 'FAIL'}  {name}")
