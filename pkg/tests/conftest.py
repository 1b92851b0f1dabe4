import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lhgraph.multigraph import Multigraph

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

# lines collected by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def multigraphs(draw, max_n=7, max_mult=1, loops=False, connected=False, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + (0 if loops else 1), n)]
    mult = draw(st.lists(st.integers(0, max_mult), min_size=len(pairs), max_size=len(pairs)))
    ends = [p for p, c in zip(pairs, mult) for _ in range(c)]
    if connected:
        # hang every vertex off a random earlier one
        for v in range(1, n):
            ends.append((draw(st.integers(0, v - 1)), v))
    order = draw(st.permutations(range(len(ends)))) if ends else []
    return Multigraph([f"v{i}" for i in range(n)], [ends[i] for i in order], loops_allowed=loops)


@pytest.fixture
def rng():
    return random.Random(20240611)
