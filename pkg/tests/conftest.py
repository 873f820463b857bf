import pytest
from hypothesis import strategies as st

from poikm.pperm import PartialPerm

ACCEPTANCE_LINES = []


@st.composite
def partial_perms(draw, n=None, max_degree=8):
    if n is None:
        n = draw(st.integers(1, max_degree))
    targets = draw(st.permutations(range(1, n + 1)))
    keep = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return PartialPerm(tuple(t if k else 0 for t, k in zip(targets, keep)))


@st.composite
def same_degree(draw, count, max_degree=8):
    n = draw(st.integers(1, max_degree))
    return tuple(draw(partial_perms(n=n)) for _ in range(count))


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
