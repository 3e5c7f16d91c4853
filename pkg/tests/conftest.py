from fractions import Fraction

import pytest
from hypothesis import strategies as st

from convexoid.gamma import GammaPoly


def small_polys(max_degree: int = 4, bound: int = 6):
    return st.lists(st.integers(-bound, bound), min_size=0, max_size=max_degree + 1).map(
        GammaPoly.from_dense
    )


def dyadics(max_power: int = 6):
    return st.integers(0, max_power).flatmap(
        lambda n: st.integers(-(2**n), 2**n).map(lambda m: Fraction(m, 2**n))
    )


@pytest.fixture
def F():
    return Fraction


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
