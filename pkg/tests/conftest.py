import pytest
from hypothesis import strategies as hs

from hyperset.core import ApgSystem, from_equations

FIG1 = [("x", ["x", "y", "z"]), ("y", ["x", "z"]), ("z", ["x"])]
FIG1_TEXT = "x = {x, y, z}; y = {x, z}; z = {x};"


@hs.composite
def systems(draw, max_nodes=12, max_fanout=4):
    n = draw(hs.integers(1, max_nodes))
    kids = draw(hs.lists(hs.lists(hs.integers(0, n - 1), max_size=max_fanout), min_size=n, max_size=n))
    return ApgSystem(kids)


@pytest.fixture
def fig1():
    return from_equations(FIG1)


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
