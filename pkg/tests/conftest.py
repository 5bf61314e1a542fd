import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lhom.generators import gen_cycle_power
from lhom.graphs import Graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def complete_graph(q: int) -> Graph:
    return Graph.from_edges(q, [(u, v) for u in range(q) for v in range(u + 1, q)])


@pytest.fixture(scope="session")
def c5():
    return gen_cycle_power(5, 1)


@pytest.fixture(scope="session")
def c6():
    return gen_cycle_power(6, 1)


@pytest.fixture(scope="session")
def c7():
    return gen_cycle_power(7, 1)


@pytest.fixture(scope="session")
def k3():
    return complete_graph(3)


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def c13p2():
    return gen_cycle_power(13, 2)
