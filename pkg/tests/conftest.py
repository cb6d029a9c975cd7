"""Shared fixtures: reference graphs, dictionaries, and the summary hook."""

import pytest

from warpmine import CsrGraph, build_dictionary

# Five vertices, six edges: two triangles sharing the 1-2 edge plus a
# pendant at 3.  Known by hand: triangles {0,1,2} and {1,2,3}; six
# connected triples in total.
G1_EDGES = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]


@pytest.fixture(scope="session")
def g1() -> CsrGraph:
    return CsrGraph.from_edges(5, G1_EDGES)


@pytest.fixture(scope="session")
def dict3():
    return build_dictionary(3)


@pytest.fixture(scope="session")
def dict4():
    return build_dictionary(4)


@pytest.fixture(scope="session")
def dict5():
    return build_dictionary(5)


# The acceptance tests record one verdict line per criterion here; the
# summary hook prints them after the run so the lines survive output
# capture regardless of pass/fail.
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
