import pytest

from polyrubik import builders


@pytest.fixture(scope="session")
def tet():
    return builders.simplex(3)


@pytest.fixture(scope="session")
def simplex4():
    return builders.simplex(4)


@pytest.fixture(scope="session")
def cube():
    return builders.hypercube(3)


def bfs_closure(perms):
    """All products of ``perms`` as image tuples, by breadth-first search."""
    ident = tuple(range(len(perms[0].images))) if perms else ()
    seen = {ident}
    frontier = [ident]
    gens = [p.images for p in perms]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
