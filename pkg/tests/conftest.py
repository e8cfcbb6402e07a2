import functools

import pytest

from boroczky.arrangement import boroczky_lines, dual_hesse, triple_points
from boroczky.ideals import radical_ideal, symbolic_power


@functools.lru_cache(maxsize=None)
def arrangement(n):
    return dual_hesse() if n == "hesse" else boroczky_lines(n)


@functools.lru_cache(maxsize=None)
def points(n):
    return tuple(triple_points(arrangement(n)))


@functools.lru_cache(maxsize=None)
def radical(n):
    return radical_ideal(points(n), by_orbit=n != "hesse" and n >= 10)


@functools.lru_cache(maxsize=None)
def symbolic(n, m):
    return symbolic_power(points(n), m, by_orbit=n != "hesse" and n >= 10)


@pytest.fixture(scope="session")
def cache():
    """Memoised arrangement -> triple points -> ideals, shared by all tests."""
    class C:
        pass
    c = C()
    c.arrangement = arrangement
    c.points = points
    c.radical = radical
    c.symbolic = symbolic
    return c


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
