from __future__ import annotations

import itertools

import pytest

from outerdraw.layout import Drawing


def make_drawing(points, edges):
    return Drawing(positions=tuple((float(x), float(y)) for x, y in points), edges=tuple(tuple(sorted(e)) for e in edges))


def is_outerplanar_bruteforce(n, edges):
    """Oracle: some cyclic order of all vertices makes the edges a non-crossing
    chord diagram (adequate for n <= 7)."""
    es = [tuple(e) for e in edges]
    for perm in itertools.permutations(range(1, n)):
        order = (0,) + perm
        pos = {v: i for i, v in enumerate(order)}
        ok = True
        for (a, b), (c, d) in itertools.combinations(es, 2):
            if len({a, b, c, d}) < 4:
                continue
            x, y = sorted((pos[a], pos[b]))
            inside = [x < pos[v] < y for v in (c, d)]
            if inside[0] != inside[1]:
                ok = False
                break
        if ok:
            return True
    return False


@pytest.fixture
def rhombus():
    return make_drawing([(0, 0), (1, 0), (1.5, 3 ** 0.5 / 2), (0.5, 3 ** 0.5 / 2)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
