from __future__ import annotations

import math
import random

import mpmath
import pytest

from outerdraw.analysis import Triangle, perimeter_bisector, perimeter_descent_audit
from outerdraw.errors import DegenerateTriangle, EmbeddingViolated, NotNestedFamily
from outerdraw.generators import gen_nested_family
from outerdraw.geometry import point_in_triangle
from outerdraw.layout import draw, naive_nested_draw
from outerdraw.validation import edge_length_ratio

mpmath.mp.dps = 40


def mp_bisect(A, B, C):
    """High-precision oracle: walk from B towards A by (c + b - a)/2."""
    A, B, C = ([mpmath.mpf(x) for x in p] for p in (A, B, C))
    d = lambda p, q: mpmath.sqrt((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2)  # noqa: E731
    a, b, c = d(B, C), d(C, A), d(A, B)
    t = (c + b - a) / 2 / c
    D = [B[0] + t * (A[0] - B[0]), B[1] + t * (A[1] - B[1])]
    return D, a + d(B, D) + d(C, D), b + d(D, A) + d(C, D), a + b + c - (a + d(B, D) + d(C, D))


def test_three_four_five():
    t = Triangle((0.0, 0.0), (5.0, 0.0), (3.2, 2.4))
    assert (t.a, t.b, t.c) == pytest.approx((3, 4, 5))
    D, pl, pr, P, cd = perimeter_bisector(t)
    assert D == pytest.approx((2.0, 0.0))
    assert pl == pytest.approx(6 + math.sqrt(7.2)) and pr == pytest.approx(6 + math.sqrt(7.2))
    b = perimeter_bisector(t)
    assert b.shrink == pytest.approx(3.31672, abs=1e-5)
    assert b.shrink >= 1.5
    assert P - pl == pytest.approx(b.shrink)


def test_equilateral():
    t = Triangle((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2))
    b = perimeter_bisector(t)
    assert b.D == pytest.approx((0.5, 0.0))
    assert b.P_left == pytest.approx(b.P_right)
    assert b.shrink == pytest.approx(1.5 - math.sqrt(3) / 2)
    assert b.shrink >= 0.5


def test_random_triangles_against_oracle():
    rng = random.Random(7)
    checked = 0
    while checked < 1000:
        pts = [(rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(3)]
        t0 = Triangle(*pts)
        if t0.area < 1e-3:
            continue
        # relabel so that AB is longest and BC shortest
        best = None
        for A, B, C in ((0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0)):
            t = Triangle(pts[A], pts[B], pts[C])
            if t.sides_ordered():
                best = t
                break
        assert best is not None
        b = perimeter_bisector(best)
        D, pl, pr, shrink = mp_bisect(best.A, best.B, best.C)
        assert abs(b.P_left - b.P_right) <= 1e-9
        assert b.D[0] == pytest.approx(float(D[0]), abs=1e-9)
        assert b.D[1] == pytest.approx(float(D[1]), abs=1e-9)
        assert b.P_left == pytest.approx(float(pl), rel=1e-12)
        assert b.shrink == pytest.approx(float(shrink), abs=1e-9)
        assert b.shrink >= best.a / 2 - 1e-12
        ad, bd = math.dist(best.A, b.D), math.dist(best.B, b.D)
        assert ad + bd == pytest.approx(best.c, abs=1e-9)
        checked += 1


def test_degenerate():
    with pytest.raises(DegenerateTriangle):
        perimeter_bisector(Triangle((0.0, 0.0), (1.0, 0.0), (2.0, 0.0)))


def test_audit_single_level():
    eg = gen_nested_family(1)
    d = naive_nested_draw(eg)
    rho = edge_length_ratio(d).ratio
    rep = perimeter_descent_audit(d, eg, rho)
    assert len(rep.steps) == 1 and rep.stopped == "leaf"
    assert rep.start_perimeter <= 3 * rho + 1e-9
    assert rep.perimeters[1] < rep.perimeters[0]


@pytest.mark.parametrize("n", range(1, 8))
def test_audit_descent(n):
    eg = gen_nested_family(n)
    d = naive_nested_draw(eg)
    rho = edge_length_ratio(d).ratio
    rep = perimeter_descent_audit(d, eg.face_assignment, rho)
    assert rep.strictly_decreasing()
    assert rep.start_perimeter <= 3 * rho + 1e-9
    assert rep.bound_steps == math.ceil(6 * rho * rho)
    assert rep.contradiction == (rep.certified_steps >= rep.bound_steps)
    assert sum(s.levels for s in rep.steps) <= n
    # soundness: the selected face's apex lies in the face it descended from
    pos = [(x * rep.scale, y * rep.scale) for x, y in d.positions]
    for s in rep.steps:
        apex = pos[s.next_face[2]]
        assert point_in_triangle(apex, s.triangle.A, s.triangle.B, s.triangle.C, strict=False) or s.levels == 2
    assert "steps" in rep.summary()


def test_audit_rejects_crossing_drawing():
    eg = gen_nested_family(2)
    with pytest.raises(EmbeddingViolated):
        perimeter_descent_audit(draw(eg.graph), eg, 10.0)


def test_audit_rejects_non_nested():
    eg = gen_nested_family(1)
    d = naive_nested_draw(eg)
    bad = dict(eg.face_assignment)
    v = next(iter(bad))
    bad[v] = (0, 1, 2, 3)
    with pytest.raises(NotNestedFamily):
        perimeter_descent_audit(d, bad, 2.0)


def test_audit_rho_validation():
    eg = gen_nested_family(1)
    with pytest.raises(ValueError):
        perimeter_descent_audit(naive_nested_draw(eg), eg, 0.5)
