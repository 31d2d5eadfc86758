"""Small planar geometry helpers shared by layout, validation and analysis."""

from __future__ import annotations

import math

Point = tuple[float, float]

TWO_PI = 2.0 * math.pi


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def orient(a: Point, b: Point, c: Point) -> float:
    """Twice the signed area of (a, b, c); positive when counter-clockwise."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def direction(p: Point, q: Point) -> float:
    """Angle of the vector p -> q."""
    return math.atan2(q[1] - p[1], q[0] - p[0])


def ccw_angle(frm: float, to: float) -> float:
    """Counter-clockwise rotation in [0, 2pi) taking angle ``frm`` to ``to``."""
    return (to - frm) % TWO_PI


def unit(angle: float) -> Point:
    return (math.cos(angle), math.sin(angle))


def line_angle(u: Point, v: Point) -> float:
    """Smaller angle in [0, pi/2] between the lines spanned by ``u`` and ``v``."""
    nu = math.hypot(*u)
    nv = math.hypot(*v)
    c = abs(u[0] * v[0] + u[1] * v[1]) / (nu * nv)
    return math.acos(min(1.0, c))


def triangle_area(a: Point, b: Point, c: Point) -> float:
    return abs(orient(a, b, c)) / 2.0


def law_of_cosines_angle(adj1: float, adj2: float, opposite: float) -> float:
    """Angle between sides ``adj1`` and ``adj2`` of a triangle with third side ``opposite``."""
    c = (adj1 * adj1 + adj2 * adj2 - opposite * opposite) / (2.0 * adj1 * adj2)
    return math.acos(max(-1.0, min(1.0, c)))


def point_in_triangle(p: Point, a: Point, b: Point, c: Point, strict: bool = True) -> bool:
    d1 = orient(a, b, p)
    d2 = orient(b, c, p)
    d3 = orient(c, a, p)
    if strict:
        return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)
    has_neg = d1 < 0 or d2 < 0 or d3 < 0
    has_pos = d1 > 0 or d2 > 0 or d3 > 0
    return not (has_neg and has_pos)
