"""Equal-perimeter bisection of a triangle and the perimeter-descent audit
for drawings of the nested family."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, NamedTuple, Sequence

from .errors import DegenerateTriangle, EmbeddingViolated, NotNestedFamily
from .geometry import Point, dist, point_in_triangle, triangle_area

DEGENERATE_AREA = 1e-12
EPS_NUM = 1e-9


@dataclass(frozen=True)
class Triangle:
    """Triangle ABC; side ``a`` is opposite A, ``b`` opposite B, ``c`` opposite C."""

    A: Point
    B: Point
    C: Point

    @property
    def a(self) -> float:
        return dist(self.B, self.C)

    @property
    def b(self) -> float:
        return dist(self.C, self.A)

    @property
    def c(self) -> float:
        return dist(self.A, self.B)

    @property
    def perimeter(self) -> float:
        return self.a + self.b + self.c

    @property
    def area(self) -> float:
        return triangle_area(self.A, self.B, self.C)

    def sides_ordered(self) -> bool:
        """True when AB is a longest side and BC a shortest one."""
        a, b, c = self.a, self.b, self.c
        return c >= b and c >= a and a <= b

    def to_json(self) -> dict[str, Any]:
        return {"A": list(self.A), "B": list(self.B), "C": list(self.C)}


class Bisection(NamedTuple):
    """Foot ``D`` of the perimeter bisector from C and the two sub-perimeters."""

    D: Point
    P_left: float
    P_right: float
    perimeter: float
    cd: float

    @property
    def shrink(self) -> float:
        """Perimeter drop from the triangle to either half, P/2 - |CD|."""
        return self.perimeter / 2.0 - self.cd


def perimeter_bisector(t: Triangle) -> Bisection:
    """Point D on AB splitting ABC into CBD and CDA of equal perimeter.

    ``P_left`` is the perimeter of CBD and ``P_right`` that of CDA.  Unpacks
    as ``(D, P_left, P_right, perimeter, cd)``.
    """
    if not t.area >= DEGENERATE_AREA:
        raise DegenerateTriangle(f"triangle area {t.area!r} is below {DEGENERATE_AREA}")
    a, b, c = t.a, t.b, t.c
    bd = (c + b - a) / 2.0
    s = bd / c
    D = (t.B[0] + s * (t.A[0] - t.B[0]), t.B[1] + s * (t.A[1] - t.B[1]))
    cd = dist(t.C, D)
    p_left = a + dist(t.B, D) + cd
    p_right = b + dist(D, t.A) + cd
    return Bisection(D, p_left, p_right, a + b + c, cd)


# ---------------------------------------------------------------------------
# descent audit


@dataclass
class DescentStep:
    """One certified descent from ``face`` to ``next_face``."""

    face: tuple[int, int, int]
    triangle: Triangle
    perimeter: float
    case: str
    next_face: tuple[int, int, int]
    next_perimeter: float
    shrink: float
    levels: int

    def to_json(self) -> dict[str, Any]:
        return {
            "face": list(self.face),
            "triangle": self.triangle.to_json(),
            "perimeter": self.perimeter,
            "case": self.case,
            "next_face": list(self.next_face),
            "next_perimeter": self.next_perimeter,
            "shrink": self.shrink,
            "levels": self.levels,
        }


@dataclass
class DescentReport:
    steps: list[DescentStep]
    rho_star: float
    min_edge: float
    scale: float
    start_face: tuple[int, int, int]
    start_perimeter: float
    final_perimeter: float
    certified_steps: int
    bound_steps: int
    contradiction: bool
    stopped: str
    notes: list[str] = field(default_factory=list)

    @property
    def perimeters(self) -> list[float]:
        return [self.start_perimeter] + [s.next_perimeter for s in self.steps]

    def strictly_decreasing(self) -> bool:
        ps = self.perimeters
        return all(y < x for x, y in zip(ps, ps[1:]))

    def to_json(self) -> dict[str, Any]:
        return {
            "rho_star": self.rho_star,
            "min_edge": self.min_edge,
            "scale": self.scale,
            "start_face": list(self.start_face),
            "start_perimeter": self.start_perimeter,
            "final_perimeter": self.final_perimeter,
            "certified_steps": self.certified_steps,
            "bound_steps": self.bound_steps,
            "contradiction": self.contradiction,
            "stopped": self.stopped,
            "notes": list(self.notes),
            "steps": [s.to_json() for s in self.steps],
        }

    def summary(self) -> str:
        return (
            f"{len(self.steps)} steps, {self.certified_steps} with shrink >= 1/(2 rho*) "
            f"(rho* = {self.rho_star:.6g}); perimeter {self.start_perimeter:.6g} -> "
            f"{self.final_perimeter:.6g}; contradiction needs {self.bound_steps} steps: "
            f"{'witnessed' if self.contradiction else 'not reached'}"
        )


class _Nested:
    """Face tree of a nested-family member recovered from its face assignment.

    Each face is stored as ``(a, b, v)``: ``(a, b)`` the edge ``v`` was
    attached to.  The root face is the base triangle with apex 0, whose
    two edges at 0 carry the first-round vertices.
    """

    def __init__(self, edges: set[tuple[int, int]], fa: Mapping[int, Sequence[int]]) -> None:
        self.parent: dict[int, tuple[int, int]] = {}
        self.children: dict[frozenset[int], dict[tuple[int, int], int]] = {}
        for v in sorted(fa):
            tri = tuple(fa[v])
            if len(tri) != 3 or len(set(tri)) != 3:
                raise NotNestedFamily(f"face of vertex {v} is not a triangle: {tri}")
            ends = [x for x in tri if (min(x, v), max(x, v)) in edges]
            if len(ends) != 2:
                raise NotNestedFamily(f"vertex {v} is not attached to an edge of its face {tri}")
            a, b = sorted(ends)
            self.parent[v] = (a, b)
            slot = self.children.setdefault(frozenset(tri), {})
            if (a, b) in slot:
                raise NotNestedFamily(f"edge {(a, b)} of face {tri} carries two vertices")
            slot[(a, b)] = v

    def face_of(self, v: int) -> tuple[int, int, int]:
        a, b = self.parent[v]
        return (a, b, v)

    def child(self, face: tuple[int, int, int], x: int, y: int) -> int | None:
        slot = self.children.get(frozenset(face))
        if not slot:
            return None
        return slot.get((min(x, y), max(x, y)))


def _perimeter(pos: Sequence[Point], face: Sequence[int]) -> float:
    a, b, c = face
    return dist(pos[a], pos[b]) + dist(pos[b], pos[c]) + dist(pos[c], pos[a])


def perimeter_descent_audit(d: Any, fa: Any, rho_star: float) -> DescentReport:
    """Trace the shrinking-perimeter argument on a concrete nested drawing.

    ``fa`` is a face assignment (or an object carrying ``face_assignment``).
    The walk starts at the base triangle, whose apex 0 carries the two
    first-round vertices, and follows one face per step.  If the attaching
    edge ``e`` of the current face ``T = (e, v)`` is longest, the perimeter
    bisector from ``v`` picks the child face lying on its side (one level).
    Otherwise the child face ``T'`` on the longest edge is entered and the
    bisection is applied there (two levels).  The drawing is rescaled so that
    edge (0, 1) has length 1.
    """
    from .validation import check_embedding_preserved

    if rho_star < 1.0 or not math.isfinite(rho_star):
        raise ValueError("rho_star must be a finite number >= 1")
    fa = getattr(fa, "face_assignment", fa)
    edges = {(min(u, v), max(u, v)) for u, v in d.edges}
    if not {(0, 1), (0, 2), (1, 2)} <= edges:
        raise NotNestedFamily("the base triangle (0, 1, 2) is missing")
    tree = _Nested(edges, fa)
    rep = check_embedding_preserved(d, fa)
    if not rep.ok:
        raise EmbeddingViolated("; ".join(rep.violations[:3]) or "drawing has crossings")

    base = dist(d.positions[0], d.positions[1])
    scale = 1.0 / base
    pos = [(x * scale, y * scale) for x, y in d.positions]
    min_edge = 1.0 / rho_star
    need = min_edge / 2.0 - EPS_NUM

    face = (1, 2, 0)
    start = _perimeter(pos, face)
    cur_p = start
    steps: list[DescentStep] = []
    notes: list[str] = []
    stopped = "leaf"
    while True:
        a, b, v = face
        w1 = tree.child(face, a, v)
        w2 = tree.child(face, b, v)
        if w1 is None and w2 is None:
            stopped = "leaf"
            break
        if w1 is None or w2 is None:
            raise NotNestedFamily(f"face {face} has only one child")
        la, lb, le = dist(pos[a], pos[v]), dist(pos[b], pos[v]), dist(pos[a], pos[b])
        if le >= la and le >= lb:
            nxt, levels, case = _bisect_step(pos, tree, face), 1, "longest"
            if nxt is None:
                raise EmbeddingViolated(f"neither bisector half of face {face} holds its child face")
        else:
            x = a if la >= lb else b
            mid = tree.face_of(w1 if x == a else w2)
            if tree.child(mid, mid[0], mid[2]) is None:
                stopped = "truncated"
                notes.append(f"face {face}: longest side is not the attaching edge and no level below {mid}")
                break
            nxt, levels, case = _bisect_step(pos, tree, mid), 2, "not-longest"
            if nxt is None:
                raise EmbeddingViolated(f"neither bisector half of face {mid} holds its child face")
        p = _perimeter(pos, nxt)
        tri = Triangle(pos[face[0]], pos[face[1]], pos[face[2]])
        steps.append(DescentStep(face, tri, cur_p, case, nxt, p, cur_p - p, levels))
        face, cur_p = nxt, p

    certified = sum(1 for s in steps if s.shrink >= need)
    bound = math.ceil(6.0 * rho_star * rho_star)
    return DescentReport(
        steps=steps,
        rho_star=rho_star,
        min_edge=min_edge,
        scale=scale,
        start_face=(1, 2, 0),
        start_perimeter=start,
        final_perimeter=cur_p,
        certified_steps=certified,
        bound_steps=bound,
        contradiction=certified >= bound,
        stopped=stopped,
        notes=notes,
    )


def _bisect_step(pos: Sequence[Point], tree: _Nested, face: tuple[int, int, int]) -> tuple[int, int, int] | None:
    """Bisect ``face = (a, b, v)`` from ``v`` and return the child face inside
    the half that holds it; the larger perimeter drop wins a tie."""
    a, b, v = face
    bis = perimeter_bisector(Triangle(pos[a], pos[b], pos[v]))
    best: tuple[float, tuple[int, int, int]] | None = None
    for x in (a, b):
        w = tree.child(face, x, v)
        if w is None:
            continue
        if point_in_triangle(pos[w], pos[v], bis.D, pos[x], strict=False):
            cf = tree.face_of(w)
            p = _perimeter(pos, cf)
            if best is None or p < best[0]:
                best = (p, cf)
    return None if best is None else best[1]


__all__ = [
    "Triangle",
    "Bisection",
    "perimeter_bisector",
    "DescentStep",
    "DescentReport",
    "perimeter_descent_audit",
]
