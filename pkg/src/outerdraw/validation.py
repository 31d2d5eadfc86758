"""Certificate checkers for drawings.

Topological verdicts (crossings, containment) use exact orientation signs on
the stored floating point coordinates; tolerances only enter where a
condition is metric (lengths, angles) or where a near-degeneracy warning is
produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .errors import NotFanPendant, ZeroLengthEdge
from .generators import min_triangle_area, packing_bound
from .geometry import Point, dist, line_angle, orient, point_in_triangle, triangle_area
from .graph_core import Edge
from .layout import ChainFragment, Drawing, LayoutParams, Strip

# ---------------------------------------------------------------------------
# ratio


@dataclass(frozen=True)
class RatioResult:
    ratio: float
    min_edge: Edge
    min_length: float
    max_edge: Edge
    max_length: float

    def to_json(self) -> dict[str, Any]:
        return {
            "ratio": self.ratio,
            "min_edge": list(self.min_edge),
            "min_length": self.min_length,
            "max_edge": list(self.max_edge),
            "max_length": self.max_length,
        }


def edge_length_ratio(d: Drawing) -> RatioResult:
    """Longest over shortest edge length, with witness edges."""
    if not d.edges:
        raise ZeroLengthEdge("drawing has no edges")
    lo_e = hi_e = d.edges[0]
    lo = hi = d.length(lo_e)
    for e in d.edges:
        ln = d.length(e)
        if ln < lo:
            lo, lo_e = ln, e
        if ln > hi:
            hi, hi_e = ln, e
    if lo == 0.0:
        raise ZeroLengthEdge(f"edge {lo_e} has length zero")
    return RatioResult(hi / lo, lo_e, lo, hi_e, hi)


# ---------------------------------------------------------------------------
# crossings


def _sgn(x: float) -> int:
    return (x > 0) - (x < 0)


def _on_segment(p: Point, q: Point, x: Point) -> bool:
    """``x`` collinear with ``pq`` lies in the closed bounding box of ``pq``."""
    return min(p[0], q[0]) <= x[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= x[1] <= max(p[1], q[1])


def segments_intersect(p1: Point, p2: Point, p3: Point, p4: Point) -> bool:
    """Closed segments ``p1p2`` and ``p3p4`` share at least one point (exact signs)."""
    d1 = _sgn(orient(p3, p4, p1))
    d2 = _sgn(orient(p3, p4, p2))
    d3 = _sgn(orient(p1, p2, p3))
    d4 = _sgn(orient(p1, p2, p4))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _on_segment(p3, p4, p1):
        return True
    if d2 == 0 and _on_segment(p3, p4, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, p3):
        return True
    if d4 == 0 and _on_segment(p1, p2, p4):
        return True
    return False


def _collinear_overlap(shared: Point, a: Point, b: Point) -> bool:
    """Segments ``shared-a`` and ``shared-b`` overlap beyond their common endpoint."""
    if orient(shared, a, b) != 0.0:
        return False
    return (a[0] - shared[0]) * (b[0] - shared[0]) + (a[1] - shared[1]) * (b[1] - shared[1]) > 0


def _intersection_point(p1: Point, p2: Point, p3: Point, p4: Point) -> Point:
    den = (p1[0] - p2[0]) * (p3[1] - p4[1]) - (p1[1] - p2[1]) * (p3[0] - p4[0])
    if den == 0.0:
        return ((p1[0] + p2[0]) / 2.0, (p1[1] + p2[1]) / 2.0)
    a = p1[0] * p2[1] - p1[1] * p2[0]
    b = p3[0] * p4[1] - p3[1] * p4[0]
    return ((a * (p3[0] - p4[0]) - (p1[0] - p2[0]) * b) / den, (a * (p3[1] - p4[1]) - (p1[1] - p2[1]) * b) / den)


@dataclass(frozen=True)
class Crossing:
    e1: Edge
    e2: Edge
    point: Point

    def to_json(self) -> dict[str, Any]:
        return {"edges": [list(self.e1), list(self.e2)], "point": list(self.point)}


def _pair_crosses(pos: Sequence[Point], e: Edge, f: Edge) -> bool:
    a, b = e
    c, dd = f
    shared = {a, b} & {c, dd}
    if not shared:
        return segments_intersect(pos[a], pos[b], pos[c], pos[dd])
    if len(shared) == 2:
        return False
    (v,) = shared
    x = b if a == v else a
    y = dd if c == v else c
    return _collinear_overlap(pos[v], pos[x], pos[y])


def find_crossings(d: Drawing | tuple[Sequence[Point], Iterable[Edge]], brute: bool = False) -> list[Crossing]:
    """Pairs of edges that violate a planar straight-line drawing.

    Non-adjacent edges are reported when their closed segments meet (this
    includes a vertex lying on another edge); adjacent edges when they
    overlap collinearly.  The default walks edges in order of their left x
    coordinate and only tests pairs whose x ranges overlap; ``brute=True``
    tests every pair.  Both use the same exact predicate.
    """
    if isinstance(d, Drawing):
        pos, edges = d.positions, list(d.edges)
    else:
        pos, edges = d[0], list(d[1])
    for x, y in pos:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError("drawing has non-finite coordinates")
    out: list[Crossing] = []
    m = len(edges)
    if brute:
        for i in range(m):
            for j in range(i + 1, m):
                if _pair_crosses(pos, edges[i], edges[j]):
                    out.append(_mk_crossing(pos, edges[i], edges[j]))
        return out
    boxes = []
    for e in edges:
        (x1, y1), (x2, y2) = pos[e[0]], pos[e[1]]
        boxes.append((min(x1, x2), max(x1, x2), min(y1, y2), max(y1, y2), e))
    boxes.sort(key=lambda b: (b[0], b[4]))
    for i in range(m):
        x0, x1, y0, y1, e = boxes[i]
        for j in range(i + 1, m):
            u0, _, v0, v1, f = boxes[j]
            if u0 > x1:
                break
            if v0 > y1 or v1 < y0:
                continue
            if _pair_crosses(pos, e, f):
                a, b = sorted((e, f))
                out.append(_mk_crossing(pos, a, b))
    out.sort(key=lambda c: (c.e1, c.e2))
    return out


def _mk_crossing(pos: Sequence[Point], e: Edge, f: Edge) -> Crossing:
    return Crossing(e, f, _intersection_point(pos[e[0]], pos[e[1]], pos[f[0]], pos[f[1]]))


def near_degeneracies(d: Drawing, eps: float = 1e-9) -> list[str]:
    """Pairs of distinct vertices drawn closer than ``eps``."""
    pos = d.positions
    out = []
    order = sorted(range(len(pos)), key=lambda v: pos[v])
    for i, v in enumerate(order):
        for w in order[i + 1 :]:
            if pos[w][0] - pos[v][0] > eps:
                break
            if dist(pos[v], pos[w]) < eps:
                out.append(f"vertices {v} and {w} are {dist(pos[v], pos[w]):.3g} apart")
    return out


# ---------------------------------------------------------------------------
# strip certificate


@dataclass
class StripCertificate:
    """Per-condition failure lists for one chain fragment."""

    failures: dict[str, list[str]] = field(default_factory=lambda: {k: [] for k in ("i", "ii", "iii", "iv")})

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.failures.items() if v]

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "failures": self.failures}


def _strips_overlap(s1: tuple[Point, Point], s2: tuple[Point, Point], d: Point, eps: float) -> bool:
    def across(x: Point) -> float:
        return x[0] * d[1] - x[1] * d[0]

    a1, b1 = sorted((across(s1[0]), across(s1[1])))
    a2, b2 = sorted((across(s2[0]), across(s2[1])))
    return min(b1, b2) - max(a1, a2) > eps


def check_strip_certificate(
    fragment: ChainFragment,
    s: tuple[Point, Point] | None = None,
    d: Point | None = None,
    params: LayoutParams | None = None,
) -> StripCertificate:
    """Verify the four strip conditions for a drawn chain.

    (i) every vertex lies in ``S(s, d)``; (ii) every external edge is not
    parallel to ``d``, its strip has no fragment vertex in its interior and
    the strips are pairwise disjoint;
    (iii) external edges have length 1 and the other chain edges lie in
    (1/2, 1); (iv) external edges form an angle below ``theta0 - guard``
    with ``d``.  The base is closed, the side rays are tested with the
    tolerance ``eps_num``.
    """
    p = params or LayoutParams()
    eps = p.eps_num
    strip = Strip(s if s is not None else fragment.strip.base, d if d is not None else fragment.strip.dir)
    pos = fragment.positions
    c = fragment.chain
    cert = StripCertificate()
    verts = sorted(pos)
    for v in verts:
        if not strip.contains(pos[v], eps):
            t, h = strip.coords(pos[v])
            cert.failures["i"].append(f"vertex {v} outside the strip (t={t:.6g}, h={h:.6g})")
    ext = dict(fragment.external)
    for e in c.external_edges():
        if e not in ext:
            ext[e] = (pos[e[0]], pos[e[1]])
    for e, seg in ext.items():
        vec = (seg[1][0] - seg[0][0], seg[1][1] - seg[0][1])
        ang = line_angle(vec, strip.dir)
        if not ang > eps:
            cert.failures["ii"].append(f"external edge {e} is parallel to d")
            continue
        es = Strip(seg, strip.dir)
        for v in verts:
            if v in e:
                continue
            t, h = es.coords(pos[v])
            if eps < t < 1.0 - eps and h > eps:
                cert.failures["ii"].append(f"vertex {v} inside the strip of external edge {e}")
        ln = math.hypot(*vec)
        if abs(ln - 1.0) > eps:
            cert.failures["iii"].append(f"external edge {e} has length {ln!r}")
        if not ang < p.angle_limit:
            cert.failures["iv"].append(
                f"external edge {e} forms {math.degrees(ang):.6g} deg with d (limit {math.degrees(p.angle_limit):.6g})"
            )
    # strips with a common direction are disjoint iff their extents across d are
    items = sorted(ext.items())
    for i, (e1, s1) in enumerate(items):
        for e2, s2 in items[i + 1 :]:
            if _strips_overlap(s1, s2, strip.dir, eps):
                cert.failures["ii"].append(f"strips over external edges {e1} and {e2} overlap")
    root = c.root_edge
    rl = dist(pos[root[0]], pos[root[1]])
    if abs(rl - 1.0) > eps:
        cert.failures["iii"].append(f"root edge {root} has length {rl!r}")
    for a, b in c.short_edges():
        ln = dist(pos[a], pos[b])
        if not 0.5 < ln < 1.0:
            cert.failures["iii"].append(f"short edge {(a, b)} has length {ln!r}")
    return cert


# ---------------------------------------------------------------------------
# embedding


@dataclass
class EmbeddingReport:
    ok: bool
    violations: list[str]
    crossings: list[Crossing]

    def to_json(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "violations": self.violations,
            "crossings": [c.to_json() for c in self.crossings],
        }


def check_embedding_preserved(d: Drawing, fa: Mapping[int, Sequence[int]]) -> EmbeddingReport:
    """Every assigned vertex lies strictly inside its face, and no edges cross."""
    pos = d.positions
    bad = []
    for v in sorted(fa):
        a, b, c = fa[v]
        if not point_in_triangle(pos[v], pos[a], pos[b], pos[c], strict=True):
            bad.append(f"vertex {v} is not strictly inside face {tuple(fa[v])}")
    cr = find_crossings(d)
    return EmbeddingReport(not bad and not cr, bad, cr)


# ---------------------------------------------------------------------------
# packing diagnostic


def _tri_interiors_overlap(t1: Sequence[Point], t2: Sequence[Point]) -> bool:
    """Separating-axis test; triangles touching along a point or segment do not overlap."""
    for tri in (t1, t2):
        for i in range(3):
            p, q = tri[i], tri[(i + 1) % 3]
            nx, ny = q[1] - p[1], p[0] - q[0]
            a = [nx * x + ny * y for x, y in t1]
            b = [nx * x + ny * y for x, y in t2]
            if max(a) <= min(b) or max(b) <= min(a):
                return False
    return True


@dataclass
class PackingReport:
    k: int
    apex: int
    scale: float
    max_distance: float
    within_disk: bool
    pendant_count: int
    disjoint_count: int
    min_pendant_area: float
    delta: float | None
    area_bound: float | None
    area_bound_ok: bool | None
    nu_bound: float | None

    def to_json(self) -> dict[str, Any]:
        return dict(self.__dict__)


def _fan_structure(d: Drawing) -> tuple[int, int, list[tuple[int, int, int]]]:
    n = d.vertex_count
    adj: list[set[int]] = [set() for _ in range(n)]
    for a, b in d.edges:
        adj[a].add(b)
        adj[b].add(a)
    if n < 6 or n % 2:
        raise NotFanPendant(f"{n} vertices cannot form a fan with pendants")
    k = (n - 4) // 2
    if len(d.edges) != 4 * k + 5:
        raise NotFanPendant(f"{len(d.edges)} edges differ from 4k + 5 = {4 * k + 5}")
    last: NotFanPendant | None = None
    for apex in (v for v in range(n) if len(adj[v]) == k + 2):
        try:
            return k, apex, _pendants_of(adj, apex, k)
        except NotFanPendant as exc:
            last = exc
    raise last or NotFanPendant(f"no vertex of degree k + 2 = {k + 2}")


def _pendants_of(adj: list[set[int]], apex: int, k: int) -> list[tuple[int, int, int]]:
    pend = []
    for v in range(len(adj)):
        if v == apex or v in adj[apex]:
            continue
        if len(adj[v]) != 2:
            raise NotFanPendant(f"vertex {v} is neither rim nor pendant")
        a, b = sorted(adj[v])
        if a not in adj[apex] or b not in adj[apex] or b not in adj[a]:
            raise NotFanPendant(f"vertex {v} is not attached to a rim edge")
        pend.append((a, b, v))
    if len(pend) != k + 1:
        raise NotFanPendant("pendant count does not match a fan with pendants")
    return pend


def packing_diagnostic(d: Drawing) -> PackingReport:
    """Radius-2 disk and pendant packing measurements on a fan-with-pendants drawing.

    The drawing is scaled so that its longest edge has length 1 before any
    measurement.
    """
    k, apex, pend = _fan_structure(d)
    rr = edge_length_ratio(d)
    sc = 1.0 / rr.max_length
    pos = [(x * sc, y * sc) for x, y in d.positions]
    c = pos[apex]
    far = max(dist(c, x) for x in pos)
    tris = [(pos[a], pos[b], pos[v]) for a, b, v in pend]
    areas = [triangle_area(*t) for t in tris]
    disjoint = 0
    for i, t in enumerate(tris):
        if all(not _tri_interiors_overlap(t, u) for j, u in enumerate(tris) if j != i):
            disjoint += 1
    delta = rr.min_length * sc - 0.5
    if delta > 0:
        bound = min_triangle_area(delta)
        return PackingReport(
            k, apex, sc, far, far <= 2.0 + 1e-12, len(pend), disjoint, min(areas), delta, bound,
            min(areas) >= bound - 1e-12, packing_bound(delta),
        )
    return PackingReport(k, apex, sc, far, far <= 2.0 + 1e-12, len(pend), disjoint, min(areas), None, None, None, None)


# ---------------------------------------------------------------------------
# aggregate report


@dataclass
class ValidationReport:
    crossings: list[Crossing]
    ratio: float
    min_edge: Edge | None
    max_edge: Edge | None
    min_length: float
    max_length: float
    condition_failures: list[str]
    near_degenerate: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.crossings and not self.condition_failures and math.isfinite(self.ratio)

    def to_json(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "ratio": self.ratio,
            "min_edge": list(self.min_edge) if self.min_edge else None,
            "min_length": self.min_length,
            "max_edge": list(self.max_edge) if self.max_edge else None,
            "max_length": self.max_length,
            "crossings": [c.to_json() for c in self.crossings],
            "condition_failures": self.condition_failures,
            "near_degenerate": self.near_degenerate,
        }


def validate_drawing(
    d: Drawing,
    fragments: Iterable[ChainFragment] = (),
    embedding: Mapping[int, Sequence[int]] | None = None,
    params: LayoutParams | None = None,
) -> ValidationReport:
    """Crossings, ratio, optional strip certificates and optional embedding check."""
    fails: list[str] = []
    try:
        rr = edge_length_ratio(d)
        ratio, mn, mx, lmin, lmax = rr.ratio, rr.min_edge, rr.max_edge, rr.min_length, rr.max_length
    except ZeroLengthEdge as exc:
        ratio, mn, mx, lmin, lmax = math.inf, None, None, 0.0, 0.0
        fails.append(str(exc))
    cr = find_crossings(d)
    for fr in fragments:
        cert = check_strip_certificate(fr, params=params)
        for cond, msgs in cert.failures.items():
            fails.extend(f"chain {fr.chain.index} ({cond}): {m}" for m in msgs)
    if embedding is not None:
        emb = check_embedding_preserved(d, embedding)
        fails.extend(emb.violations)
    return ValidationReport(cr, ratio, mn, mx, lmin, lmax, fails, near_degeneracies(d))


__all__ = [
    "RatioResult",
    "edge_length_ratio",
    "segments_intersect",
    "Crossing",
    "find_crossings",
    "near_degeneracies",
    "StripCertificate",
    "check_strip_certificate",
    "EmbeddingReport",
    "check_embedding_preserved",
    "PackingReport",
    "packing_diagnostic",
    "ValidationReport",
    "validate_drawing",
]
