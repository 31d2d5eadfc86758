"""Coordinate producing algorithms.

* ``draw_chain_in_strip`` draws one chain inside a half-infinite strip
  ``S(s, d)`` as a ladder: every L edge is a unit step along one of two
  rails, and the rails are then turned slightly towards each other.
* ``draw_maximal`` draws a whole chain decomposition, every child chain in
  the strip over its L edge with the one global direction ``d``.
* ``draw_bipartite_in_wedge`` draws a quadrangulated bipartite graph with
  unit edges, one rhombus per face, inside nested wedges.
* ``draw`` is the end-to-end pipeline and ``naive_nested_draw`` gives an
  embedding preserving drawing of the nested family.
"""

from __future__ import annotations

import bisect
import math
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Any

from .decomposition import Chain, ChainTree, chain_decompose
from .errors import (
    AngleTooLarge,
    InfeasiblePlacement,
    InvalidInput,
    NotBipartite,
    NotQuadrangulated,
    PlacementDegenerate,
    WedgeTooNarrow,
)
from .generators import EmbeddedGraph
from .geometry import Point, ccw_angle, direction, dist, line_angle, orient, unit
from .graph_core import (
    Edge,
    MaximalOuterplanarGraph,
    OuterplanarGraph,
    QuadrangulatedGraph,
    bipartition,
    norm_edge,
    quadrangulate_bipartite,
    triangulate,
)

THETA0 = math.acos(0.25)
GUARD = math.radians(1.0)
V1_SAMPLES = 256
# a two-sided root chain needs the strip angle well inside (0, theta0): the
# plus side wants it large, the minus side small, so start in the middle
ROOT_ANGLE = math.pi / 4.0
LONE_ROOT_ANGLE = math.pi / 3.0

Segment = tuple[Point, Point]


@dataclass(frozen=True)
class LayoutParams:
    """Numeric knobs of the constructions.

    ``ray_rotation`` caps the inward turn of the chain rails; ``None`` means
    the per chain default of a quarter of the angular slack ``theta0 - guard``.
    ``root_angle`` is the angle between the root segment and ``d``; ``None``
    means 45 degrees.
    """

    leg_length: float = 0.75
    short_margin: float = 0.05
    ray_rotation: float | None = None
    eps_num: float = 1e-9
    guard: float = GUARD
    max_retries: int = 20
    root_angle: float | None = None

    def __post_init__(self) -> None:
        if not self.short_margin > 0:
            raise InvalidInput(f"short margin must be positive, got {self.short_margin}")
        if not 0.5 + self.short_margin < self.leg_length < 1.0:
            raise InvalidInput(
                f"leg length {self.leg_length} must lie in (1/2 + mu, 1) with mu = {self.short_margin}"
            )
        if self.ray_rotation is not None and not self.ray_rotation > 0:
            raise InvalidInput(f"ray rotation must be positive, got {self.ray_rotation}")
        if not self.eps_num > 0:
            raise InvalidInput(f"eps_num must be positive, got {self.eps_num}")
        if not 0 <= self.guard < THETA0:
            raise InvalidInput(f"guard must lie in [0, theta0), got {self.guard}")
        if self.max_retries < 0:
            raise InvalidInput("max_retries must be non-negative")
        if self.root_angle is not None and not 0 < self.root_angle < THETA0 - self.guard:
            raise InvalidInput("root angle must lie in (0, theta0 - guard)")

    @property
    def theta0(self) -> float:
        return THETA0

    @property
    def angle_limit(self) -> float:
        return THETA0 - self.guard

    @property
    def short_min(self) -> float:
        return 0.5 + self.short_margin

    def rotation_cap(self) -> float:
        default = self.angle_limit / 4.0
        return default if self.ray_rotation is None else min(self.ray_rotation, default)

    def shrunk(self) -> LayoutParams:
        """Halve the short margin and the rotation cap (leg length is clipped into range)."""
        mu = self.short_margin / 2.0
        rot = None if self.ray_rotation is None else self.ray_rotation / 2.0
        return replace(self, short_margin=mu, ray_rotation=rot)

    def to_json(self) -> dict[str, Any]:
        return {
            "leg_length": self.leg_length,
            "short_margin": self.short_margin,
            "ray_rotation": self.ray_rotation,
            "eps_num": self.eps_num,
            "guard": self.guard,
            "max_retries": self.max_retries,
            "root_angle": self.root_angle,
        }


def _rot(v: Point, ang: float) -> Point:
    c, s = math.cos(ang), math.sin(ang)
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


def _add(p: Point, v: Point, k: float = 1.0) -> Point:
    return (p[0] + k * v[0], p[1] + k * v[1])


@dataclass(frozen=True)
class Strip:
    """Half-infinite strip bounded by ``base`` and two rays along ``dir``."""

    base: Segment
    dir: Point

    @property
    def angle(self) -> float:
        (p, q), d = self.base, self.dir
        return line_angle((q[0] - p[0], q[1] - p[1]), d)

    def coords(self, x: Point) -> tuple[float, float]:
        """``(t, h)`` with ``x = base[0] + t (base[1] - base[0]) + h dir``."""
        (p, q), d = self.base, self.dir
        sx, sy = q[0] - p[0], q[1] - p[1]
        rx, ry = x[0] - p[0], x[1] - p[1]
        det = sx * d[1] - sy * d[0]
        t = (rx * d[1] - ry * d[0]) / det
        h = (sx * ry - sy * rx) / det
        return t, h

    def contains(self, x: Point, tol: float = 0.0) -> bool:
        t, h = self.coords(x)
        return -tol <= t <= 1.0 + tol and h >= -tol

    def to_json(self) -> dict[str, Any]:
        return {"base": [list(self.base[0]), list(self.base[1])], "dir": list(self.dir)}


@dataclass(frozen=True)
class Wedge:
    """Region left of ``base[0] -> base[1]`` bounded by rays ``dir1`` and ``dir2``."""

    base: Segment
    dir1: Point
    dir2: Point

    @property
    def alpha1(self) -> float:
        p, q = self.base
        return ccw_angle(direction(p, q), math.atan2(self.dir1[1], self.dir1[0]))

    @property
    def alpha2(self) -> float:
        p, q = self.base
        return ccw_angle(math.atan2(self.dir2[1], self.dir2[0]), direction(q, p))

    @property
    def wedge_angle(self) -> float:
        return self.alpha1 + self.alpha2

    @classmethod
    def from_angles(cls, base: Segment, alpha1: float, alpha2: float) -> Wedge:
        p, q = base
        a = direction(p, q)
        return cls(base, unit(a + alpha1), unit(a + math.pi - alpha2))

    def contains(self, x: Point, tol: float = 0.0) -> bool:
        """Membership for base angles below pi: left of the base, between the rays."""
        p, q = self.base
        return (
            orient(p, q, x) >= -tol
            and orient(p, _add(p, self.dir1), x) <= tol
            and orient(q, _add(q, self.dir2), x) >= -tol
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "base": [list(self.base[0]), list(self.base[1])],
            "dir1": list(self.dir1),
            "dir2": list(self.dir2),
            "wedge_angle": self.wedge_angle,
        }


@dataclass
class ChainFragment:
    """Output of ``draw_chain_in_strip``.

    ``external`` maps every non-root L edge, oriented as the child chain
    receives it, to its drawn segment.  ``pre_rotation`` holds the ladder
    before the rails were turned (filled in debug mode only).
    """

    chain: Chain
    strip: Strip
    positions: dict[int, Point]
    external: dict[tuple[int, int], Segment]
    ray_rotation: float
    short_min: float
    case: str
    pre_rotation: dict[int, Point] | None = None

    def edges(self) -> list[tuple[int, int]]:
        c = self.chain
        if c.is_degenerate:
            return [c.root_edge]
        out = [c.root_edge] + list(c.external_edges())
        out += [tuple(e) for e in c.short_edges()]  # type: ignore[misc]
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "chain": self.chain.index,
            "case": self.case,
            "strip": self.strip.to_json(),
            "ray_rotation": self.ray_rotation,
            "short_min": self.short_min,
            "root_edge": list(self.chain.root_edge),
            "plus": list(self.chain.plus),
            "minus": list(self.chain.minus),
            "external_edges": [
                {"edge": list(e), "segment": [list(seg[0]), list(seg[1])]} for e, seg in self.external.items()
            ],
            "short_edges": [list(e) for e in self.chain.short_edges()],
            "positions": {str(v): list(p) for v, p in sorted(self.positions.items())},
        }


@dataclass
class Drawing:
    """Vertex positions plus the reported edge set."""

    positions: tuple[Point, ...]
    edges: tuple[Edge, ...]
    edge_class: dict[Edge, str] = field(default_factory=dict)
    graph: OuterplanarGraph | None = None
    meta: dict[str, Any] = field(default_factory=dict)
    fragments: list[ChainFragment] = field(default_factory=list)

    @property
    def vertex_count(self) -> int:
        return len(self.positions)

    def length(self, e: Edge) -> float:
        return dist(self.positions[e[0]], self.positions[e[1]])

    def lengths(self) -> dict[Edge, float]:
        return {e: self.length(e) for e in self.edges}


# ---------------------------------------------------------------------------
# chain drawing inside a strip


def _check_segment(s: Segment, eps: float) -> None:
    if abs(dist(*s) - 1.0) > eps:
        raise InvalidInput(f"strip base must have unit length, got {dist(*s)!r}")


def _bisector_heights(h_lo: float, h_hi: float) -> list[float]:
    if not h_hi > h_lo:
        return []
    return [h_lo + (h_hi - h_lo) * (k / V1_SAMPLES) for k in range(1, V1_SAMPLES)]


def _in_range(x: float, lo: float, hi: float) -> bool:
    return lo < x < hi


def _strip_bisector(strip: Strip) -> tuple[Point, Point, float]:
    """Midpoint, inward unit normal and the largest in-strip height on the bisector."""
    (p, q), d = strip.base, strip.dir
    mid = ((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0)
    sx, sy = q[0] - p[0], q[1] - p[1]
    side = 1.0 if sx * d[1] - sy * d[0] > 0 else -1.0
    ln = math.hypot(sx, sy)
    nrm = (-side * sy / ln, side * sx / ln)
    # mid + h nrm leaves the strip through a side ray at h = (1/2) tan(theta)
    h_max = 0.5 * ln * math.tan(strip.angle)
    return mid, nrm, h_max


def _lone_apex(strip: Strip, p: LayoutParams) -> Point:
    mid, nrm, h_max = _strip_bisector(strip)
    h = math.sqrt(p.leg_length**2 - 0.25)
    if h >= h_max:
        # the isosceles triangle with legs l does not fit; use the tallest one that does
        h_lo = math.sqrt(p.short_min**2 - 0.25)
        h = 0.5 * (h_lo + h_max) if h_max > h_lo else -1.0
        if h <= h_lo:
            raise InfeasiblePlacement(
                f"strip angle {math.degrees(strip.angle):.3g} deg leaves no room for an apex with legs > {p.short_min}"
            )
    return _add(mid, nrm, h)


def _ladder(seq: tuple[int, ...], pos: dict[int, Point], even: Point, odd: Point) -> None:
    for j in range(2, len(seq)):
        pos[seq[j]] = _add(pos[seq[j - 2]], even if j % 2 == 0 else odd)


def _extreme_sq(w: Point, dv: Point, jmax: int) -> tuple[float, float]:
    """Min and max of ``|w + j dv|^2`` over real ``j`` in ``[0, jmax]``."""
    a = dv[0] * dv[0] + dv[1] * dv[1]
    b = 2.0 * (w[0] * dv[0] + w[1] * dv[1])
    c0 = w[0] * w[0] + w[1] * w[1]
    end = c0 + jmax * (b + a * jmax)
    lo, hi = min(c0, end), max(c0, end)
    if a > 0:
        j = -b / (2.0 * a)
        if 0 < j < jmax:
            lo = min(lo, c0 - b * b / (4.0 * a))
    return lo, hi


def _rungs_ok(p0: Point, q0: Point, u_even: Point, u_odd: Point, m: int, lo: float) -> bool:
    """Every rung of the ladder ``seq[0] = p0, seq[1] = q0`` of length ``m`` lies in ``(lo, 1)``.

    Rungs ``(seq[2j], seq[2j+1])`` are ``(q0 - p0) + j (u_odd - u_even)`` and
    rungs ``(seq[2j+1], seq[2j+2])`` are ``(p0 + u_even - q0) + j (u_even - u_odd)``.
    """
    dv = (u_odd[0] - u_even[0], u_odd[1] - u_even[1])
    w1 = (q0[0] - p0[0], q0[1] - p0[1])
    w2 = (p0[0] + u_even[0] - q0[0], p0[1] + u_even[1] - q0[1])
    lo2 = lo * lo
    mn, mx = _extreme_sq(w1, dv, (m - 2) // 2)
    if not (lo2 < mn and mx < 1.0):
        return False
    if m >= 3:
        mn, mx = _extreme_sq(w2, (-dv[0], -dv[1]), (m - 3) // 2)
        if not (lo2 < mn and mx < 1.0):
            return False
    return True


def _chain_ok(c: Chain, pos: dict[int, Point], strip: Strip, lo: float, eps: float) -> str | None:
    """Cheap post-check of the ladder: lengths, orientation and strip containment."""
    for a, b in c.short_edges():
        ln = dist(pos[a], pos[b])
        if not lo < ln < 1.0:
            return f"short edge {(a, b)} has length {ln!r}"
    if not c.is_degenerate:
        v0m, v0p = c.root_edge
        # consecutive triangles must lie on opposite sides of their common edge
        # (edge, vertex beyond it on the inner side, vertex beyond it on the outer side)
        pl, mi = c.plus, c.minus
        pairs = [(pl[i - 1], pl[i], pl[i - 2] if i >= 2 else v0m, pl[i + 1]) for i in range(1, len(pl) - 1)]
        pairs += [(mi[k - 1], mi[k], mi[k - 2] if k >= 2 else v0p, mi[k + 1]) for k in range(1, len(mi) - 1)]
        if len(pl) == 2 and len(mi) < 3:
            pairs.append((v0m, v0p, pl[1], pl[1]))
        for a, b, x, y in pairs:
            ox = orient(pos[a], pos[b], pos[x])
            oy = orient(pos[a], pos[b], pos[y])
            if not (abs(ox) > eps and abs(oy) > eps and ((ox > 0) != (oy > 0) or x == y)):
                return f"triangles at edge {(a, b)} fold over each other"
    for v in c.vertices:
        if not strip.contains(pos[v], eps):
            return f"vertex {v} leaves the strip"
    return _external_strips_clear(c, pos, strip.dir, eps)


def _external_strips_clear(c: Chain, pos: dict[int, Point], d: Point, eps: float) -> str | None:
    """Strips over the external edges are pairwise disjoint and hold no chain vertex.

    Two strips with the same direction meet iff their extents across ``d``
    overlap, so both tests work on ``u(x) = d x x``, with vertices sorted by ``u``.
    """
    ext = c.external_edges()
    if not ext:
        return None

    def u_of(x: Point) -> float:
        return d[0] * x[1] - d[1] * x[0]

    spans = sorted((min(u_of(pos[a]), u_of(pos[b])), max(u_of(pos[a]), u_of(pos[b])), (a, b)) for a, b in ext)
    for (_, hi0, e0), (lo1, _, e1) in zip(spans, spans[1:]):
        if lo1 < hi0 - eps:
            return f"strips over external edges {e0} and {e1} overlap"
    verts = sorted((u_of(pos[v]), v) for v in c.vertices)
    keys = [k for k, _ in verts]
    for lo_u, hi_u, (a, b) in spans:
        es = Strip((pos[a], pos[b]), d)
        i = bisect.bisect_left(keys, lo_u - eps)
        while i < len(verts) and keys[i] <= hi_u + eps:
            v = verts[i][1]
            i += 1
            if v == a or v == b:
                continue
            t, h = es.coords(pos[v])
            if eps < t < 1.0 - eps and h > eps:
                return f"vertex {v} inside the strip of external edge {(a, b)}"
    return None


def draw_chain_in_strip(
    c: Chain,
    s: Segment,
    d: Point,
    p: LayoutParams | None = None,
    *,
    check_angle: bool = True,
    debug: bool = False,
) -> ChainFragment:
    """Draw chain ``c`` with its root edge ``(v0-, v0+)`` on ``s`` inside ``S(s, d)``.

    ``s[0]`` is the position of ``v0-`` and ``s[1]`` that of ``v0+``.  The
    strip angle must be acute at ``v0+`` whenever the chain has a plus side.
    """
    p = p or LayoutParams()
    _check_segment(s, p.eps_num)
    nd = math.hypot(*d)
    if abs(nd - 1.0) > p.eps_num:
        raise InvalidInput(f"direction must be a unit vector, got norm {nd!r}")
    strip = Strip(s, d)
    theta = strip.angle
    if check_angle and not theta < p.angle_limit:
        raise AngleTooLarge(
            f"angle {math.degrees(theta):.4g} deg between base and direction is not below "
            f"{math.degrees(p.angle_limit):.4g} deg"
        )
    if theta <= 0.0:
        raise AngleTooLarge("direction is parallel to the strip base")
    v0m, v0p = c.root_edge
    pos: dict[int, Point] = {v0m: s[0], v0p: s[1]}
    lo = p.short_min
    if c.is_degenerate:
        return ChainFragment(c, strip, pos, {}, 0.0, lo, "edge")
    v1 = c.plus[1]
    has_plus = len(c.plus) >= 3
    has_minus = len(c.minus) >= 3
    if not has_plus and not has_minus:
        pos[v1] = _lone_apex(strip, p)
        return ChainFragment(c, strip, pos, {}, 0.0, lo, "lone")
    # sign of the turn that moves a ray from v0+ towards v0-
    sigma = 1.0 if d[0] * (s[0][1] - s[1][1]) - d[1] * (s[0][0] - s[1][0]) > 0 else -1.0
    mid, nrm, h_max = _strip_bisector(strip)
    hi_sample = 1.0 - p.short_margin
    h_lo = math.sqrt(lo * lo - 0.25)
    h_hi = min(math.sqrt(hi_sample * hi_sample - 0.25), h_max)
    heights = _bisector_heights(h_lo, h_hi)
    r_cap = p.rotation_cap()
    reason = "empty feasibility region for v1"
    for attempt in range(p.max_retries + 1):
        r = r_cap / (2.0**attempt)
        toward_m = _rot(d, sigma * r)
        toward_p = _rot(d, -sigma * r)
        v1_pos = None
        for h in heights:
            x = _add(mid, nrm, h)
            if not strip.contains(x):
                continue
            if has_plus and not _in_range(dist(x, _add(s[1], toward_m)), lo, hi_sample):
                continue
            if has_minus and not _in_range(dist(_add(x, toward_m), s[0]), lo, hi_sample):
                continue
            if has_plus and not _rungs_ok(s[1], x, toward_m, toward_p, len(c.plus), lo):
                continue
            if has_minus and not _rungs_ok(x, s[0], toward_m, toward_p, len(c.minus), lo):
                continue
            v1_pos = x
            break
        if v1_pos is None:
            continue
        pos[v1] = v1_pos
        # plus rails start at v0+ and v1, minus rails at v1 and v0-
        if has_plus:
            _ladder(c.plus, pos, toward_m, toward_p)
        if has_minus:
            _ladder(c.minus, pos, toward_m, toward_p)
        bad = _chain_ok(c, pos, strip, lo, p.eps_num)
        if bad is None:
            pre = None
            if debug:
                pre = {v0m: s[0], v0p: s[1], v1: v1_pos}
                if has_plus:
                    _ladder(c.plus, pre, d, d)
                if has_minus:
                    _ladder(c.minus, pre, d, d)
            ext = {e: (pos[e[0]], pos[e[1]]) for e in c.external_edges()}
            case = "two-sided" if has_plus and has_minus else "one-sided"
            return ChainFragment(c, strip, pos, ext, r, lo, case, pre)
        reason = bad
    raise InfeasiblePlacement(
        f"chain {c.index} (root edge {c.root_edge}, strip angle {math.degrees(theta):.3g} deg, "
        f"short margin {p.short_margin:.3g}): {reason}"
    )


# ---------------------------------------------------------------------------
# whole graph


def _root_placement(p: LayoutParams, lone: bool = False) -> tuple[Segment, Point]:
    """Root segment (0,0)->(1,0) for (v0-, v0+) and ``d`` leaning over it.

    A lone root triangle gets a steeper strip so that legs of length ``l`` fit.
    """
    ang = p.root_angle if p.root_angle is not None else (LONE_ROOT_ANGLE if lone else ROOT_ANGLE)
    return ((0.0, 0.0), (1.0, 0.0)), (-math.cos(ang), math.sin(ang))


def _draw_tree(
    g: MaximalOuterplanarGraph, ct: ChainTree, p: LayoutParams, fragments: list[ChainFragment]
) -> Drawing:
    """Draw all chains breadth first; finished fragments are appended to ``fragments``."""
    n = g.vertex_count
    pos: list[Point | None] = [None] * n
    rc = ct.chains[ct.root]
    s, d = _root_placement(p, lone=not rc.is_degenerate and len(rc.plus) < 3 and len(rc.minus) < 3)
    segs: dict[int, Segment] = {ct.root: s}
    queue = deque([ct.root])
    while queue:
        ci = queue.popleft()
        c = ct.chains[ci]
        frag = draw_chain_in_strip(c, segs[ci], d, p)
        fragments.append(frag)
        for v, x in frag.positions.items():
            pos[v] = x
        for child in ct.children[ci]:
            cm, cp = ct.chains[child].root_edge
            segs[child] = (frag.external[(cp, cm)][1], frag.external[(cp, cm)][0])
            queue.append(child)
    if any(x is None for x in pos):
        raise InfeasiblePlacement("some vertex was not placed")
    edge_class = {e: cls for e, cls in ct.edge_class().items()}
    return Drawing(
        positions=tuple(pos),  # type: ignore[arg-type]
        edges=tuple(sorted(g.edges)),
        edge_class=edge_class,
        graph=g.graph,
        meta={"strip": Strip(s, d).to_json(), "params": p.to_json(), "root_edge": list(root_edge_of(ct))},
        fragments=fragments,
    )


def root_edge_of(ct: ChainTree) -> tuple[int, int]:
    return ct.chains[ct.root].root_edge


def draw_maximal(
    g: MaximalOuterplanarGraph,
    e_prime: tuple[int, int] | None = None,
    p: LayoutParams | None = None,
) -> Drawing:
    """Draw every chain of the decomposition rooted at ``e_prime`` in its strip.

    On ``InfeasiblePlacement`` the short margin and the rotation cap are
    halved and the whole drawing is recomputed, at most ``max_retries``
    times.
    """
    p = p or LayoutParams()
    ct = chain_decompose(g, e_prime, rule="strip")
    cur = p
    last: InfeasiblePlacement | None = None
    emitted: list[ChainFragment] = []
    for attempt in range(p.max_retries + 1):
        done: list[ChainFragment] = []
        try:
            dr = _draw_tree(g, ct, cur, done)
        except InfeasiblePlacement as exc:
            last = exc
            emitted.extend(done)
            cur = cur.shrunk()
            continue
        dr.meta["retries"] = attempt
        dr.meta["short_margin"] = cur.short_margin
        return dr
    raise InfeasiblePlacement(f"placement failed after {p.max_retries} retries: {last}", emitted)


# ---------------------------------------------------------------------------
# unit-length bipartite drawing


def _face_index(q: QuadrangulatedGraph) -> dict[Edge, list[int]]:
    out: dict[Edge, list[int]] = {}
    for fi, f in enumerate(q.faces):
        for i in range(4):
            out.setdefault(norm_edge(f[i], f[(i + 1) % 4]), []).append(fi)
    return out


def _oriented_face(f: tuple[int, ...], a: int, b: int) -> tuple[int, int, int, int]:
    """Rotate/reflect face ``f`` so that it reads ``(a, b, x, y)``."""
    i = f.index(a)
    fw = [f[(i + k) % 4] for k in range(4)]
    if fw[1] == b:
        return (fw[0], fw[1], fw[2], fw[3])
    bw = [f[(i - k) % 4] for k in range(4)]
    if bw[1] == b:
        return (bw[0], bw[1], bw[2], bw[3])
    raise NotQuadrangulated(f"edge {(a, b)} is not a side of face {f}")


def _sizes(q: QuadrangulatedGraph, by_edge: dict[Edge, list[int]], root_face: int) -> list[int]:
    """Number of faces in the subtree below every face of the dual tree."""
    parent = {root_face: -1}
    order = [root_face]
    for fi in order:
        f = q.faces[fi]
        for i in range(4):
            for fj in by_edge[norm_edge(f[i], f[(i + 1) % 4])]:
                if fj != fi and fj not in parent:
                    parent[fj] = fi
                    order.append(fj)
    size = [1] * len(q.faces)
    for fi in reversed(order):
        if parent[fi] >= 0:
            size[parent[fi]] += size[fi]
    return size


def draw_bipartite_in_wedge(
    q: QuadrangulatedGraph,
    e: tuple[int, int],
    w: Wedge,
    p: LayoutParams | None = None,
    *,
    split: str = "weighted",
) -> Drawing:
    """Unit-length drawing of ``q`` inside ``w`` with edge ``e`` on ``w.base``.

    Each face is a rhombus on the edge it is entered through; its far side
    is the entry edge translated along the bisector of the two wedge rays.
    The wedge excess ``alpha_W - pi`` is handed to the (up to three) sub
    wedges: ``split="even"`` gives each a third, ``"weighted"`` shares it in
    proportion to the number of faces behind each side.
    """
    p = p or LayoutParams()
    if split not in ("even", "weighted"):
        raise InvalidInput(f"unknown split {split!r}")
    n = q.vertex_count
    a0, b0 = e
    if not q.graph.is_outer_edge(a0, b0):
        raise InvalidInput(f"edge {tuple(e)} is not on the outer face")
    if abs(dist(*w.base) - 1.0) > p.eps_num:
        raise InvalidInput("wedge base must have unit length")
    if not w.wedge_angle > math.pi:
        raise WedgeTooNarrow(f"wedge angle {w.wedge_angle!r} is not above pi")
    for f in q.faces:
        if len(set(f)) != 4:
            raise NotQuadrangulated(f"face {f} is not a quadrilateral")
    pos: list[Point | None] = [None] * n
    pos[a0], pos[b0] = w.base
    by_edge = _face_index(q)
    start = by_edge.get(norm_edge(a0, b0), [])
    if not start:
        return Drawing(tuple(pos), tuple(sorted(q.base.edges)), {})  # type: ignore[arg-type]
    size = _sizes(q, by_edge, start[0])
    stack: list[tuple[int, int, int, Wedge]] = [(start[0], a0, b0, w)]
    while stack:
        fi, a, b, wd = stack.pop()
        u1, u2, u3, u4 = _oriented_face(q.faces[fi], a, b)
        big_e = wd.wedge_angle - math.pi
        if not big_e > 0:
            raise WedgeTooNarrow(f"sub-wedge over {(a, b)} has angle {wd.wedge_angle!r}")
        sides = [(u1, u4), (u4, u3), (u3, u2)]
        nxt = []
        for x, y in sides:
            others = [fj for fj in by_edge[norm_edge(x, y)] if fj != fi]
            nxt.append(others[0] if others else None)
        if split == "even":
            shares = [1.0, 1.0, 1.0]
        else:
            shares = [(size[f] if f is not None else 0) + 0.1 for f in nxt]
        tot = sum(shares)
        eps1, eps2, _ = (big_e * s_ / tot for s_ in shares)
        a1 = eps1 + eps2 / 2.0
        base_dir = direction(*wd.base)
        b_dir = unit(base_dir + wd.alpha1 - a1)
        p_pt, q_pt = wd.base
        pos[u4] = _add(p_pt, b_dir)
        pos[u3] = _add(q_pt, b_dir)
        e_a = _rot(b_dir, eps2 / 2.0)
        e_b = _rot(b_dir, -eps2 / 2.0)
        subs = [
            Wedge((p_pt, pos[u4]), wd.dir1, e_a),  # type: ignore[arg-type]
            Wedge((pos[u4], pos[u3]), e_a, e_b),  # type: ignore[arg-type]
            Wedge((pos[u3], q_pt), e_b, wd.dir2),  # type: ignore[arg-type]
        ]
        for (x, y), fj, sw in zip(sides, nxt, subs):
            if fj is not None:
                stack.append((fj, x, y, sw))
    if any(x is None for x in pos):
        raise InvalidInput("graph has vertices outside the faces reachable from the root edge")
    return Drawing(
        positions=tuple(pos),  # type: ignore[arg-type]
        edges=tuple(sorted(q.edges)),
        edge_class={ed: "unit" for ed in q.edges},
        graph=q.graph,
        meta={"wedge": w.to_json(), "split": split},
    )


def default_wedge(alpha: float = 0.75 * math.pi) -> Wedge:
    """Symmetric root wedge over (0,0)->(1,0) with base angles ``alpha``."""
    return Wedge.from_angles(((0.0, 0.0), (1.0, 0.0)), alpha, alpha)


# ---------------------------------------------------------------------------
# pipeline


def draw(g: OuterplanarGraph, p: LayoutParams | None = None, e_prime: tuple[int, int] | None = None) -> Drawing:
    """Bipartite inputs get the unit wedge drawing, all others the strip drawing.

    Edges added by the augmentation are dropped from the reported edge set;
    positions are kept.
    """
    p = p or LayoutParams()
    try:
        coloring = bipartition(g)
    except NotBipartite:
        coloring = None
    if coloring is not None:
        q = quadrangulate_bipartite(g, coloring)
        e = e_prime or min(g.outer_edges)
        dr = draw_bipartite_in_wedge(q, e, default_wedge(), p)
        dr.edges = tuple(sorted(g.edges))
        dr.edge_class = {ed: "unit" for ed in g.edges}
        dr.graph = g
        dr.meta["added_edges"] = [list(x) for x in sorted(q.added_edges)]
        dr.meta["method"] = "wedge"
        return dr
    m = triangulate(g)
    dr = draw_maximal(m, e_prime, p)
    dr.edges = tuple(sorted(g.edges))
    dr.edge_class = {ed: cls for ed, cls in dr.edge_class.items() if ed in g.edges}
    dr.graph = g
    dr.meta["added_edges"] = [list(x) for x in sorted(m.added_edges)]
    dr.meta["method"] = "strip"
    return dr


def naive_nested_draw(eg: EmbeddedGraph, p: LayoutParams | None = None) -> Drawing:
    """Embedding preserving drawing of a nested family member.

    The base triangle is equilateral.  A new vertex on edge ``(a, b)`` of face
    ``(a, b, x)`` goes to the centroid of ``a``, ``b`` and the incenter of the
    face, so the two vertices sharing a face land in disjoint thirds of it.
    """
    p = p or LayoutParams()
    n = eg.graph.vertex_count
    pos: list[Point | None] = [None] * n
    pos[0], pos[1], pos[2] = (0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0)
    for v in range(3, n):
        a, b = eg.parent_edge[v]
        face = eg.face_assignment[v]
        (opp,) = [x for x in face if x not in (a, b)]
        pa, pb, po = pos[a], pos[b], pos[opp]
        assert pa is not None and pb is not None and po is not None
        if abs(orient(pa, pb, po)) / 2.0 <= p.eps_num:
            raise PlacementDegenerate(f"face {face} has collapsed (area <= {p.eps_num})")
        wa, wb, wo = dist(pb, po), dist(pa, po), dist(pa, pb)
        tot = wa + wb + wo
        ix = (wa * pa[0] + wb * pb[0] + wo * po[0]) / tot
        iy = (wa * pa[1] + wb * pb[1] + wo * po[1]) / tot
        pos[v] = ((pa[0] + pb[0] + ix) / 3.0, (pa[1] + pb[1] + iy) / 3.0)
    return Drawing(
        positions=tuple(pos),  # type: ignore[arg-type]
        edges=tuple(sorted(eg.graph.edges)),
        edge_class={},
        graph=eg.graph,
        meta={"method": "nested", "levels": eg.levels},
    )


__all__ = [
    "THETA0",
    "GUARD",
    "LayoutParams",
    "Strip",
    "Wedge",
    "ChainFragment",
    "Drawing",
    "draw_chain_in_strip",
    "draw_maximal",
    "draw_bipartite_in_wedge",
    "default_wedge",
    "draw",
    "naive_nested_draw",
]
