"""Instance families: fan with pendant triangles, the nested family, random
maximal outerplanar graphs, and the closed-form area/packing bounds."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import EpsilonOutOfRange, NonPositiveDelta, SizeLimit
from .graph_core import (
    Edge,
    MaximalOuterplanarGraph,
    OuterplanarGraph,
    build_graph,
    norm_edge,
)

NESTED_MAX_LEVEL = 20


@dataclass(frozen=True)
class FanPendant:
    """Metadata for a fan-with-pendants instance."""

    k: int
    apex: int
    rim: tuple[int, ...]
    pendants: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class EmbeddedGraph:
    """A member of the nested family together with its prescribed embedding.

    ``face_assignment[v]`` is the triangle (as a vertex triple) whose interior
    must contain ``v``; ``parent_edge[v]`` is the distinguished edge ``v`` was
    attached to and ``level[v]`` the construction round that created it.
    """

    graph: OuterplanarGraph
    levels: int
    face_assignment: dict[int, tuple[int, int, int]]
    parent_edge: dict[int, Edge]
    level: tuple[int, ...]
    distinguished_edges: frozenset[Edge]


def gen_fan_pendant(k: int) -> MaximalOuterplanarGraph:
    """Fan around apex 0 with rim path 1..k+2 and one pendant per rim edge.

    The pendant vertex on rim edge ``(i, i+1)`` has id ``k + 2 + i``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = 2 * k + 4
    rim = list(range(1, k + 3))
    edges: set[Edge] = set()
    for r in rim:
        edges.add((0, r))
    cycle = [0]
    for i in range(1, k + 2):
        p = k + 2 + i
        edges.add((i, i + 1))
        edges.add(norm_edge(i, p))
        edges.add(norm_edge(i + 1, p))
        cycle.extend([i, p])
    cycle.append(k + 2)
    g = build_graph(n, edges, cycle)
    return MaximalOuterplanarGraph(g, frozenset(), g)


def fan_pendant_info(k: int) -> FanPendant:
    return FanPendant(k, 0, tuple(range(1, k + 3)), tuple(range(k + 3, 2 * k + 4)))


def gen_nested_family(n: int, max_level: int = NESTED_MAX_LEVEL) -> EmbeddedGraph:
    """Level-``n`` member of the nested family.

    Level 0 is the triangle (0, 1, 2) with distinguished edges (0, 1) and
    (0, 2).  Every round attaches a new vertex to each distinguished edge;
    the two edges of the new vertex become the next distinguished edges.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > max_level:
        raise SizeLimit(f"level {n} exceeds the cap {max_level} ({2 ** (n + 1) + 1} vertices)")
    edges: set[Edge] = {(0, 1), (0, 2), (1, 2)}
    level = [0, 0, 0]
    face: dict[int, tuple[int, int, int]] = {}
    parent: dict[int, Edge] = {}
    # each distinguished edge remembers the triangle it bounds on its inner side
    distinguished: list[tuple[Edge, tuple[int, int, int]]] = [
        ((0, 1), (0, 1, 2)),
        ((0, 2), (0, 1, 2)),
    ]
    nxt = 3
    for lv in range(1, n + 1):
        new: list[tuple[Edge, tuple[int, int, int]]] = []
        for (a, b), tri in distinguished:
            v = nxt
            nxt += 1
            level.append(lv)
            face[v] = tri
            parent[v] = (a, b)
            edges.add(norm_edge(a, v))
            edges.add(norm_edge(b, v))
            created = (a, b, v)
            new.append((norm_edge(a, v), created))
            new.append((norm_edge(b, v), created))
        distinguished = new
    cycle = _nested_outer_cycle(nxt, parent)
    g = build_graph(nxt, edges, cycle)
    return EmbeddedGraph(
        graph=g,
        levels=n,
        face_assignment=face,
        parent_edge=parent,
        level=tuple(level),
        distinguished_edges=frozenset(e for e, _ in distinguished),
    )


def _nested_outer_cycle(vertex_count: int, parent: dict[int, Edge]) -> list[int]:
    """Outer cycle of the abstract (outerplanar) nested graph.

    Each new vertex is an ear on its parent edge, so it is spliced into the
    cycle between the two endpoints of that edge.
    """
    nxt = {0: 1, 1: 2, 2: 0}
    for v in range(3, vertex_count):
        a, b = parent[v]
        if nxt[a] != b:
            a, b = b, a
        nxt[a] = v
        nxt[v] = b
    cycle = [0]
    cur = nxt[0]
    while cur != 0:
        cycle.append(cur)
        cur = nxt[cur]
    return cycle


def gen_random_maximal_outerplanar(n: int, seed: int) -> MaximalOuterplanarGraph:
    """Triangulate the polygon 0..n-1 by clipping uniformly random ears.

    While more than three polygon vertices remain, a random vertex is chosen,
    its two polygon neighbours are joined by a chord and it is removed.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = random.Random(seed)
    prv = [(i - 1) % n for i in range(n)]
    nxt = [(i + 1) % n for i in range(n)]
    alive = list(range(n))
    edges: set[Edge] = {norm_edge(i, (i + 1) % n) for i in range(n)}
    while len(alive) > 3:
        j = rng.randrange(len(alive))
        v = alive[j]
        alive[j] = alive[-1]
        alive.pop()
        a, b = prv[v], nxt[v]
        edges.add(norm_edge(a, b))
        nxt[a] = b
        prv[b] = a
    g = build_graph(n, edges, list(range(n)))
    return MaximalOuterplanarGraph(g, frozenset(), g)


def gen_random_bipartite_outerplanar(n: int, seed: int, chord_rate: float = 0.7) -> OuterplanarGraph:
    """Even cycle 0..n-1 with random chords that keep every face even.

    Faces are processed in a queue; a face with at least 6 vertices receives
    a chord with probability ``chord_rate`` between two of its vertices an
    odd number of steps apart (at least 3 either way), which splits it into
    two even faces.
    """
    if n < 4 or n % 2:
        raise ValueError("n must be an even number of at least 4")
    rng = random.Random(seed)
    edges: set[Edge] = {norm_edge(i, (i + 1) % n) for i in range(n)}
    faces = [list(range(n))]
    while faces:
        f = faces.pop()
        m = len(f)
        if m < 6 or rng.random() >= chord_rate:
            continue
        i = rng.randrange(m)
        j = i + rng.randrange(3, m - 2, 2)
        rot = f[i:] + f[:i]
        k = j - i
        edges.add(norm_edge(rot[0], rot[k]))
        faces.append(rot[: k + 1])
        faces.append(rot[k:] + rot[:1])
    return build_graph(n, edges, list(range(n)))


def min_triangle_area(delta: float) -> float:
    """Smallest area of a triangle with longest side 1 and other sides >= 1/2 + delta."""
    if not delta > 0:
        raise NonPositiveDelta(f"delta must be positive, got {delta}")
    return 0.5 * math.sqrt(delta + delta * delta)


def delta_from_epsilon(epsilon: float) -> float:
    return epsilon / (2.0 * (2.0 - epsilon))


def packing_bound(delta: float) -> float:
    """Upper bound on the number of such triangles packed in a radius-2 disk."""
    if not delta > 0:
        raise NonPositiveDelta(f"delta must be positive, got {delta}")
    return 8.0 * math.pi / math.sqrt(delta + delta * delta)


def required_k(epsilon: float) -> int:
    """Smallest integer k strictly above the packing bound for ratio 2 - epsilon."""
    if not 0 < epsilon < 2:
        raise EpsilonOutOfRange(f"epsilon must lie in (0, 2), got {epsilon}")
    return math.floor(packing_bound(delta_from_epsilon(epsilon))) + 1
