"""Outerplanar graph representation, recognition and augmentation.

A 2-connected outerplanar graph has a unique outerplanar embedding, which is
fully described by its outer (Hamiltonian) cycle.  All routines here work on
that cycle: faces are traced with the rotation system induced by the cycle
order, chords are inserted inside faces, and the dual tree is read off the
triangles of a maximal outerplanar graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    EmptyOrTrivial,
    InvalidInput,
    NotBiconnected,
    NotBipartite,
    NotOuterplanar,
)

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    """Return the undirected edge ``{u, v}`` as a sorted pair."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class OuterplanarGraph:
    """A 2-connected outerplanar graph together with its outer cycle.

    ``rotation[v]`` lists the neighbours of ``v`` ordered by their cyclic
    offset along ``outer_cycle``: the cycle successor of ``v`` comes first and
    its cycle predecessor last.
    """

    vertex_count: int
    edges: frozenset[Edge]
    outer_cycle: tuple[int, ...]
    rotation: tuple[tuple[int, ...], ...]

    @cached_property
    def position(self) -> list[int]:
        pos = [0] * self.vertex_count
        for i, v in enumerate(self.outer_cycle):
            pos[v] = i
        return pos

    @cached_property
    def outer_edges(self) -> frozenset[Edge]:
        cyc = self.outer_cycle
        k = len(cyc)
        return frozenset(norm_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k))

    @property
    def n(self) -> int:
        return self.vertex_count

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def is_outer_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.outer_edges

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OuterplanarGraph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.edges == other.edges
            and self.outer_cycle == other.outer_cycle
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges, self.outer_cycle))


@dataclass(frozen=True, eq=False)
class MaximalOuterplanarGraph:
    """Triangulated outerplanar graph obtained from ``base``.

    ``graph`` is the augmented graph; ``added_edges`` are the chords that were
    inserted (empty when ``base`` was already maximal).
    """

    base: OuterplanarGraph
    added_edges: frozenset[Edge]
    graph: OuterplanarGraph

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def edges(self) -> frozenset[Edge]:
        return self.graph.edges

    @property
    def outer_cycle(self) -> tuple[int, ...]:
        return self.graph.outer_cycle

    @cached_property
    def triangles(self) -> list[tuple[int, int, int]]:
        return [tuple(f) for f in inner_faces(self.graph)]  # type: ignore[misc]


@dataclass(frozen=True, eq=False)
class QuadrangulatedGraph:
    """Bipartite outerplanar graph whose inner faces are all quadrilaterals."""

    base: OuterplanarGraph
    added_edges: frozenset[Edge]
    graph: OuterplanarGraph
    coloring: tuple[int, ...]
    faces: tuple[tuple[int, int, int, int], ...]

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def edges(self) -> frozenset[Edge]:
        return self.graph.edges

    @property
    def outer_cycle(self) -> tuple[int, ...]:
        return self.graph.outer_cycle


@dataclass(frozen=True)
class DualTree:
    """Tree whose nodes are the triangles of a maximal outerplanar graph."""

    triangles: tuple[tuple[int, int, int], ...]
    adjacency: tuple[tuple[int, int], ...]
    shared_edge: dict[tuple[int, int], Edge] = field(hash=False, compare=False)

    def neighbors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.triangles]
        for a, b in self.adjacency:
            out[a].append(b)
            out[b].append(a)
        return out


# ---------------------------------------------------------------------------
# construction helpers


def _check_edge_list(vertex_count: int, edge_list: Iterable[Sequence[int]]) -> list[Edge]:
    if vertex_count < 3:
        raise EmptyOrTrivial(f"need at least 3 vertices, got {vertex_count}")
    seen: set[Edge] = set()
    out: list[Edge] = []
    for item in edge_list:
        if len(item) != 2:
            raise InvalidInput(f"edge {item!r} does not have two endpoints")
        u, v = int(item[0]), int(item[1])
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise InvalidInput(f"edge ({u}, {v}) uses a vertex outside 0..{vertex_count - 1}")
        if u == v:
            raise InvalidInput(f"loop at vertex {u}")
        e = norm_edge(u, v)
        if e in seen:
            raise InvalidInput(f"duplicate edge {e}")
        seen.add(e)
        out.append(e)
    return out


def _adjacency(vertex_count: int, edges: Iterable[Edge]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(vertex_count)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _check_biconnected(adj: list[set[int]]) -> None:
    """Raise NotBiconnected if the graph is disconnected or has a cut vertex."""
    n = len(adj)
    disc = [-1] * n
    low = [0] * n
    nbrs = [list(a) for a in adj]
    disc[0] = 0
    counter = 1
    root_children = 0
    stack: list[tuple[int, int, int]] = [(0, -1, 0)]
    while stack:
        v, parent, idx = stack[-1]
        if idx < len(nbrs[v]):
            stack[-1] = (v, parent, idx + 1)
            w = nbrs[v][idx]
            if disc[w] == -1:
                disc[w] = low[w] = counter
                counter += 1
                stack.append((w, v, 0))
                if v == 0:
                    root_children += 1
            elif w != parent:
                low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if parent != 0 and low[v] >= disc[parent]:
                    raise NotBiconnected(f"vertex {parent} is a cut vertex")
    if counter < n:
        raise NotBiconnected("graph is disconnected")
    if root_children > 1:
        raise NotBiconnected("vertex 0 is a cut vertex")


def _rotation(vertex_count: int, adj: list[set[int]], pos: list[int]) -> tuple[tuple[int, ...], ...]:
    n = vertex_count
    return tuple(
        tuple(sorted(adj[v], key=lambda u, pv=pos[v]: (pos[u] - pv) % n)) for v in range(n)
    )


def _normalize_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at the smallest id, heading towards its smaller cycle neighbour."""
    k = len(cycle)
    i = min(range(k), key=lambda j: cycle[j])
    fwd = [cycle[(i + j) % k] for j in range(k)]
    if fwd[-1] < fwd[1]:
        fwd = [fwd[0]] + fwd[1:][::-1]
    return tuple(fwd)


def build_graph(vertex_count: int, edges: Iterable[Edge], outer_cycle: Sequence[int]) -> OuterplanarGraph:
    """Assemble an OuterplanarGraph from trusted parts (no validation)."""
    es = frozenset(edges)
    adj = _adjacency(vertex_count, es)
    pos = [0] * vertex_count
    for i, v in enumerate(outer_cycle):
        pos[v] = i
    return OuterplanarGraph(vertex_count, es, tuple(outer_cycle), _rotation(vertex_count, adj, pos))


def _outer_cycle_by_ear_reduction(vertex_count: int, adj: list[set[int]]) -> list[int]:
    """Recover the outer cycle of a 2-connected outerplanar graph.

    Degree-2 vertices are removed one at a time, joining their two
    neighbours by a (possibly virtual) edge.  Re-inserting them in reverse
    order between two cycle-consecutive vertices rebuilds the outer cycle;
    any failure along the way certifies that the graph is not outerplanar.
    """
    work = [set(a) for a in adj]
    alive = vertex_count
    removed = [False] * vertex_count
    stack = [v for v in range(vertex_count - 1, -1, -1) if len(work[v]) == 2]
    record: list[tuple[int, int, int]] = []
    while alive > 3:
        while stack and (removed[stack[-1]] or len(work[stack[-1]]) != 2):
            stack.pop()
        if not stack:
            raise NotOuterplanar("no vertex of degree 2 left during ear reduction")
        v = stack.pop()
        a, b = sorted(work[v])
        removed[v] = True
        alive -= 1
        work[a].discard(v)
        work[b].discard(v)
        work[v].clear()
        record.append((v, a, b))
        if b in work[a]:
            for x in (a, b):
                if len(work[x]) == 2:
                    stack.append(x)
                elif len(work[x]) < 2:
                    raise NotOuterplanar("ear reduction produced a vertex of degree < 2")
        else:
            work[a].add(b)
            work[b].add(a)
    rest = [v for v in range(vertex_count) if not removed[v]]
    x, y, z = rest
    if not (y in work[x] and z in work[x] and z in work[y]):
        raise NotOuterplanar("ear reduction did not end in a triangle")
    nxt = {x: y, y: z, z: x}
    prv = {y: x, z: y, x: z}
    for v, a, b in reversed(record):
        if nxt[a] == b:
            pass
        elif nxt[b] == a:
            a, b = b, a
        else:
            raise NotOuterplanar(f"vertex {v} cannot be placed on the outer cycle")
        nxt[a] = v
        prv[v] = a
        nxt[v] = b
        prv[b] = v
    cycle = [x]
    cur = nxt[x]
    while cur != x:
        cycle.append(cur)
        cur = nxt[cur]
    return cycle


def recognize_outerplanar(
    vertex_count: int,
    edge_list: Iterable[Sequence[int]],
    outer_cycle: Sequence[int] | None = None,
) -> OuterplanarGraph:
    """Validate a 2-connected outerplanar graph and compute its embedding.

    When ``outer_cycle`` is supplied it is checked against the (unique)
    outer cycle instead of being trusted.
    """
    edges = _check_edge_list(vertex_count, edge_list)
    if len(edges) > 2 * vertex_count - 3:
        raise NotOuterplanar(f"{len(edges)} edges exceed the outerplanar bound 2n-3")
    adj = _adjacency(vertex_count, edges)
    _check_biconnected(adj)
    cycle = _outer_cycle_by_ear_reduction(vertex_count, adj)
    for i, v in enumerate(cycle):
        w = cycle[(i + 1) % len(cycle)]
        if w not in adj[v]:
            raise NotOuterplanar(f"outer cycle edge ({v}, {w}) is missing")
    cyc = _normalize_cycle(cycle)
    if outer_cycle is not None:
        given = [int(v) for v in outer_cycle]
        if len(given) != vertex_count or sorted(given) != list(range(vertex_count)):
            raise NotOuterplanar("supplied outer cycle is not a permutation of the vertices")
        if _normalize_cycle(given) != cyc:
            raise NotOuterplanar("supplied outer cycle does not bound the outer face")
    return build_graph(vertex_count, edges, cyc)


# ---------------------------------------------------------------------------
# faces and augmentation


def inner_faces(g: OuterplanarGraph) -> list[tuple[int, ...]]:
    """Inner faces as vertex tuples, each listed counter-clockwise.

    Vertices are taken to sit on a convex polygon in outer-cycle order; the
    face left of a directed edge ``u -> v`` continues with the neighbour of
    ``v`` that precedes ``u`` in ``rotation[v]``.
    """
    rot = g.rotation
    index = [{u: i for i, u in enumerate(r)} for r in rot]
    cyc = g.outer_cycle
    k = len(cyc)
    outer = g.outer_edges
    starts: list[tuple[int, int]] = [(cyc[i], cyc[(i + 1) % k]) for i in range(k)]
    for u, v in sorted(g.edges):
        if (u, v) not in outer:
            starts.append((u, v))
            starts.append((v, u))
    used: set[tuple[int, int]] = set()
    faces: list[tuple[int, ...]] = []
    for start in starts:
        if start in used:
            continue
        face = []
        u, v = start
        while (u, v) not in used:
            used.add((u, v))
            face.append(u)
            w = rot[v][index[v][u] - 1]
            u, v = v, w
        faces.append(tuple(face))
    return faces


def _rotate_to_min(face: Sequence[int]) -> list[int]:
    i = min(range(len(face)), key=lambda j: face[j])
    return list(face[i:]) + list(face[:i])


def triangulate(g: OuterplanarGraph) -> MaximalOuterplanarGraph:
    """Fan-triangulate every inner face from its lowest-id vertex."""
    added: set[Edge] = set()
    for face in inner_faces(g):
        if len(face) <= 3:
            continue
        f = _rotate_to_min(face)
        for j in range(2, len(f) - 1):
            added.add(norm_edge(f[0], f[j]))
    if not added:
        return MaximalOuterplanarGraph(g, frozenset(), g)
    full = build_graph(g.vertex_count, g.edges | added, g.outer_cycle)
    return MaximalOuterplanarGraph(g, frozenset(added), full)


def as_maximal(g: OuterplanarGraph) -> MaximalOuterplanarGraph:
    """Wrap an already maximal graph; raise if some inner face is not a triangle."""
    if len(g.edges) != 2 * g.vertex_count - 3:
        raise NotOuterplanar("graph is not maximal outerplanar")
    return MaximalOuterplanarGraph(g, frozenset(), g)


def bipartition(g: OuterplanarGraph) -> tuple[int, ...]:
    """Two-colour the graph by BFS from vertex 0 (which gets colour 0)."""
    n = g.vertex_count
    color = [-1] * n
    color[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in g.rotation[v]:
            if color[w] == -1:
                color[w] = 1 - color[v]
                queue.append(w)
            elif color[w] == color[v]:
                raise NotBipartite(f"edge ({v}, {w}) closes an odd cycle")
    return tuple(color)


def quadrangulate_bipartite(
    g: OuterplanarGraph, coloring: Sequence[int] | None = None
) -> QuadrangulatedGraph:
    """Split every inner face into quadrilaterals with bichromatic chords.

    A face ``f`` (rotated to start at its lowest id) longer than four gets
    the chord ``(f[0], f[3])``, which cuts off the quadrilateral
    ``f[0..3]``; the remainder is treated the same way.
    """
    if coloring is None:
        col = bipartition(g)
    else:
        col = tuple(int(c) for c in coloring)
        if len(col) != g.vertex_count:
            raise NotBipartite("colouring has the wrong length")
        for u, v in g.edges:
            if col[u] == col[v]:
                raise NotBipartite(f"edge ({u}, {v}) is monochromatic")
    added: set[Edge] = set()
    quads: list[tuple[int, int, int, int]] = []
    for face in inner_faces(g):
        if len(face) % 2:
            raise NotBipartite(f"inner face {face} has odd length")
        f = _rotate_to_min(face)
        # quadrilateral i is (f0, f[2i+1], f[2i+2], f[2i+3]); all but the last close with a chord
        last = (len(f) - 4) // 2
        for i in range(last + 1):
            quads.append((f[0], f[2 * i + 1], f[2 * i + 2], f[2 * i + 3]))
            if i < last:
                added.add(norm_edge(f[0], f[2 * i + 3]))
    full = build_graph(g.vertex_count, g.edges | added, g.outer_cycle) if added else g
    return QuadrangulatedGraph(g, frozenset(added), full, col, tuple(quads))


def dual_tree(g: MaximalOuterplanarGraph) -> DualTree:
    """Build the weak dual of a maximal outerplanar graph."""
    tris = tuple(g.triangles)
    owner: dict[Edge, int] = {}
    adjacency: list[tuple[int, int]] = []
    shared: dict[tuple[int, int], Edge] = {}
    for t, (a, b, c) in enumerate(tris):
        for e in (norm_edge(a, b), norm_edge(b, c), norm_edge(c, a)):
            other = owner.pop(e, None)
            if other is None:
                owner[e] = t
            else:
                adjacency.append((other, t))
                shared[(other, t)] = e
    return DualTree(tris, tuple(adjacency), shared)
