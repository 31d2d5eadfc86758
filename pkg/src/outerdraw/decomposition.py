"""Chain decomposition of a maximal outerplanar graph.

A chain grows from a root edge ``e = (v0-, v0+)`` through the triangle
``T0 = (v0-, v0+, v1)`` on the far side of ``e``.  The root endpoints get
label 0 and ``v1`` gets label 1.  Going one way ("plus") each new triangle
``T_i`` adds ``v_{i+1}`` opposite the edge ``(v_{i-1}, v_i)``; going the other
way ("minus") each ``T_{-k}`` adds ``v_{-k}``.  Edges whose endpoint labels
differ by one are short (S); the remaining chain edges, whose labels differ
by two, are long (L) together with the root edge.  Every L edge other than
the root starts a child chain on its far side.

Both sides are stored as vertex sequences that obey the same recurrence:

* ``plus = [v0+, v1, v2, ...]``: triangle ``i`` is ``plus[i-1..i+1]``;
* ``minus = [v1, v0-, v-1, v-2, ...]``: triangle ``-k`` is ``minus[k-1..k+1]``.

In both, the L edge of triangle ``j`` is ``(seq[j-1], seq[j+1])``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any

from .errors import EdgeNotOnOuterFace
from .graph_core import Edge, MaximalOuterplanarGraph, norm_edge


@dataclass(frozen=True)
class Chain:
    """One chain of the decomposition.

    ``triangles`` pairs each chain position with an index into the graph's
    triangle list.  A chain with no triangles is a degenerate leaf standing
    for an L edge with nothing beyond it.
    """

    index: int
    root_edge: tuple[int, int]
    plus: tuple[int, ...]
    minus: tuple[int, ...]
    triangles: tuple[tuple[int, int], ...]
    labels: dict[int, int] = field(compare=False, hash=False)
    parent: int | None = None

    @property
    def is_degenerate(self) -> bool:
        return not self.triangles

    @property
    def t(self) -> int:
        return max(len(self.plus) - 2, 0)

    @property
    def s(self) -> int:
        return -max(len(self.minus) - 2, 0)

    @property
    def vertices(self) -> list[int]:
        if self.is_degenerate:
            return list(self.root_edge)
        out = [self.root_edge[0], self.root_edge[1]]
        out.extend(self.plus[1:])
        out.extend(self.minus[2:])
        return out

    def external_edges(self) -> list[tuple[int, int]]:
        """Non-root L edges, plus side first, each as ``(seq[j-1], seq[j+1])``."""
        out = [(self.plus[i - 1], self.plus[i + 1]) for i in range(1, len(self.plus) - 1)]
        out += [(self.minus[k - 1], self.minus[k + 1]) for k in range(1, len(self.minus) - 1)]
        return out

    def short_edges(self) -> list[Edge]:
        if self.is_degenerate:
            return []
        out = [norm_edge(a, b) for a, b in zip(self.plus, self.plus[1:])]
        out.append(norm_edge(self.root_edge[0], self.plus[1]))
        out += [norm_edge(a, b) for a, b in zip(self.minus[1:], self.minus[2:])]
        return out

    def triangle_vertices(self) -> list[tuple[int, tuple[int, int, int]]]:
        if self.is_degenerate:
            return []
        a, b = self.root_edge
        out = [(0, (a, b, self.plus[1]))]
        p, m = self.plus, self.minus
        out += [(i, (p[i - 1], p[i], p[i + 1])) for i in range(1, len(p) - 1)]
        out += [(-k, (m[k - 1], m[k], m[k + 1])) for k in range(1, len(m) - 1)]
        return out


@dataclass
class ChainTree:
    """All chains, their tree structure and the induced L/S partition."""

    chains: list[Chain]
    children: list[list[int]]
    root: int
    long_edges: frozenset[Edge]
    short_edges: frozenset[Edge]
    chain_of_edge: dict[Edge, int]
    root_edge: Edge

    @property
    def partition(self) -> tuple[frozenset[Edge], frozenset[Edge]]:
        return self.long_edges, self.short_edges

    def edge_class(self) -> dict[Edge, str]:
        out = {e: "L" for e in self.long_edges}
        out.update({e: "S" for e in self.short_edges})
        return out

    def to_json(self) -> dict[str, Any]:
        chains = []
        for c in self.chains:
            chains.append(
                {
                    "index": c.index,
                    "parent": c.parent,
                    "root_edge": list(c.root_edge),
                    "children": self.children[c.index],
                    "triangles": [
                        {"position": pos, "vertices": list(tri)} for pos, tri in c.triangle_vertices()
                    ],
                    "labels": {str(v): lab for v, lab in sorted(c.labels.items())},
                    "external_edges": [list(e) for e in c.external_edges()],
                }
            )
        edges = self.edge_class()
        return {
            "root_edge": list(self.root_edge),
            "chains": chains,
            "edge_class": {f"{u}-{v}": edges[(u, v)] for u, v in sorted(edges)},
        }


class _TriangleIndex:
    """Edge -> incident triangles lookup for a maximal outerplanar graph."""

    def __init__(self, g: MaximalOuterplanarGraph) -> None:
        self.triangles = g.triangles
        self.by_edge: dict[Edge, list[int]] = {}
        for t, (a, b, c) in enumerate(self.triangles):
            for e in (norm_edge(a, b), norm_edge(b, c), norm_edge(a, c)):
                self.by_edge.setdefault(e, []).append(t)

    def across(self, u: int, v: int, not_t: int | None) -> int | None:
        for t in self.by_edge.get(norm_edge(u, v), ()):
            if t != not_t:
                return t
        return None

    def third(self, t: int, u: int, v: int) -> int:
        a, b, c = self.triangles[t]
        return a + b + c - u - v


def _grow_side(idx: _TriangleIndex, seq: list[int], tris: list[int], t_prev: int) -> None:
    """Extend a side sequence in place: triangle j lies across ``(seq[j], seq[j+1])``."""
    while True:
        u, v = seq[-2], seq[-1]
        t = idx.across(u, v, t_prev)
        if t is None:
            return
        seq.append(idx.third(t, u, v))
        tris.append(t)
        t_prev = t


def _build_chain(
    idx: _TriangleIndex,
    index: int,
    edge: Edge,
    t0: int | None,
    parent: int | None,
    load: list[int] | None = None,
    rule: str = "strip",
) -> tuple[Chain, list[tuple[tuple[int, int], int]]]:
    """Grow the maximal chain through ``t0`` and report its child seeds."""
    if t0 is None:
        root = (edge[1], edge[0]) if rule == "strip" else edge
        chain = Chain(index, root, (), (), (), {edge[0]: 0, edge[1]: 0}, parent)
        return chain, []
    a, b = edge
    v1 = idx.third(t0, a, b)
    ta = idx.across(a, v1, t0)
    tb = idx.across(b, v1, t0)
    # choose the plus side
    if rule == "strip":
        v0p, v0m = a, b
    elif ta is None and tb is None:
        v0m, v0p = (a, b) if a < b else (b, a)
    elif ta is None:
        v0m, v0p = a, b
    elif tb is None:
        v0m, v0p = b, a
    elif load is not None and load[a] != load[b]:
        v0m, v0p = (a, b) if load[a] < load[b] else (b, a)
    elif idx.third(tb, b, v1) < idx.third(ta, a, v1):
        v0m, v0p = a, b
    else:
        v0m, v0p = b, a
    plus = [v0p, v1]
    plus_t: list[int] = []
    _grow_side(idx, plus, plus_t, t0)
    minus = [v1, v0m]
    minus_t: list[int] = []
    _grow_side(idx, minus, minus_t, t0)
    if len(minus) == 2:
        minus = []
    labels = {v0m: 0, v0p: 0}
    for j, v in enumerate(plus[1:], start=1):
        labels[v] = j
    for k, v in enumerate(minus[2:], start=1):
        labels[v] = -k
    triangles = [(0, t0)] + [(i + 1, t) for i, t in enumerate(plus_t)]
    triangles += [(-(k + 1), t) for k, t in enumerate(minus_t)]
    chain = Chain(index, (v0m, v0p), tuple(plus), tuple(minus), tuple(triangles), labels, parent)
    seeds: list[tuple[tuple[int, int], int]] = []
    for i, t in enumerate(plus_t, start=1):
        seeds.append(((plus[i - 1], plus[i + 1]), t))
    for k, t in enumerate(minus_t, start=1):
        seeds.append(((minus[k - 1], minus[k + 1]), t))
    return chain, seeds


def default_root_edge(g: MaximalOuterplanarGraph) -> Edge:
    """Lexicographically smallest outer edge."""
    return min(g.graph.outer_edges)


PLUS_RULES = ("strip", "balanced", "min-id")


def opposite_vertex(chain: Chain, position: int, tri: tuple[int, int, int]) -> int:
    """Vertex of a chain triangle that lies opposite the triangle's L edge."""
    return tri[2] if position == 0 else tri[1]


def maximal_chain(g: MaximalOuterplanarGraph, e: tuple[int, int]) -> Chain:
    """The maximal chain grown from outer edge ``e``."""
    if not g.graph.is_outer_edge(*e):
        raise EdgeNotOnOuterFace(f"edge {tuple(e)} is not on the outer face")
    idx = _TriangleIndex(g)
    t0 = idx.across(e[0], e[1], None)
    chain, _ = _build_chain(idx, 0, (e[0], e[1]), t0, None, None, "min-id")
    return chain


def chain_decompose(
    g: MaximalOuterplanarGraph,
    e_prime: tuple[int, int] | None = None,
    rule: str = "strip",
) -> ChainTree:
    """Decompose ``g`` into chains rooted at outer edge ``e_prime``.

    ``rule`` decides which root endpoint becomes ``v0+``.  ``"strip"``
    (default) takes the first endpoint of the edge as handed down by the
    parent chain, that is the endpoint where the L edge starts along the
    common strip direction; the root chain uses ``e_prime`` as given.  This
    is the orientation the strip drawing needs: the strip angle is acute at
    that endpoint.  A chain may then grow on the minus side only.
    ``"min-id"`` puts the plus side where the new vertex id is
    smaller.  ``"balanced"`` makes ``v0-`` the endpoint that is so
    far opposite fewer L edges, since ``v0-`` is opposite the L edge of
    ``T_-1`` and every such angle exceeds 60 degrees in a drawing; ties fall
    back to the id rule; these two only reorder two-sided chains.
    """
    if rule not in PLUS_RULES:
        raise ValueError(f"unknown plus-side rule {rule!r}")
    if e_prime is None:
        e_prime = default_root_edge(g)
    if not g.graph.is_outer_edge(*e_prime):
        raise EdgeNotOnOuterFace(f"edge {tuple(e_prime)} is not on the outer face")
    idx = _TriangleIndex(g)
    load = [0] * g.vertex_count if rule == "balanced" else None
    root_e = (e_prime[0], e_prime[1]) if rule == "strip" else norm_edge(*e_prime)
    chains: list[Chain] = []
    children: list[list[int]] = []
    long_edges: set[Edge] = set()
    short_edges: set[Edge] = set()
    chain_of_edge: dict[Edge, int] = {}
    queue: deque[tuple[tuple[int, int], int | None, int | None]] = deque()
    queue.append((root_e, idx.across(*root_e, None), None))
    while queue:
        edge, t0, parent = queue.popleft()
        i = len(chains)
        chain, seeds = _build_chain(idx, i, edge, t0, parent, load, rule)
        if load is not None:
            for pos, tri in chain.triangle_vertices():
                load[opposite_vertex(chain, pos, tri)] += 1
        chains.append(chain)
        children.append([])
        if parent is not None:
            children[parent].append(i)
        long_edges.add(norm_edge(*edge))
        chain_of_edge[norm_edge(*edge)] = i
        for se in chain.short_edges():
            short_edges.add(se)
            chain_of_edge[se] = i
        for ext, t_in in seeds:
            queue.append((ext, idx.across(ext[0], ext[1], t_in), i))
    return ChainTree(
        chains=chains,
        children=children,
        root=0,
        long_edges=frozenset(long_edges),
        short_edges=frozenset(short_edges),
        chain_of_edge=chain_of_edge,
        root_edge=norm_edge(*root_e),
    )
