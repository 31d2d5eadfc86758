from __future__ import annotations

import itertools
import random

import pytest

from outerdraw.errors import EmptyOrTrivial, NotBiconnected, NotBipartite, NotOuterplanar
from outerdraw.generators import gen_fan_pendant, gen_random_maximal_outerplanar
from outerdraw.graph_core import (
    bipartition,
    dual_tree,
    inner_faces,
    quadrangulate_bipartite,
    recognize_outerplanar,
    triangulate,
)

from conftest import is_outerplanar_bruteforce


def cycle_edges(n):
    return [(i, (i + 1) % n) for i in range(n)]


def test_triangle_recognized():
    g = recognize_outerplanar(3, [(0, 1), (1, 2), (2, 0)])
    assert sorted(g.outer_cycle) == [0, 1, 2]
    assert len(g.outer_cycle) == 3


def test_k4_rejected():
    with pytest.raises(NotOuterplanar):
        recognize_outerplanar(4, list(itertools.combinations(range(4), 2)))


def test_k23_rejected():
    edges = [(a, b) for a in (0, 1) for b in (2, 3, 4)]
    with pytest.raises(NotOuterplanar):
        recognize_outerplanar(5, edges)


def test_trivial_and_disconnected_inputs():
    with pytest.raises(EmptyOrTrivial):
        recognize_outerplanar(2, [(0, 1)])
    with pytest.raises(NotBiconnected):
        recognize_outerplanar(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])


def test_fan_pendant_8_recognized():
    g = gen_fan_pendant(8).graph
    h = recognize_outerplanar(g.vertex_count, sorted(g.edges))
    assert h.vertex_count == 20
    assert len(h.edges) == 37 == 2 * 20 - 3
    assert len(h.outer_cycle) == 20


def test_supplied_outer_cycle_is_checked():
    edges = cycle_edges(5) + [(0, 2)]
    recognize_outerplanar(5, edges, [0, 1, 2, 3, 4])
    with pytest.raises(NotOuterplanar):
        recognize_outerplanar(5, edges, [0, 2, 1, 3, 4])


def test_recognition_matches_bruteforce_oracle():
    rng = random.Random(5)
    all_pairs = {n: list(itertools.combinations(range(n), 2)) for n in range(4, 7)}
    checked = 0
    for _ in range(300):
        n = rng.randrange(4, 7)
        edges = rng.sample(all_pairs[n], rng.randrange(n, 2 * n - 1))
        try:
            recognize_outerplanar(n, edges)
            accepted = True
        except NotBiconnected:
            continue
        except NotOuterplanar:
            accepted = False
        assert accepted == is_outerplanar_bruteforce(n, edges), (n, edges)
        checked += 1
    assert checked > 50


def test_triangulate_examples():
    tri = recognize_outerplanar(3, cycle_edges(3))
    assert triangulate(tri).added_edges == frozenset()
    sq = triangulate(recognize_outerplanar(4, cycle_edges(4)))
    assert sq.added_edges == {(0, 2)}
    assert len(sq.edges) == 5
    hexa = triangulate(recognize_outerplanar(6, cycle_edges(6)))
    assert len(hexa.added_edges) == 3
    assert len(hexa.triangles) == 4
    assert all(len(f) == 3 for f in inner_faces(hexa.graph))


def test_bipartition_examples():
    with pytest.raises(NotBipartite):
        bipartition(recognize_outerplanar(3, cycle_edges(3)))
    g = recognize_outerplanar(6, cycle_edges(6) + [(0, 3)])
    assert bipartition(g) == (0, 1, 0, 1, 0, 1)


def test_six_cycle_single_bipartite_chord_class():
    # oracle: enumerate all chords, keep those joining opposite colours whose
    # two faces are both even
    n = 6
    good = []
    for a, b in itertools.combinations(range(n), 2):
        if (b - a) in (1, n - 1):
            continue
        if (a + b) % 2 == 1 and (b - a + 1) % 2 == 0 and (n - (b - a) + 1) % 2 == 0:
            good.append((a, b))
    assert good == [(0, 3), (1, 4), (2, 5)]
    q = quadrangulate_bipartite(recognize_outerplanar(6, cycle_edges(6)))
    assert len(q.added_edges) == 1
    (ch,) = q.added_edges
    assert ch in good
    assert all(len(f) == 4 for f in inner_faces(q.graph))


def test_eight_cycle_quadrangulated():
    q = quadrangulate_bipartite(recognize_outerplanar(8, cycle_edges(8)))
    assert len(q.added_edges) == 2
    faces = inner_faces(q.graph)
    assert len(faces) == 3 and all(len(f) == 4 for f in faces)
    for u, v in q.edges:
        assert q.coloring[u] != q.coloring[v]


def test_dual_tree_examples():
    assert dual_tree(triangulate(recognize_outerplanar(3, cycle_edges(3)))).adjacency == ()
    two = dual_tree(triangulate(recognize_outerplanar(4, cycle_edges(4))))
    assert len(two.triangles) == 2 and len(two.adjacency) == 1
    # a fan of k+1 triangles around apex 0 is a path in the dual
    k = 5
    edges = [(0, i) for i in range(1, k + 3)] + [(i, i + 1) for i in range(1, k + 2)]
    fan = dual_tree(triangulate(recognize_outerplanar(k + 3, edges)))
    degs = [len(x) for x in fan.neighbors()]
    assert len(fan.triangles) == k + 1
    assert sorted(degs) == [1, 1] + [2] * (k - 1)


@pytest.mark.parametrize("seed", range(10))
def test_dual_tree_is_tree(seed):
    g = gen_random_maximal_outerplanar(30, seed)
    dt = dual_tree(g)
    assert len(dt.triangles) == 28
    assert len(dt.adjacency) == 27
    seen = {0}
    stack = [0]
    nb = dt.neighbors()
    while stack:
        for w in nb[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    assert len(seen) == 28
    edge_use = {}
    for t in dt.triangles:
        for e in itertools.combinations(sorted(t), 2):
            edge_use[e] = edge_use.get(e, 0) + 1
    outer = g.graph.outer_edges
    assert all(edge_use[e] == (1 if e in outer else 2) for e in edge_use)
