from __future__ import annotations

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from conftest import corpus
from edgereflex import families as F
from edgereflex.coloring import (
    ColoringError,
    count_vertex_colorings,
    enumerate_edge_colorings,
    enumerate_vertex_colorings,
    is_edge_colorful,
    is_edge_coloring,
    is_vertex_coloring,
    kempe_change,
    parity_signature,
)
from edgereflex.graph import CubicGraph, SimpleGraph, complete_graph, cycle_graph, line_graph, make_cubic
from edgereflex.complex import build_edge_complex
from oracles import as_canonical, edge_partitions, vertex_partitions


def ends_of(g: CubicGraph):
    return [g.endpoints(e) for e in range(g.num_edges)]


@st.composite
def small_cubic(draw, max_n=5, max_edges=12):
    """Random multigraph (max degree 3, multiplicity <= 3) padded with half-edges."""
    n = draw(st.integers(1, max_n))
    deg = [0] * n
    edges = []
    for _ in range(draw(st.integers(0, 3 * n // 2))):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1))
        if u == v or deg[u] == 3 or deg[v] == 3:
            continue
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    g = make_cubic(n, edges)
    assume(g.num_edges <= max_edges)
    return g


def test_edge_coloring_examples():
    assert enumerate_edge_colorings(F.cubic_vertex()) == [((0,), (1,), (2,))]
    assert len(enumerate_edge_colorings(F.cubic_cycle(4))) == 3
    k33 = enumerate_edge_colorings(F.complete_bipartite_33())
    assert {as_canonical(p) for p in edge_partitions(6, ends_of(F.complete_bipartite_33()))} == set(k33)
    assert len(k33) == 2


def test_dodecahedron_has_ten_colorings():
    assert len(enumerate_edge_colorings(F.dodecahedron())) == 10


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(small_cubic())
def test_edge_enumeration_matches_brute_force(g):
    oracle = {as_canonical(p) for p in edge_partitions(g.n, ends_of(g))}
    got = enumerate_edge_colorings(g)
    assert set(got) == oracle
    assert len(got) == len(set(got))
    assert got == sorted(got)


def test_uncolorable_is_empty():
    assert enumerate_edge_colorings(F.subdivide_plain(F.complete_bipartite_33(), 0, 1)) == []
    assert enumerate_edge_colorings(F.theta(1, 1, 2)) == []


def test_vertex_coloring_examples():
    assert enumerate_vertex_colorings(complete_graph(3)) == [((0,), (1,), (2,))]
    assert enumerate_vertex_colorings(SimpleGraph.from_edges(2, [(0, 1)])) == [((0,), (1,), ())]
    b = build_edge_complex(F.cubic_cycle(4))
    assert len(enumerate_vertex_colorings(b.adjacency)) == 4


@st.composite
def small_simple(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    es = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return SimpleGraph.from_edges(n, es)


@settings(max_examples=200, deadline=None)
@given(small_simple())
def test_vertex_enumeration_matches_brute_force(x):
    oracle = {as_canonical(p) for p in vertex_partitions(x.n, x.edges)}
    got = enumerate_vertex_colorings(x)
    assert set(got) == oracle
    assert count_vertex_colorings(x) == len(oracle)
    assert all(is_vertex_coloring(x, c) for c in got)


def test_vertex_limit_is_a_prefix_bound():
    x = cycle_graph(8)
    full = set(enumerate_vertex_colorings(x))
    part = enumerate_vertex_colorings(x, limit=5)
    assert len(part) == 5 and set(part) <= full


def test_edge_colorings_coincide_with_line_graph_vertex_colorings():
    for _, g in corpus()[:60]:
        via_line = enumerate_vertex_colorings(line_graph(g))
        assert all(all(c for c in p) for p in via_line)
        assert via_line == enumerate_edge_colorings(g)


def test_colorings_structurally_valid_on_corpus():
    for _, g in corpus():
        for c in enumerate_edge_colorings(g):
            assert is_edge_coloring(g, c)


def test_parity_examples():
    assert parity_signature(F.cubic_vertex(), enumerate_edge_colorings(F.cubic_vertex())[0]) == ((1, 1, 1), True)
    for c in enumerate_edge_colorings(F.cubic_path(2)):
        sig, ok = parity_signature(F.cubic_path(2), c)
        assert ok and sorted(sig) == [0, 2, 2]
    for c in enumerate_edge_colorings(F.prism(4)):
        assert parity_signature(F.prism(4), c) == ((0, 0, 0), True)
    with pytest.raises(ColoringError):
        parity_signature(F.cubic_vertex(), ((0,), (1,), (7,)))


@settings(max_examples=150, deadline=None)
@given(small_cubic(max_n=7, max_edges=20))
def test_parity_lemma_holds(g):
    for c in enumerate_edge_colorings(g):
        assert parity_signature(g, c)[1]


def test_kempe_examples():
    c4 = F.cubic_cycle(4)
    cols = enumerate_edge_colorings(c4)
    for c in cols:
        for i, j in ((0, 1), (0, 2), (1, 2)):
            for seed in range(4):  # cycle edges
                if seed in c[i] or seed in c[j]:
                    assert kempe_change(c, c4, (i, j), seed) in cols
    # cubic K2: halves 1, 2 sit at vertex 0, halves 3, 4 at vertex 1
    k2 = F.cubic_path(2)
    c = enumerate_edge_colorings(k2)[0]
    i, j = c.index(_class_of(c, 1)), c.index(_class_of(c, 2))
    out = kempe_change(c, k2, (i, j), 1)
    swap = {1: 2, 2: 1}
    expect = sorted(tuple(sorted(swap.get(e, e) for e in cls)) for cls in c)
    assert list(out) == expect


def test_kempe_rejects_seed_in_third_class():
    g = F.cubic_vertex()
    c = enumerate_edge_colorings(g)[0]
    with pytest.raises(ColoringError):
        kempe_change(c, g, (0, 1), c[2][0])
    with pytest.raises(ColoringError):
        kempe_change(c, g, (1, 1), 0)


def _class_of(c, e):
    return next(cls for cls in c if e in cls)


@settings(max_examples=100, deadline=None)
@given(small_cubic(max_n=7, max_edges=20), st.data())
def test_kempe_is_an_involution_on_the_coloring_set(g, data):
    cols = enumerate_edge_colorings(g)
    if not cols:
        return
    c = data.draw(st.sampled_from(cols))
    i, j = data.draw(st.sampled_from([(0, 1), (0, 2), (1, 2)]))
    seed = data.draw(st.sampled_from(c[i] + c[j]))
    once = kempe_change(c, g, (i, j), seed)
    assert once in cols
    # the swapped pair is whichever two classes are not the untouched third
    third = c[3 - i - j]
    a = _class_of(once, seed)
    b = next(cls for cls in once if cls != a and cls != third)
    back = kempe_change(once, g, (once.index(a), once.index(b)), seed)
    assert back == c


def test_colorful_examples():
    ok, w = is_edge_colorful(F.cubic_cycle(3))
    assert not ok and w is not None
    # the witness pair is colored alike everywhere; one of them is a cycle edge
    cols = enumerate_edge_colorings(F.cubic_cycle(3))
    assert all(_class_of(c, w[0]) == _class_of(c, w[1]) for c in cols)
    assert is_edge_colorful(F.cubic_cycle(4)) == (True, None)
    assert is_edge_colorful(F.prism(5))[0] is False
    assert is_edge_colorful(F.theta(1, 1, 2)) == (False, "no colorings")


def test_odd_prism_cycle_edges_colored_alike():
    # in an odd prism, rung edges separate; each pair of corresponding cycle
    # edges gets the same color in every coloring
    for n in (3, 5, 7):
        g = F.prism(n)
        cols = enumerate_edge_colorings(g)
        assert cols
        pairs = {}
        for e, (u, v) in enumerate(g.full_edges):
            if u < n and v < n:
                pairs.setdefault(frozenset((u, v)), []).append(e)
            elif u >= n and v >= n:
                pairs.setdefault(frozenset((u - n, v - n)), []).append(e)
        for e, f in (p for p in pairs.values() if len(p) == 2):
            assert all(_class_of(c, e) == _class_of(c, f) for c in cols)
