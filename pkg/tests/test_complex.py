from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus
from edgereflex import families as F
from edgereflex.coloring import enumerate_edge_colorings, enumerate_vertex_colorings, is_edge_colorful
from edgereflex.complex import (
    ComplexError,
    b_squared,
    build_complex,
    build_edge_complex,
    canonical_map,
    check_triangle_lemma,
    is_reflexive,
    phi_isomorphism,
    phi_partition_check,
)
from edgereflex.graph import SimpleGraph, complete_graph, isomorphic, line_graph, triangles
from oracles import complex_by_definition, edge_partitions, reflexive_by_definition, vertex_partitions


def two_triangles() -> SimpleGraph:
    return complete_graph(3).disjoint_union(complete_graph(3))


def test_two_triangles_complex_is_line_graph_of_k33():
    b = build_complex(two_triangles())
    assert b.size == 9 and len(b.colorings) == 6
    assert isomorphic(b.adjacency, line_graph(F.complete_bipartite_33())) is not None


def test_k3_complex_is_k3():
    b = build_complex(complete_graph(3))
    assert b.classes == ((0,), (1,), (2,))
    assert b.colorings == ((0, 1, 2),)
    assert b.adjacency.sorted_edges() == [(0, 1), (0, 2), (1, 2)]


def test_cubic_c4_complex_matches_definition():
    g = F.cubic_cycle(4)
    parts = edge_partitions(g.n, [g.endpoints(e) for e in range(g.num_edges)])
    classes, edges = complex_by_definition(parts)
    b = build_edge_complex(g)
    assert list(b.classes) == classes
    assert set(b.adjacency.edges) == edges
    assert (b.size, len(edges)) == (7, 9)  # frozen from the oracle


def test_edge_complex_examples():
    b = build_edge_complex(F.cubic_vertex())
    assert b.size == 3 and triangles(b.adjacency) == [(0, 1, 2)]
    k33 = F.complete_bipartite_33()
    parts = edge_partitions(6, [k33.endpoints(e) for e in range(9)])
    classes, edges = complex_by_definition(parts)
    b = build_edge_complex(k33)
    assert (b.size, len(b.adjacency.edges)) == (len(classes), len(edges)) == (6, 6)


def test_edgeless_complex_rejected():
    with pytest.raises(ComplexError):
        build_complex(SimpleGraph.from_edges(3, []))


def test_uncolorable_complex_is_empty():
    b = build_complex(complete_graph(4))
    assert b.size == 0 and b.colorings == ()


def test_canonical_map_examples():
    b = build_complex(complete_graph(3))
    assert canonical_map(complete_graph(3), b) == ((0,), (1,), (2,))
    x = line_graph(F.cubic_cycle(3))
    phi = canonical_map(x, build_edge_complex(F.cubic_cycle(3)))
    assert len(set(phi)) < x.n
    k = line_graph(F.complete_bipartite_33())
    assert len(set(canonical_map(k, build_edge_complex(F.complete_bipartite_33())))) == k.n


def test_triangle_lemma_examples():
    assert check_triangle_lemma(build_complex(complete_graph(3)), complete_graph(3)).ok
    for g in (F.theta(2, 2, 2), F.prism(4)):
        r = check_triangle_lemma(build_edge_complex(g), line_graph(g))
        assert r.applicable and r.ok


def test_triangle_lemma_reports_unmet_precondition():
    x = SimpleGraph.from_edges(3, [(0, 1)])
    r = check_triangle_lemma(build_complex(x), x)
    assert not r.applicable


def test_b_squared_examples():
    _, b2 = b_squared(complete_graph(3))
    assert isomorphic(b2.adjacency, complete_graph(3)) is not None
    b, b2 = b_squared(two_triangles())
    assert b2.size == 6
    assert isomorphic(b2.adjacency, two_triangles()) is not None
    x = line_graph(F.theta(1, 3, 3))
    _, b2 = b_squared(x)
    assert isomorphic(b2.adjacency, x) is not None
    with pytest.raises(ComplexError):
        b_squared(complete_graph(4))


def test_b_squared_limit():
    x = line_graph(F.theta(3, 3, 3))
    with pytest.raises(ComplexError):
        b_squared(x, limit=3)


def test_is_reflexive_examples():
    assert is_reflexive(complete_graph(3))[0]
    assert is_reflexive(line_graph(F.complete_bipartite_33()))[0]
    ok, diag = is_reflexive(line_graph(F.theta(3, 3, 3)))
    assert not ok and diag.failed()
    assert is_reflexive(SimpleGraph.from_edges(2, [])) == (False, "edgeless graph")


@st.composite
def small_simple(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    es = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True)) if pairs else []
    return SimpleGraph.from_edges(n, es)


@settings(max_examples=120, deadline=None)
@given(small_simple())
def test_complex_and_reflexivity_match_definition(x):
    parts = vertex_partitions(x.n, x.edges)
    if not x.edges:
        return
    classes, edges = complex_by_definition(parts)
    b = build_complex(x)
    assert list(b.classes) == classes and set(b.adjacency.edges) == edges
    if b.size and b.size <= 14:
        assert is_reflexive(x)[0] == reflexive_by_definition(x.n, x.sorted_edges())


def test_complex_is_colorable_when_x_has_an_edge():
    for _, g in corpus():
        b = build_edge_complex(g)
        if b.size:
            assert enumerate_vertex_colorings(b.adjacency, limit=1)


def test_phi_is_homomorphism_on_corpus():
    for _, g in corpus():
        x = line_graph(g)
        b = build_edge_complex(g)
        if b.size:
            assert phi_partition_check(x, b) == []


def test_colorful_iff_phi_injective_on_corpus():
    for _, g in corpus():
        cols = enumerate_edge_colorings(g)
        if not cols:
            continue
        x = line_graph(g)
        b = build_edge_complex(g, cols)
        injective = len(set(canonical_map(x, b))) == x.n
        assert is_edge_colorful(g, cols)[0] == injective


def test_full_phi_isomorphism_matches_diagnosis_fields():
    x = line_graph(F.prism(4))
    b, b2 = b_squared(x)
    d = phi_isomorphism(x, b, b2)
    assert d.reflexive and d.failed() == [] and d.b2_size == x.n
