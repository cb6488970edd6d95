"""3-coloring complexes B(X), their iterate B(B(X)), and the canonical map."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .coloring import (
    Partition,
    enumerate_edge_colorings,
    enumerate_vertex_colorings,
    is_vertex_coloring,
)
from .graph import CubicGraph, SimpleGraph, components, is_bipartite, line_graph, triangles


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class ColoringComplex:
    """Complex over colour classes.

    ``classes`` are the distinct non-empty colour classes in sorted order;
    ``colorings`` holds, per colouring of the base graph, the sorted indices of
    its non-empty classes (a triple, or a pair if a part was empty).
    """

    classes: tuple[tuple[int, ...], ...]
    adjacency: SimpleGraph
    colorings: tuple[tuple[int, ...], ...]
    had_empty_part: bool = False

    @property
    def size(self) -> int:
        return len(self.classes)

    def index_of(self, cls: Sequence[int]) -> int | None:
        key = tuple(sorted(cls))
        lo, hi = 0, len(self.classes)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.classes[mid] < key:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self.classes) and self.classes[lo] == key:
            return lo
        return None


def complex_from_colorings(colorings: Sequence[Partition]) -> ColoringComplex:
    classes = sorted({cls for p in colorings for cls in p if cls})
    index = {cls: i for i, cls in enumerate(classes)}
    edges = set()
    triples = []
    empty = False
    for p in colorings:
        ids = sorted(index[cls] for cls in p if cls)
        empty |= len(ids) < len(p)
        triples.append(tuple(ids))
        edges.update(combinations(ids, 2))
    adjacency = SimpleGraph.from_edges(len(classes), edges)
    return ColoringComplex(tuple(classes), adjacency, tuple(sorted(triples)), empty)


def build_complex(x: SimpleGraph, colorings: Sequence[Partition] | None = None) -> ColoringComplex:
    """B(x) built directly from the definition over all 3-colourings of ``x``."""
    if x.n > 0 and not x.edges:
        raise ComplexError("complex of an edgeless graph is not defined")
    if colorings is None:
        colorings = enumerate_vertex_colorings(x)
    return complex_from_colorings(colorings)


def build_edge_complex(g: CubicGraph, colorings: Sequence[Partition] | None = None) -> ColoringComplex:
    """B(L(g)); classes are edge sets of ``g``."""
    if colorings is None:
        colorings = enumerate_edge_colorings(g)
    return complex_from_colorings(colorings)


def canonical_map(x: SimpleGraph, b: ColoringComplex) -> tuple[tuple[int, ...], ...]:
    """For each vertex v of x, the sorted indices of classes of ``b`` containing v."""
    image: list[list[int]] = [[] for _ in range(x.n)]
    for i, cls in enumerate(b.classes):
        for v in cls:
            image[v].append(i)
    return tuple(tuple(s) for s in image)


def has_isolated_vertex(x: SimpleGraph) -> bool:
    return any(not a for a in x.adj)


def phi_partition_check(x: SimpleGraph, b: ColoringComplex, phi=None) -> list[tuple[int, int]]:
    """Edges uv of x for which {phi(u), phi(v), rest} is NOT a 3-colouring of B.

    For every edge this partition is a colouring of B whenever x has no
    isolated vertices; so the homomorphism property can be audited without
    building B(B(x)). Returns the offending edges (empty means all good).
    """
    if phi is None:
        phi = canonical_map(x, b)
    bad = []
    every = set(range(b.size))
    for u, v in x.sorted_edges():
        pu, pv = set(phi[u]), set(phi[v])
        rest = every - pu - pv
        part = tuple(sorted((tuple(sorted(pu)), tuple(sorted(pv)), tuple(sorted(rest)))))
        part = tuple(c for c in part if c) + tuple(c for c in part if not c)
        if pu & pv or not pu or not pv or not is_vertex_coloring(b.adjacency, part):
            bad.append((u, v))
    return bad


@dataclass(frozen=True)
class LemmaCheck:
    applicable: bool
    ok: bool
    detail: str | None = None


def check_triangle_lemma(b: ColoringComplex, x: SimpleGraph | None = None) -> LemmaCheck:
    """Triangles of B are exactly the colouring triples, and they are edge-disjoint."""
    if x is not None:
        if has_isolated_vertex(x):
            return LemmaCheck(False, False, "base graph has an isolated vertex")
        if not b.colorings:
            return LemmaCheck(False, False, "base graph is not 3-colourable")
        if is_bipartite(x)[0]:
            return LemmaCheck(False, False, "base graph is not 3-chromatic")
    tri = set(triangles(b.adjacency))
    col = set(t for t in b.colorings if len(t) == 3)
    if tri != col:
        extra = sorted(tri - col)
        return LemmaCheck(True, False, f"triangle {extra[0] if extra else sorted(col - tri)[0]} is not a colouring")
    seen: dict[tuple[int, int], tuple[int, ...]] = {}
    for t in b.colorings:
        for e in combinations(t, 2):
            if e in seen:
                return LemmaCheck(True, False, f"edge {e} lies in colourings {seen[e]} and {t}")
            seen[e] = t
    return LemmaCheck(True, True)


def b_squared(x: SimpleGraph, b: ColoringComplex | None = None, limit: int | None = None) -> tuple[ColoringComplex, ColoringComplex]:
    """B(x) and B(B(x)). With ``limit``, refuse when B(x) has more colourings."""
    if b is None:
        b = build_complex(x)
    if b.size == 0:
        raise ComplexError("B(X) is empty: X has no 3-colouring")
    colorings = enumerate_vertex_colorings(b.adjacency, None if limit is None else limit + 1)
    if limit is not None and len(colorings) > limit:
        raise ComplexError(f"B(X) has more than {limit} colourings")
    return b, build_complex(b.adjacency, colorings)


@dataclass(frozen=True)
class ReflexivityDiagnosis:
    reflexive: bool
    injective: bool
    image_in_b2: bool
    surjective: bool
    edges_preserved: bool
    non_edges_preserved: bool
    b_size: int
    b2_size: int

    def failed(self) -> list[str]:
        names = ["injective", "image_in_b2", "surjective", "edges_preserved", "non_edges_preserved"]
        return [k for k in names if not getattr(self, k)]


def phi_isomorphism(x: SimpleGraph, b: ColoringComplex, b2: ColoringComplex) -> ReflexivityDiagnosis:
    """Check whether the canonical map x -> B(B(x)) is an isomorphism."""
    phi = canonical_map(x, b)
    target = [b2.index_of(s) if s else None for s in phi]
    injective = len(set(phi)) == x.n
    in_b2 = all(t is not None for t in target)
    surjective = in_b2 and set(target) == set(range(b2.size))
    edges_ok = in_b2 and all(b2.adjacency.has_edge(target[u], target[v]) for u, v in x.edges)
    non_edges_ok = in_b2 and all(
        x.has_edge(u, v) == b2.adjacency.has_edge(target[u], target[v])
        for u, v in combinations(range(x.n), 2)
        if target[u] != target[v]
    )
    ok = injective and in_b2 and surjective and edges_ok and non_edges_ok
    return ReflexivityDiagnosis(ok, injective, in_b2, surjective, edges_ok, non_edges_ok, b.size, b2.size)


def is_reflexive(x: SimpleGraph, limit: int | None = None) -> tuple[bool, ReflexivityDiagnosis | str]:
    """Whether the canonical homomorphism x -> B(B(x)) is an isomorphism."""
    if x.n == 0:
        return False, "empty graph"
    if not x.edges:
        return False, "edgeless graph"
    b = build_complex(x)
    if b.size == 0:
        return False, "not 3-colourable"
    b, b2 = b_squared(x, b, limit)
    d = phi_isomorphism(x, b, b2)
    return d.reflexive, d


def removal_structure(b: ColoringComplex, phi_v: Sequence[int]) -> tuple[bool, int]:
    """Bipartiteness and component count of B minus the class set ``phi_v``."""
    sub, _ = b.adjacency.induced_without(phi_v)
    bip, _ = is_bipartite(sub)
    return bip, len(components(sub))


def degree_law(x: SimpleGraph, b: ColoringComplex) -> list[dict]:
    """Per vertex: degree d, and whether B - phi(v) is bipartite with d = 2**t."""
    phi = canonical_map(x, b)
    rows = []
    for v in range(x.n):
        bip, t = removal_structure(b, phi[v])
        d = x.degree(v)
        rows.append({"vertex": v, "degree": d, "bipartite": bip, "components": t, "ok": bip and d == 2 ** t})
    return rows


def star_colorings(g: CubicGraph, b: ColoringComplex) -> set[Partition]:
    """Partitions {phi(e), phi(f), phi(h)} of V(B) from the stars of vertices of g."""
    phi = canonical_map(line_graph(g), b)
    out = set()
    for star in g.incidence():
        parts = [phi[e] for e in star]
        out.add(tuple(sorted(parts)))
    return out
