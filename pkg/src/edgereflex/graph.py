"""Graph data model: cubic multigraphs with half-edges, and plain simple graphs.

A :class:`CubicGraph` stores full edges (unordered vertex pairs, parallel pairs
allowed) and half-edges (a single endpoint each). Edge identity is positional:
full edges take ids ``0..F-1`` in input order, half-edges ``F..F+H-1``.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable


class GraphError(ValueError):
    """Raised when a graph cannot be constructed or an operation is ill-posed."""


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u > v:
                raise GraphError(f"edge ({u}, {v}) not normalised")
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return cls(n, frozenset(_pair(u, v) for u, v in edges))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced_without(self, removed: Iterable[int]) -> tuple["SimpleGraph", list[int]]:
        """Delete a vertex set; returns the subgraph and the kept old vertex ids."""
        gone = set(removed)
        keep = [v for v in range(self.n) if v not in gone]
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return SimpleGraph.from_edges(len(keep), edges), keep

    def disjoint_union(self, other: "SimpleGraph") -> "SimpleGraph":
        shift = self.n
        edges = list(self.edges) + [(u + shift, v + shift) for u, v in other.edges]
        return SimpleGraph.from_edges(self.n + other.n, edges)


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


@dataclass(frozen=True)
class CubicGraph:
    """Multigraph with half-edges in which (when valid) every vertex has degree 3.

    Construction does not enforce the invariants; use :func:`validate` or
    :func:`make_cubic`.
    """

    n: int
    full_edges: tuple[tuple[int, int], ...]
    half_edges: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "full_edges", tuple(_pair(int(u), int(v)) for u, v in self.full_edges))
        object.__setattr__(self, "half_edges", tuple(int(v) for v in self.half_edges))

    @property
    def num_edges(self) -> int:
        return len(self.full_edges) + len(self.half_edges)

    @property
    def num_full(self) -> int:
        return len(self.full_edges)

    def is_half(self, e: int) -> bool:
        return e >= len(self.full_edges)

    def endpoints(self, e: int) -> tuple[int, ...]:
        """Endpoints of edge ``e``: two vertices for a full edge, one for a half-edge."""
        f = len(self.full_edges)
        if e < f:
            return self.full_edges[e]
        return (self.half_edges[e - f],)

    def incidence(self) -> list[list[int]]:
        """For each vertex, the sorted list of incident EdgeIds."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for e in range(self.num_edges):
            for v in self.endpoints(e):
                inc[v].append(e)
        return inc

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.full_edges:
            deg[u] += 1
            deg[v] += 1
        for v in self.half_edges:
            deg[v] += 1
        return deg

    def half_edges_at(self, v: int) -> list[int]:
        f = len(self.full_edges)
        return [f + i for i, w in enumerate(self.half_edges) if w == v]

    def has_multi_edges(self) -> bool:
        return any(c > 1 for c in Counter(self.full_edges).values())


def validate(g: CubicGraph) -> list[str]:
    """Return every invariant violation of ``g``; an empty list means valid."""
    problems: list[str] = []
    in_range = True
    for u, v in g.full_edges:
        if u == v:
            problems.append(f"self-loop at vertex {u}")
        if not (0 <= u < g.n and 0 <= v < g.n):
            problems.append(f"edge ({u}, {v}) out of range")
            in_range = False
    for v in g.half_edges:
        if not 0 <= v < g.n:
            problems.append(f"half-edge at {v} out of range")
            in_range = False
    for (u, v), c in sorted(Counter(g.full_edges).items()):
        if c > 3:
            problems.append(f"multiplicity {c} between {u} and {v}")
    if in_range:
        for v, d in enumerate(g.degrees()):
            if d != 3:
                problems.append(f"degree {d} at vertex {v}")
    return problems


def make_cubic(n: int, edges: Iterable[tuple[int, int]]) -> CubicGraph:
    """Pad a graph of maximum degree <= 3 with half-edges to make it cubic."""
    edges = [_pair(u, v) for u, v in edges]
    deg = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        deg[u] += 1
        deg[v] += 1
    half: list[int] = []
    for v in range(n):
        if deg[v] > 3:
            raise GraphError(f"degree {deg[v]} at vertex {v} exceeds 3")
        half.extend([v] * (3 - deg[v]))
    return CubicGraph(n, tuple(edges), tuple(half))


def line_graph(g: CubicGraph) -> SimpleGraph:
    """Line graph on EdgeIds; parallel edges give a single adjacency."""
    edges = set()
    for star in g.incidence():
        for a, b in combinations(star, 2):
            edges.add(_pair(a, b))
    return SimpleGraph(g.num_edges, frozenset(edges))


def triangles(x: SimpleGraph) -> list[tuple[int, int, int]]:
    """All 3-cliques ``(a, b, c)`` with ``a < b < c``, sorted."""
    out = []
    for a in range(x.n):
        for b in sorted(w for w in x.adj[a] if w > a):
            for c in sorted(w for w in x.adj[a] & x.adj[b] if w > b):
                out.append((a, b, c))
    return out


def is_triangle_free(g: CubicGraph) -> bool:
    """True iff ``g`` has no 3-cycle through three distinct vertices."""
    nbrs: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.full_edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    for u, v in set(g.full_edges):
        if nbrs[u] & nbrs[v]:
            return False
    return True


def components(x: SimpleGraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by least vertex."""
    seen = [False] * x.n
    out = []
    for s in range(x.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            u = stack.pop()
            for w in x.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_bipartite(x: SimpleGraph) -> tuple[bool, int]:
    """Bipartiteness and the number of proper 2-colourings (``2**components``, else 0)."""
    side = [-1] * x.n
    for s in range(x.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in x.adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return False, 0
    return True, 2 ** len(components(x))


def cutedges(g: CubicGraph) -> list[int]:
    """EdgeIds of full edges whose removal disconnects the graph (bridges).

    Iterative lowpoint search over the multigraph; a parallel pair is never a
    bridge because the DFS skips only the specific EdgeId it arrived on.
    """
    inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.full_edges):
        inc[u].append((v, e))
        inc[v].append((u, e))
    disc = [-1] * g.n
    low = [0] * g.n
    bridges = []
    t = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(inc[root]))]
        while stack:
            u, via, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == via:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, iter(inc[w])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] > disc[p]:
                    bridges.append(via)
    return sorted(bridges)


def cubic_components(g: CubicGraph) -> list[list[int]]:
    return components(SimpleGraph.from_edges(g.n, set(g.full_edges)))


@dataclass(frozen=True)
class CutResult:
    """The two sides of a cut edge.

    ``h_labels[i]`` is the EdgeId in the original graph of EdgeId ``i`` in ``h``
    (likewise for ``k``). Both new half-edges carry the label of the cut edge.
    """

    h: CubicGraph
    k: CubicGraph
    h_labels: tuple[int, ...]
    k_labels: tuple[int, ...]
    h_vertices: tuple[int, ...]
    k_vertices: tuple[int, ...]
    edge: int


def _restrict(g: CubicGraph, vertices: list[int], drop: int) -> tuple[CubicGraph, list[int], list[int]]:
    index = {v: i for i, v in enumerate(vertices)}
    full, full_lab, half, half_lab = [], [], [], []
    for e in range(g.num_edges):
        if e == drop:
            continue
        ends = g.endpoints(e)
        if ends[0] not in index:
            continue
        if len(ends) == 2:
            full.append((index[ends[0]], index[ends[1]]))
            full_lab.append(e)
        else:
            half.append(index[ends[0]])
            half_lab.append(e)
    u, v = g.full_edges[drop]
    side = u if u in index else v
    half.append(index[side])
    half_lab.append(drop)
    return CubicGraph(len(vertices), tuple(full), tuple(half)), full_lab + half_lab, vertices


def cut_edge(g: CubicGraph, e: int) -> CutResult:
    """Cut a cutedge ``e`` into half-edges at both endpoints, splitting ``g`` in two."""
    if g.is_half(e):
        raise GraphError(f"edge {e} is a half-edge")
    if e not in cutedges(g):
        raise GraphError(f"edge {e} is not a cutedge")
    a, b = g.full_edges[e]
    rest = [pair for i, pair in enumerate(g.full_edges) if i != e]
    comps = components(SimpleGraph.from_edges(g.n, set(rest)))
    side_a = next(c for c in comps if a in c)
    side_b = next(c for c in comps if b in c)
    h, hl, hv = _restrict(g, side_a, e)
    k, kl, kv = _restrict(g, side_b, e)
    return CutResult(h, k, tuple(hl), tuple(kl), tuple(hv), tuple(kv), e)


def glue_half_edges(h: CubicGraph, hh: int, k: CubicGraph, kh: int) -> CubicGraph:
    """Join half-edge ``hh`` of ``h`` and ``kh`` of ``k`` into one full edge."""
    if not (h.is_half(hh) and k.is_half(kh)):
        raise GraphError("both glued edges must be half-edges")
    shift = h.n
    a = h.endpoints(hh)[0]
    b = k.endpoints(kh)[0] + shift
    full = list(h.full_edges) + [(u + shift, v + shift) for u, v in k.full_edges] + [(a, b)]
    half = [v for i, v in enumerate(h.half_edges) if h.num_full + i != hh]
    half += [v + shift for i, v in enumerate(k.half_edges) if k.num_full + i != kh]
    return CubicGraph(h.n + k.n, tuple(full), tuple(half))


def disjoint_union_cubic(a: CubicGraph, b: CubicGraph) -> CubicGraph:
    s = a.n
    return CubicGraph(
        a.n + b.n,
        a.full_edges + tuple((u + s, v + s) for u, v in b.full_edges),
        a.half_edges + tuple(v + s for v in b.half_edges),
    )


# --- isomorphism ---------------------------------------------------------


def _refine(x: SimpleGraph) -> list[int]:
    """Colour refinement (1-WL) starting from degrees; returns stable colour ids."""
    colour = [x.degree(v) for v in range(x.n)]
    ncol = len(set(colour))
    while True:
        sig = [(colour[v], tuple(sorted(colour[w] for w in x.adj[v]))) for v in range(x.n)]
        ids = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ids[s] for s in sig]
        if len(ids) == ncol:
            return new
        colour, ncol = new, len(ids)


def _refine_pair(a: SimpleGraph, b: SimpleGraph) -> tuple[list[int], list[int]] | None:
    # Refine the disjoint union so colour ids are comparable between the graphs.
    u = a.disjoint_union(b)
    col = _refine(u)
    ca, cb = col[: a.n], col[a.n :]
    if Counter(ca) != Counter(cb):
        return None
    return ca, cb


def isomorphic(a: SimpleGraph, b: SimpleGraph) -> dict[int, int] | None:
    """Find an isomorphism ``a -> b`` as a vertex dict, or ``None``.

    Backtracking over a connectivity-first vertex order, with 1-WL colour
    classes as candidate filters. Candidates are tried in ascending order.
    """
    if a.n != b.n or len(a.edges) != len(b.edges):
        return None
    if a.n == 0:
        return {}
    cols = _refine_pair(a, b)
    if cols is None:
        return None
    ca, cb = cols

    # Order: repeatedly pick the unplaced vertex with most placed neighbours,
    # preferring rare colour classes; this keeps candidate sets small.
    freq = Counter(ca)
    order: list[int] = []
    placed = [False] * a.n
    weight = [0] * a.n
    for _ in range(a.n):
        best = min(
            (v for v in range(a.n) if not placed[v]),
            key=lambda v: (-weight[v], freq[ca[v]], v),
        )
        placed[best] = True
        order.append(best)
        for w in a.adj[best]:
            weight[w] += 1

    pos = {v: i for i, v in enumerate(order)}
    back_nbrs = [[w for w in a.adj[v] if pos[w] < pos[v]] for v in order]
    by_colour: dict[int, list[int]] = {}
    for v in range(b.n):
        by_colour.setdefault(cb[v], []).append(v)

    fwd: dict[int, int] = {}
    used = [False] * b.n
    # Number of already-mapped b-neighbours per b vertex, kept incrementally.
    mapped_deg = [0] * b.n

    def candidates(i: int) -> list[int]:
        v = order[i]
        bn = back_nbrs[i]
        if bn:
            images = [fwd[w] for w in bn]
            pool = set(b.adj[images[0]])
            for img in images[1:]:
                pool &= b.adj[img]
            pool = sorted(pool)
        else:
            pool = by_colour[ca[v]]
        need = len(bn)
        return [w for w in pool if not used[w] and cb[w] == ca[v] and mapped_deg[w] == need]

    def solve(i: int) -> bool:
        if i == a.n:
            return True
        v = order[i]
        for w in candidates(i):
            fwd[v] = w
            used[w] = True
            for z in b.adj[w]:
                mapped_deg[z] += 1
            if solve(i + 1):
                return True
            for z in b.adj[w]:
                mapped_deg[z] -= 1
            used[w] = False
            del fwd[v]
        return False

    limit = sys.getrecursionlimit()
    if a.n + 100 > limit:
        sys.setrecursionlimit(a.n + 1000)
    try:
        found = solve(0)
    finally:
        sys.setrecursionlimit(limit)
    return dict(sorted(fwd.items())) if found else None


def incidence_graph(g: CubicGraph) -> SimpleGraph:
    """Subdivided form of ``g``: vertex nodes ``0..n-1`` and one node per EdgeId.

    Vertex nodes have degree 3, edge nodes degree 2 (full) or 1 (half), so
    isomorphism of these graphs is isomorphism of cubic multigraphs.
    """
    edges = []
    for e in range(g.num_edges):
        for v in g.endpoints(e):
            edges.append((v, g.n + e))
    return SimpleGraph.from_edges(g.n + g.num_edges, edges)


def cubic_isomorphic(a: CubicGraph, b: CubicGraph) -> dict[int, int] | None:
    """Vertex bijection between isomorphic cubic graphs, or ``None``."""
    if a.n != b.n or a.num_full != b.num_full or len(a.half_edges) != len(b.half_edges):
        return None
    m = isomorphic(incidence_graph(a), incidence_graph(b))
    if m is None:
        return None
    return {v: m[v] for v in range(a.n)}


def cubic_invariant(g: CubicGraph) -> tuple:
    """Cheap isomorphism invariant used to bucket graphs before exact checks."""
    col = _refine(incidence_graph(g))
    return (g.n, g.num_full, len(g.half_edges), tuple(sorted(Counter(col).items())))
