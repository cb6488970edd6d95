"""Enumeration of 3-edge-colourings and 3-vertex-colourings as unordered partitions.

A colouring is a tuple of three sorted tuples (the colour classes), stored
canonically: non-empty classes in lexicographic order, an empty class last.
"""

from __future__ import annotations

import sys
from collections import deque
from math import prod
from typing import Iterator, Sequence

from .graph import CubicGraph, SimpleGraph, components

Partition = tuple[tuple[int, ...], ...]


class ColoringError(ValueError):
    pass


def canonical(classes: Sequence[Sequence[int]]) -> Partition:
    parts = [tuple(sorted(c)) for c in classes]
    full = sorted(p for p in parts if p)
    return tuple(full) + tuple(() for p in parts if not p)


def from_labels(labels: Sequence[int], k: int = 3) -> Partition:
    buckets: list[list[int]] = [[] for _ in range(k)]
    for item, c in enumerate(labels):
        buckets[c].append(item)
    return canonical(buckets)


# --- edge colourings ----------------------------------------------------


def _edge_order(g: CubicGraph) -> list[int]:
    """Connectivity-first edge order: BFS over vertices, emitting each star."""
    inc = g.incidence()
    seen_v = [False] * g.n
    seen_e = [False] * g.num_edges
    order = []
    for root in range(g.n):
        if seen_v[root]:
            continue
        seen_v[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e in inc[u]:
                if seen_e[e]:
                    continue
                seen_e[e] = True
                order.append(e)
                for w in g.endpoints(e):
                    if not seen_v[w]:
                        seen_v[w] = True
                        queue.append(w)
    return order


def iter_edge_labelings(g: CubicGraph) -> Iterator[list[int]]:
    """Yield colour-label arrays, one per unordered proper 3-edge-colouring.

    The three edges at vertex 0 are pinned to colours 0, 1, 2; since every
    vertex sees all three colours, that pins exactly one representative per
    partition.
    """
    if g.n == 0:
        return
    order = _edge_order(g)
    ends = [g.endpoints(e) for e in range(g.num_edges)]
    used = [0] * g.n
    label = [-1] * g.num_edges
    pinned = {e: i for i, e in enumerate(g.incidence()[0])}
    if len(pinned) != 3:
        return
    m = len(order)

    def rec(i: int) -> Iterator[list[int]]:
        if i == m:
            yield list(label)
            return
        e = order[i]
        vs = ends[e]
        mask = 0
        for v in vs:
            mask |= used[v]
        choices = (pinned[e],) if e in pinned else (0, 1, 2)
        for c in choices:
            bit = 1 << c
            if mask & bit:
                continue
            label[e] = c
            for v in vs:
                used[v] |= bit
            yield from rec(i + 1)
            for v in vs:
                used[v] &= ~bit
        label[e] = -1

    with _deep_recursion(m):
        yield from rec(0)


def enumerate_edge_colorings(g: CubicGraph) -> list[Partition]:
    """All unordered proper 3-edge-colourings of ``g``, canonically sorted."""
    return sorted({from_labels(lab) for lab in iter_edge_labelings(g)})


def is_edge_coloring(g: CubicGraph, c: Partition) -> bool:
    """Structural check: three disjoint non-empty matchings covering all edges."""
    if len(c) != 3 or any(not cls for cls in c):
        return False
    flat = [e for cls in c for e in cls]
    if sorted(flat) != list(range(g.num_edges)):
        return False
    for cls in c:
        hit: set[int] = set()
        for e in cls:
            for v in g.endpoints(e):
                if v in hit:
                    return False
                hit.add(v)
    return c == canonical(c)


# --- vertex colourings --------------------------------------------------


class _VertexSearch:
    """Backtracking over unordered 3-colourings with forward checking.

    Vertex choice is dynamic (fewest remaining colours, then most coloured
    neighbours, then lowest id). Duplicate partitions are excluded by allowing
    only already-used colours or the single next fresh colour.
    """

    def __init__(self, x: SimpleGraph):
        self.n = x.n
        self.adj = [sorted(a) for a in x.adj]
        self.colour = [-1] * x.n
        self.blocked = [[0, 0, 0] for _ in range(x.n)]
        self.ncol_nbrs = [0] * x.n

    def _pick(self) -> int:
        best, key = -1, None
        colour, blocked, cn = self.colour, self.blocked, self.ncol_nbrs
        for v in range(self.n):
            if colour[v] >= 0:
                continue
            b = blocked[v]
            free = (b[0] == 0) + (b[1] == 0) + (b[2] == 0)
            k = (free, -cn[v])
            if key is None or k < key:
                best, key = v, k
                if free == 0:
                    break
        return best

    def _set(self, v: int, c: int, delta: int) -> None:
        for w in self.adj[v]:
            self.blocked[w][c] += delta
            self.ncol_nbrs[w] += delta

    def _dead(self, v: int) -> bool:
        colour, blocked = self.colour, self.blocked
        for w in self.adj[v]:
            if colour[w] < 0:
                b = blocked[w]
                if b[0] and b[1] and b[2]:
                    return True
        return False

    def run(self, limit: int | None = None) -> Iterator[list[int]]:
        count = 0

        def rec(depth: int, used: int) -> Iterator[list[int]]:
            nonlocal count
            if depth == self.n:
                count += 1
                yield list(self.colour)
                return
            v = self._pick()
            b = self.blocked[v]
            top = min(used, 2)
            for c in range(top + 1):
                if b[c]:
                    continue
                self.colour[v] = c
                self._set(v, c, 1)
                if not self._dead(v):
                    yield from rec(depth + 1, used + (c == used))
                self._set(v, c, -1)
                self.colour[v] = -1
                if limit is not None and count >= limit:
                    return

        with _deep_recursion(self.n):
            yield from rec(0, 0)


def iter_vertex_colorings(x: SimpleGraph, limit: int | None = None) -> Iterator[Partition]:
    """Yield unordered 3-colourings in search order.

    Every partition of V(x) into at most three independent sets is produced
    once; partitions with two empty parts arise only for edgeless ``x``.
    """
    if x.n == 0:
        return
    for lab in _VertexSearch(x).run(limit):
        yield from_labels(lab)


def enumerate_vertex_colorings(x: SimpleGraph, limit: int | None = None) -> list[Partition]:
    """All unordered 3-colourings of ``x`` with at most one empty part, sorted.

    With ``limit`` the search stops after that many colourings; the result is
    then a sorted subset of the full set.
    """
    out = [p for p in iter_vertex_colorings(x, limit) if sum(1 for c in p if not c) <= 1]
    return sorted(out)


def count_vertex_colorings(x: SimpleGraph) -> int:
    """Number of unordered 3-colourings with at most one empty part.

    Counted per connected component and combined through labelled counts, so
    disconnected graphs do not require enumerating the product.
    """
    if not x.edges:
        # Edgeless: partitions into 2 or 3 non-empty parts (one empty allowed).
        n = x.n
        s2 = 2 ** (n - 1) - 1 if n >= 1 else 0
        s3 = (3 ** n - 3 * 2 ** n + 3) // 6 if n >= 1 else 0
        return s2 + s3
    labelled = []
    for comp in components(x):
        if len(comp) == 1:
            labelled.append(3)
            continue
        sub, _ = x.induced_without(set(range(x.n)) - set(comp))
        per = sum(1 for _ in _VertexSearch(sub).run())
        labelled.append(6 * per)
    return prod(labelled) // 6


def is_vertex_coloring(x: SimpleGraph, c: Partition) -> bool:
    if len(c) != 3 or sum(1 for cls in c if not cls) > 1:
        return False
    flat = [v for cls in c for v in cls]
    if sorted(flat) != list(range(x.n)):
        return False
    for cls in c:
        s = set(cls)
        if any(x.adj[v] & s for v in cls):
            return False
    return c == canonical(c)


# --- Kempe changes, parity, colourfulness -------------------------------


def kempe_change(c: Partition, g: CubicGraph, colors: tuple[int, int], seed: int) -> Partition:
    """Swap two colour classes on the Kempe chain (in L(g)) containing ``seed``."""
    i, j = colors
    if i == j or not ({i, j} <= {0, 1, 2}):
        raise ColoringError(f"need two distinct class indices, got {colors}")
    a, b = set(c[i]), set(c[j])
    if seed not in a and seed not in b:
        raise ColoringError(f"seed edge {seed} lies in the third class")
    two = a | b
    at_vertex: dict[int, list[int]] = {}
    for e in two:
        for v in g.endpoints(e):
            at_vertex.setdefault(v, []).append(e)
    chain, stack = {seed}, [seed]
    while stack:
        e = stack.pop()
        for v in g.endpoints(e):
            for f in at_vertex[v]:
                if f not in chain:
                    chain.add(f)
                    stack.append(f)
    new_a = (a - chain) | (b & chain)
    new_b = (b - chain) | (a & chain)
    k = 3 - i - j
    return canonical([new_a, new_b, c[k]])


def parity_signature(g: CubicGraph, c: Partition) -> tuple[tuple[int, int, int], bool]:
    """Half-edge count per class, and whether all counts are congruent to n mod 2."""
    edges = set(range(g.num_edges))
    if any(e not in edges for cls in c for e in cls):
        raise ColoringError("colour class contains an edge not in the graph")
    sig = tuple(sum(1 for e in cls if g.is_half(e)) for cls in c)
    ok = all(s % 2 == g.n % 2 for s in sig)
    return sig, ok


def class_index(parts: Sequence[Partition], size: int) -> list[tuple[int, ...]]:
    """For each item, the tuple of class positions it occupies across ``parts``."""
    where = [[0] * len(parts) for _ in range(size)]
    for k, p in enumerate(parts):
        for pos, cls in enumerate(p):
            for item in cls:
                where[item][k] = pos
    return [tuple(w) for w in where]


def colorful_witness(parts: Sequence[Partition], size: int) -> tuple[int, int] | None:
    """Least pair of items sharing a class in every partition, or ``None``."""
    if size >= 2 and not parts:
        return (0, 1)
    first: dict[tuple[int, ...], int] = {}
    best = None
    for item, sig in enumerate(class_index(parts, size)):
        if sig in first:
            pair = (first[sig], item)
            if best is None or pair < best:
                best = pair
        else:
            first[sig] = item
    return best


def is_edge_colorful(g: CubicGraph, colorings: Sequence[Partition] | None = None) -> tuple[bool, tuple[int, int] | str | None]:
    """Whether every pair of edges is separated by some colouring.

    Returns ``(True, None)``, ``(False, (e, f))`` or ``(False, "no colorings")``.
    """
    if colorings is None:
        colorings = enumerate_edge_colorings(g)
    if not colorings:
        return False, "no colorings"
    w = colorful_witness(colorings, g.num_edges)
    return (w is None), w


class _deep_recursion:
    def __init__(self, depth: int):
        self.need = depth + 200

    def __enter__(self):
        self.old = sys.getrecursionlimit()
        if self.need > self.old:
            sys.setrecursionlimit(self.need)

    def __exit__(self, *exc):
        sys.setrecursionlimit(self.old)
        return False
