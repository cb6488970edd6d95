"""Readers and writers: ``.cub``, ``.col``, graph6 and DOT."""

from __future__ import annotations

import hashlib
from typing import Iterable, Sequence

from .graph import CubicGraph, GraphError, SimpleGraph


class FormatError(ValueError):
    pass


# --- .cub ---------------------------------------------------------------


def canonical_cubic(g: CubicGraph) -> CubicGraph:
    """Reorder edges into ``.cub`` canonical order (sorted full edges, then sorted half-edges)."""
    return CubicGraph(g.n, tuple(sorted(g.full_edges)), tuple(sorted(g.half_edges)))


def canonical_edge_order(g: CubicGraph) -> list[int]:
    """EdgeIds of ``g`` listed in the order they appear in its canonical ``.cub`` form."""
    full = sorted(range(g.num_full), key=lambda e: (g.full_edges[e], e))
    half = sorted(range(g.num_full, g.num_edges), key=lambda e: (g.endpoints(e), e))
    return full + half


def write_cub(g: CubicGraph) -> str:
    c = canonical_cubic(g)
    lines = [f"vertices {c.n}"]
    lines += [f"edge {u} {v}" for u, v in c.full_edges]
    lines += [f"half {v}" for v in c.half_edges]
    return "\n".join(lines) + "\n"


def read_cub(text: str) -> CubicGraph:
    n = None
    full, half = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "vertices" and len(parts) == 2:
                if n is not None:
                    raise FormatError(f"line {lineno}: duplicate vertices line")
                n = int(parts[1])
            elif parts[0] == "edge" and len(parts) == 3:
                full.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "half" and len(parts) == 2:
                half.append(int(parts[1]))
            else:
                raise FormatError(f"line {lineno}: cannot parse {raw!r}")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: bad integer in {raw!r}") from exc
    if n is None or n < 0:
        raise FormatError("missing 'vertices <n>' line")
    for u, v in full:
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge ({u}, {v}) out of range")
    for v in half:
        if not 0 <= v < n:
            raise FormatError(f"half-edge at {v} out of range")
    return CubicGraph(n, tuple(full), tuple(half))


def graph_hash(g: CubicGraph) -> str:
    """SHA-256 of the canonical ``.cub`` text (not an isomorphism invariant)."""
    return hashlib.sha256(write_cub(g).encode()).hexdigest()


# --- .col ---------------------------------------------------------------


def write_col(colorings: Iterable[Sequence[Sequence[int]]]) -> str:
    out = []
    for classes in colorings:
        out.append("|".join(",".join(str(e) for e in sorted(c)) for c in classes))
    return "".join(line + "\n" for line in out)


def read_col(text: str) -> list[tuple[tuple[int, ...], ...]]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("|")
        if len(parts) != 3:
            raise FormatError(f"expected three classes in {line!r}")
        out.append(tuple(tuple(int(t) for t in p.split(",") if t) for p in parts))
    return out


# --- graph6 -------------------------------------------------------------


def _n_encode(n: int) -> list[int]:
    if n < 63:
        return [n]
    if n < 258048:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    if n < 68719476736:
        return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    raise FormatError("graph too large for graph6")


def to_graph6(x: SimpleGraph) -> str:
    """graph6 string (no header) for a simple graph."""
    bits = []
    for j in range(1, x.n):
        for i in range(j):
            bits.append(1 if x.has_edge(i, j) else 0)
    bits += [0] * (-len(bits) % 6)
    data = [int("".join(map(str, bits[k : k + 6])), 2) for k in range(0, len(bits), 6)]
    return "".join(chr(63 + b) for b in _n_encode(x.n) + data)


def from_graph6(s: str) -> SimpleGraph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    vals = [ord(c) - 63 for c in s]
    if any(not 0 <= v < 64 for v in vals):
        raise FormatError("invalid graph6 character")
    if not vals:
        raise FormatError("empty graph6 string")
    if vals[0] < 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) > 1 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        rest = vals[4:]
    else:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        rest = vals[8:]
    need = n * (n - 1) // 2
    if len(rest) != (need + 5) // 6:
        raise FormatError(f"graph6 body length {len(rest)} does not match n={n}")
    bits = []
    for v in rest:
        bits.extend((v >> (5 - k)) & 1 for k in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return SimpleGraph.from_edges(n, edges)


def cubic_to_graph6(g: CubicGraph) -> str:
    if g.half_edges:
        raise FormatError("graph6 export requires a graph without half-edges")
    if g.has_multi_edges():
        raise FormatError("graph6 export requires a graph without parallel edges")
    return to_graph6(SimpleGraph.from_edges(g.n, g.full_edges))


# --- DOT ----------------------------------------------------------------


def cubic_to_dot(g: CubicGraph, name: str = "G") -> str:
    """DOT text; half-edges become pendant point-shaped stub nodes."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(g.n):
        lines.append(f"  v{v} [label=\"{v}\"];")
    c = canonical_cubic(g)
    for e, (u, v) in enumerate(c.full_edges):
        lines.append(f"  v{u} -- v{v} [label=\"e{e}\"];")
    for i, v in enumerate(c.half_edges):
        e = c.num_full + i
        lines.append(f"  h{e} [shape=point];")
        lines.append(f"  v{v} -- h{e} [label=\"e{e}\", style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def simple_to_dot(x: SimpleGraph, name: str = "X") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(x.n)]
    lines += [f"  {u} -- {v};" for u, v in x.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Plain ``u v`` per line edge list (``#`` comments); n is max id + 1 unless
    a ``vertices <n>`` line is present."""
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertices":
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise FormatError(f"cannot parse edge line {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    if any(u == v for u, v in edges):
        raise GraphError("self-loop in edge list")
    return n, edges
