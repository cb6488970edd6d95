"""Constructors for cubic graph families and the outerplanar build operations."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .formats import FormatError, parse_edge_list, read_cub
from .graph import (
    CubicGraph,
    GraphError,
    SimpleGraph,
    cubic_invariant,
    cubic_isomorphic,
    cutedges,
    cubic_components,
    is_bipartite,
    is_triangle_free,
    make_cubic,
    validate,
)

LADDER_CONVENTIONS = ("squares", "rungs")


def cubic_vertex() -> CubicGraph:
    return make_cubic(1, [])


def cubic_path(n: int) -> CubicGraph:
    if n < 1:
        raise GraphError("cubic path needs n >= 1")
    return make_cubic(n, [(i, i + 1) for i in range(n - 1)])


def cubic_cycle(n: int) -> CubicGraph:
    if n < 3:
        raise GraphError("cubic cycle needs n >= 3")
    return make_cubic(n, [(i, (i + 1) % n) for i in range(n)])


def cubic_tree(n: int, edges: Sequence[tuple[int, int]]) -> CubicGraph:
    edges = list(edges)
    if len(edges) != n - 1:
        raise GraphError(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")
    g = make_cubic(n, edges)
    if n > 1 and len(cubic_components(g)) != 1:
        raise GraphError("tree edges do not form a connected acyclic graph")
    return g


def _dedupe(graphs: Iterable[CubicGraph]) -> list[CubicGraph]:
    buckets: dict[tuple, list[CubicGraph]] = {}
    out = []
    for g in graphs:
        bucket = buckets.setdefault(cubic_invariant(g), [])
        if any(cubic_isomorphic(g, h) is not None for h in bucket):
            continue
        bucket.append(g)
        out.append(g)
    return out


def all_cubic_trees(max_n: int) -> list[CubicGraph]:
    """Every tree of maximum degree <= 3 on 1..max_n vertices, up to isomorphism."""
    level = [cubic_vertex()]
    out = list(level)
    for n in range(2, max_n + 1):
        grown = []
        for t in level:
            for v in range(t.n):
                if t.half_edges.count(v) > 0:
                    edges = list(t.full_edges) + [(v, t.n)]
                    grown.append(make_cubic(t.n + 1, edges))
        level = _dedupe(grown)
        out.extend(level)
    return out


# --- outerplanar build calculus -----------------------------------------


def _check_op_target(g: CubicGraph, e: int) -> tuple[int, int, int, int]:
    if not 0 <= e < g.num_edges:
        raise GraphError(f"edge {e} does not exist")
    if g.is_half(e):
        raise GraphError(f"edge {e} is a half-edge")
    v1, v2 = g.full_edges[e]
    h1, h2 = g.half_edges_at(v1), g.half_edges_at(v2)
    if not h1 or not h2:
        raise GraphError(f"edge {e}: both endpoints must carry a half-edge")
    return v1, v2, h1[0], h2[0]


def _rebuild(n: int, full_slots: list, half_slots: list) -> tuple[CubicGraph, dict[str, int]]:
    """Assemble a graph from labelled slots; returns it and label -> new EdgeId."""
    full = [pair for _, pair in full_slots]
    half = [v for _, v in half_slots]
    ids = {}
    for i, (lab, _) in enumerate(full_slots):
        ids[lab] = i
    for i, (lab, _) in enumerate(half_slots):
        ids[lab] = len(full) + i
    return CubicGraph(n, tuple(full), tuple(half)), ids


def add_four_cycle(g: CubicGraph, e: int, with_map: bool = False):
    """Attach a 4-cycle along full edge ``e = v1v2`` whose endpoints carry half-edges.

    The half-edges e1 (at v1) and e2 (at v2) are extended to new vertices
    v4 and v3, joined by a new edge e3; v3 and v4 each get a new half-edge.
    With ``with_map`` also returns a dict old EdgeId -> new EdgeId.
    """
    v1, v2, e1, e2 = _check_op_target(g, e)
    v3, v4 = g.n, g.n + 1
    full_slots = [(i, pair) for i, pair in enumerate(g.full_edges)]
    full_slots += [(e1, (v1, v4)), (e2, (v2, v3)), ("e3", (v3, v4))]
    half_slots = [(g.num_full + i, v) for i, v in enumerate(g.half_edges) if g.num_full + i not in (e1, e2)]
    half_slots += [("h3", v3), ("h4", v4)]
    h, ids = _rebuild(g.n + 2, full_slots, half_slots)
    if with_map:
        return h, {k: v for k, v in ids.items() if isinstance(k, int)}
    return h


def subdivide_with_half_edge(g: CubicGraph, e: int, with_map: bool = False):
    """Subdivide full edge ``e = v1v2`` (both ends carrying half-edges) by a new
    vertex with its own half-edge. ``e`` keeps the v1 side."""
    v1, v2, _, _ = _check_op_target(g, e)
    v = g.n
    full_slots = [(i, pair) for i, pair in enumerate(g.full_edges) if i != e]
    full_slots.insert(e, (e, (v1, v)))
    full_slots.append(("e2", (v, v2)))
    half_slots = [(g.num_full + i, w) for i, w in enumerate(g.half_edges)]
    half_slots.append(("g", v))
    h, ids = _rebuild(g.n + 1, full_slots, half_slots)
    if with_map:
        return h, {k: val for k, val in ids.items() if isinstance(k, int)}
    return h


@dataclass(frozen=True)
class BuildStep:
    op: str  # "add4cycle" | "subdivide"
    edge: int


BuildProgram = Sequence[BuildStep]

_OPS = {"add4cycle": add_four_cycle, "subdivide": subdivide_with_half_edge}


def eligible_edges(g: CubicGraph) -> list[int]:
    """Full edges whose two endpoints both carry a half-edge."""
    has_half = set(g.half_edges)
    return [e for e, (u, v) in enumerate(g.full_edges) if u in has_half and v in has_half]


def run_build_program(program: BuildProgram, check: bool = True) -> CubicGraph:
    g = cubic_cycle(4)
    for i, step in enumerate(program):
        if step.op not in _OPS:
            raise GraphError(f"step {i}: unknown operation {step.op!r}")
        try:
            g = _OPS[step.op](g, step.edge)
        except GraphError as exc:
            raise GraphError(f"step {i}: {exc}") from exc
    if check:
        if validate(g):
            raise GraphError("build produced an invalid graph")
        if not is_triangle_free(g) or cutedges(g) or len(cubic_components(g)) != 1:
            raise GraphError("build produced a graph that is not 2-connected and triangle-free")
    return g


def parse_program(text: str) -> list[BuildStep]:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in _OPS:
            raise FormatError(f"line {lineno}: expected 'add4cycle <edge>' or 'subdivide <edge>'")
        steps.append(BuildStep(parts[0], int(parts[1])))
    return steps


def enumerate_build_programs(max_steps: int) -> list[tuple[list[BuildStep], CubicGraph]]:
    """Graphs reachable by at most ``max_steps`` operations, deduplicated by
    isomorphism level by level; each with one program producing it."""
    start = cubic_cycle(4)
    seen = [([], start)]
    frontier = [([], start)]
    for _ in range(max_steps):
        grown = []
        for prog, g in frontier:
            for e in eligible_edges(g):
                for op in _OPS:
                    step = BuildStep(op, e)
                    grown.append((prog + [step], _OPS[op](g, e)))
        kept_graphs = _dedupe([h for _, h in seen] + [h for _, h in grown])
        kept_ids = {id(h) for h in kept_graphs}
        frontier = [(p, h) for p, h in grown if id(h) in kept_ids]
        seen.extend(frontier)
    return seen


# --- theta graphs, prisms, subdivisions -----------------------------------


def theta(k: int, l: int, m: int) -> CubicGraph:
    """Two hubs joined by internally disjoint paths of lengths k, l, m.

    Parameters are sorted first; internal path vertices carry one half-edge.
    """
    k, l, m = sorted((k, l, m))
    if k < 1:
        raise GraphError("theta parameters must be >= 1")
    n = 2
    edges = []
    for length in (k, l, m):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return make_cubic(n, edges)


def prism(n: int) -> CubicGraph:
    if n < 3:
        raise GraphError("prism needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return CubicGraph(2 * n, tuple(edges), ())


def subdivide_plain(g: CubicGraph, e: int, k: int = 1) -> CubicGraph:
    """Replace full edge ``e`` by a path with ``k`` new vertices, each padded
    with a half-edge. EdgeId ``e`` becomes the first segment."""
    if g.is_half(e):
        raise GraphError(f"edge {e} is a half-edge")
    if k < 1:
        raise GraphError("k must be >= 1")
    u, v = g.full_edges[e]
    new = list(range(g.n, g.n + k))
    path = [u] + new + [v]
    full = list(g.full_edges)
    full[e] = (path[0], path[1])
    full += [(path[i], path[i + 1]) for i in range(1, k + 1)]
    half = list(g.half_edges) + new
    return CubicGraph(g.n + k, tuple(full), tuple(half))


def subdivide_all_once(g: CubicGraph) -> CubicGraph:
    h = g
    for e in range(g.num_full):
        h = subdivide_plain(h, e, 1)
    return h


def complete_bipartite_33() -> CubicGraph:
    return CubicGraph(6, tuple((i, j) for i in range(3) for j in range(3, 6)), ())


def generalized_petersen(n: int, k: int) -> CubicGraph:
    edges = set()
    for i in range(n):
        edges.add((i, (i + 1) % n))
        edges.add((i, n + i))
        edges.add((n + i, n + (i + k) % n))
    edges = sorted(tuple(sorted(p)) for p in edges)
    return CubicGraph(2 * n, tuple(edges), ())


def dodecahedron() -> CubicGraph:
    return generalized_petersen(10, 2)


def coxeter() -> CubicGraph:
    """Coxeter graph: 7-cycles on a (step 1), b (step 2), c (step 3), each d_i
    adjacent to a_i, b_i, c_i."""
    a, b, c, d = (lambda i: i % 7), (lambda i: 7 + i % 7), (lambda i: 14 + i % 7), (lambda i: 21 + i)
    edges = []
    for i in range(7):
        edges += [(a(i), a(i + 1)), (b(i), b(i + 2)), (c(i), c(i + 3))]
        edges += [(d(i), a(i)), (d(i), b(i)), (d(i), c(i))]
    return CubicGraph(28, tuple(edges), ())


# --- theta ladders and fusenes ------------------------------------------


def theta_ladder(l: int, m: int, n: int, convention: str = "squares") -> CubicGraph:
    """Two hexagons a1..a6, b1..b6 with edges a1a2/b1b2, a3a4/b3b4, a5a6/b5b6
    joined by ladders of lengths l, m, n.

    ``squares``: a length-k ladder has k squares (k-1 intermediate rungs), so
    k = 1 joins a_i to b_i directly. ``rungs``: a length-k ladder has k
    intermediate rungs (k+1 squares).
    """
    if convention not in LADDER_CONVENTIONS:
        raise GraphError(f"unknown ladder convention {convention!r}")
    if min(l, m, n) < 1:
        raise GraphError("ladder lengths must be >= 1")
    a = list(range(6))
    b = list(range(6, 12))
    edges = [(a[i], a[(i + 1) % 6]) for i in range(6)] + [(b[i], b[(i + 1) % 6]) for i in range(6)]
    nxt = 12
    for (i, j), k in zip(((0, 1), (2, 3), (4, 5)), (l, m, n)):
        inner = k - 1 if convention == "squares" else k
        left, right = a[i], a[j]
        for _ in range(inner):
            x, y = nxt, nxt + 1
            nxt += 2
            edges += [(left, x), (right, y), (x, y)]
            left, right = x, y
        edges += [(left, b[i]), (right, b[j])]
    return CubicGraph(nxt, tuple(edges), ())


def hexagonal_chain(k: int) -> CubicGraph:
    """Linear chain of k hexagons (acene shape), padded with half-edges."""
    if k < 1:
        raise GraphError("hexagonal chain needs k >= 1")
    cols = 2 * k + 1
    top = list(range(cols))
    bot = list(range(cols, 2 * cols))
    edges = [(top[i], top[i + 1]) for i in range(cols - 1)]
    edges += [(bot[i], bot[i + 1]) for i in range(cols - 1)]
    edges += [(top[i], bot[i]) for i in range(0, cols, 2)]
    return make_cubic(2 * cols, edges)


def check_fusene(n: int, edges: Sequence[tuple[int, int]]) -> list[str]:
    """Sanity checks for an ingested fusene: degree <= 3, bipartite, girth >= 6."""
    problems = []
    x = SimpleGraph.from_edges(n, edges)
    if len(x.edges) != len(edges):
        problems.append("parallel edges")
    for v in range(n):
        if x.degree(v) > 3:
            problems.append(f"degree {x.degree(v)} at vertex {v}")
    if not is_bipartite(x)[0]:
        problems.append("not bipartite")
    for u in range(n):
        for v in range(u + 1, n):
            if len(x.adj[u] & x.adj[v]) >= 2:
                problems.append(f"4-cycle through {u} and {v}")
                break
        else:
            continue
        break
    return problems


def ingest_fusene(path: str | Path) -> CubicGraph:
    """Read a fusene from a ``.cub`` file or a plain edge list and pad half-edges.

    Half-edges present in a ``.cub`` file are dropped and re-padded.
    """
    text = Path(path).read_text()
    if any(line.split()[:1] in (["edge"], ["half"]) for line in text.splitlines()):
        g = read_cub(text)
        n, edges = g.n, list(g.full_edges)
    else:
        n, edges = parse_edge_list(text)
    problems = check_fusene(n, edges)
    if problems:
        raise GraphError("fusene sanity check failed: " + "; ".join(problems))
    return make_cubic(n, edges)


def read_tree_file(path: str | Path) -> CubicGraph:
    n, edges = parse_edge_list(Path(path).read_text())
    return cubic_tree(n, edges)


# --- family spec parsing ------------------------------------------------

NAMED = {
    "vertex": cubic_vertex,
    "k2": lambda: cubic_path(2),
    "k33": complete_bipartite_33,
    "dodecahedron": dodecahedron,
    "coxeter": coxeter,
}


def _ints(arg: str, count: int | None = None) -> list[int]:
    try:
        vals = [int(t) for t in arg.split(",")]
    except ValueError as exc:
        raise FormatError(f"bad integer list {arg!r}") from exc
    if count is not None and len(vals) != count:
        raise FormatError(f"expected {count} integers, got {arg!r}")
    return vals


def _file_arg(arg: str) -> Path:
    if not arg.startswith("@"):
        raise FormatError(f"expected @file argument, got {arg!r}")
    return Path(arg[1:])


def from_spec(spec: str, ladder_convention: str = "squares") -> CubicGraph:
    """Build a graph from a family descriptor such as ``theta:2,2,5`` or ``k33``."""
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    if name in NAMED and not arg:
        return NAMED[name]()
    if name == "theta":
        return theta(*_ints(arg, 3))
    if name == "prism":
        return prism(*_ints(arg, 1))
    if name == "tl":
        return theta_ladder(*_ints(arg, 3), convention=ladder_convention)
    if name == "cycle":
        return cubic_cycle(*_ints(arg, 1))
    if name == "path":
        return cubic_path(*_ints(arg, 1))
    if name == "hexchain":
        return hexagonal_chain(*_ints(arg, 1))
    if name == "tree":
        return read_tree_file(_file_arg(arg))
    if name == "program":
        return run_build_program(parse_program(_file_arg(arg).read_text()))
    if name == "fusene":
        return ingest_fusene(_file_arg(arg))
    if name == "k33sub":
        k = _ints(arg, 1)[0]
        return subdivide_plain(complete_bipartite_33(), 0, k)
    if name == "k33suball" and not arg:
        return subdivide_all_once(complete_bipartite_33())
    raise FormatError(f"unknown family spec {spec!r}")
