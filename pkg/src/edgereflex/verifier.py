"""Edge-reflexivity decision procedures, necessary-condition audits and block reports."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Any

from .coloring import (
    count_vertex_colorings,
    enumerate_edge_colorings,
    enumerate_vertex_colorings,
    is_edge_colorful,
    is_edge_coloring,
    parity_signature,
)
from .complex import (
    ColoringComplex,
    ComplexError,
    b_squared,
    build_edge_complex,
    canonical_map,
    check_triangle_lemma,
    degree_law,
    phi_isomorphism,
    phi_partition_check,
    removal_structure,
    star_colorings,
)
from .formats import graph_hash
from .graph import CubicGraph, GraphError, components, cubic_components, cutedges, is_triangle_free, line_graph, validate

MODES = ("fast", "full")

# Full mode refuses to build B(B(X)) beyond this many colourings of B(X).
FULL_MODE_LIMIT = 200_000


@dataclass
class ReflexivityReport:
    graph_hash: str
    n: int
    full_edges: int
    half_edges: int
    multi_edge: bool
    triangle_free: bool
    mode: str
    colorable: bool
    coloring_count: int
    labelled_coloring_count: int
    class_count: int
    b_component_count: int
    colorful: bool
    colorful_witness: Any
    b_coloring_count: int | None
    star_count: int
    reflexive: bool
    reason: str
    cross_check: dict = field(default_factory=dict)
    necessary_conditions: dict = field(default_factory=dict)
    structural: dict = field(default_factory=dict)
    empty_part_seen: bool = False
    internal_errors: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("timings")
        return d

    def verdict(self) -> dict:
        """Fields that must be identical between a cached and a fresh run."""
        return self.to_dict(timings=False)


def _witness_json(w):
    return list(w) if isinstance(w, tuple) else w


def audit_necessary_conditions(g: CubicGraph, b: ColoringComplex | None = None) -> dict:
    """Component law per edge and degree law per vertex of L(g).

    For an edge-reflexive graph, B - phi(e) is bipartite with one component for
    a half-edge and two for a full edge, and every vertex of L(g) of degree d
    satisfies d = 2**t. Parallel edges are exempt from the first law
    (``ok`` is None). The results are data; failures are not errors here.
    """
    if b is None:
        cols = enumerate_edge_colorings(g)
        if not cols:
            return {"applicable": False, "reason": "not 3-edge-colorable"}
        b = build_edge_complex(g, cols)
    x = line_graph(g)
    phi = canonical_map(x, b)
    edge_rows = []
    parallel = {p for p in g.full_edges if g.full_edges.count(p) > 1}
    for e in range(g.num_edges):
        bip, t = removal_structure(b, phi[e])
        row = {"edge": e, "half": g.is_half(e), "bipartite": bip, "components": t}
        if not g.is_half(e) and g.full_edges[e] in parallel:
            # the law counts on a full edge having degree 4 in L(g); the
            # degree law still covers parallel edges
            row["ok"] = None
        else:
            row["ok"] = bip and t == (1 if g.is_half(e) else 2)
        edge_rows.append(row)
    deg_rows = degree_law(x, b)
    failing_edges = [r["edge"] for r in edge_rows if r["ok"] is False]
    failing_vertices = [r["vertex"] for r in deg_rows if not r["ok"]]
    return {
        "applicable": True,
        "component_law": edge_rows,
        "degree_law": deg_rows,
        "component_law_ok": not failing_edges,
        "degree_law_ok": not failing_vertices,
        "first_failure": (
            f"component law at edge {failing_edges[0]}" if failing_edges
            else f"degree law at vertex {failing_vertices[0]}" if failing_vertices
            else None
        ),
    }


def _structural_checks(g: CubicGraph, cols, b: ColoringComplex) -> dict:
    x = line_graph(g)
    parity_ok = all(parity_signature(g, c)[1] for c in cols)
    structure_ok = all(is_edge_coloring(g, c) for c in cols)
    tri = check_triangle_lemma(b, x)
    hom_bad = phi_partition_check(x, b)
    return {
        "parity_ok": parity_ok,
        "colorings_well_formed": structure_ok,
        "triangle_lemma": {"applicable": tri.applicable, "ok": tri.ok, "detail": tri.detail},
        "phi_homomorphism_ok": not hom_bad,
        "phi_homomorphism_bad_edges": [list(e) for e in hom_bad[:5]],
    }


def verify_edge_reflexive(g: CubicGraph, mode: str = "fast") -> ReflexivityReport:
    """Decide edge-reflexivity of ``g``.

    The verdict of record is "edge-colourful and B(L(g)) has exactly one
    colouring per vertex star". The star count is n except for a triple edge,
    where both vertices share one star and L(g) = K3 has a single triangle.
    ``full`` mode also builds B(B(L(g))) and checks that the canonical map is
    an isomorphism; a disagreement is recorded in ``internal_errors``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    problems = validate(g)
    if problems:
        raise GraphError("invalid cubic graph: " + "; ".join(problems))
    timings: dict[str, float] = {}
    clock = time.perf_counter()

    def lap(name: str) -> None:
        nonlocal clock
        now = time.perf_counter()
        timings[name] = round(now - clock, 6)
        clock = now

    cols = enumerate_edge_colorings(g)
    lap("edge_colorings")
    base = dict(
        graph_hash=graph_hash(g),
        n=g.n,
        full_edges=g.num_full,
        half_edges=len(g.half_edges),
        multi_edge=g.has_multi_edges(),
        triangle_free=is_triangle_free(g),
        mode=mode,
        coloring_count=len(cols),
        labelled_coloring_count=6 * len(cols),
        star_count=len({frozenset(s) for s in g.incidence()}),
    )
    if not cols:
        return ReflexivityReport(
            **base, colorable=False, class_count=0, b_component_count=0, colorful=False,
            colorful_witness="no colorings", b_coloring_count=None, reflexive=False,
            reason="not 3-edge-colorable",
            cross_check={"count_matches": False, "stars_only": False, "phi_isomorphism": None, "agree": None},
            necessary_conditions={"applicable": False, "reason": "not 3-edge-colorable"},
            timings=timings,
        )

    b = build_edge_complex(g, cols)
    colorful, witness = is_edge_colorful(g, cols)
    lap("complex")
    b_count = count_vertex_colorings(b.adjacency)
    lap("b_count")

    # Statement (iii): every colouring of B is a star {phi(e), phi(f), phi(h)}.
    # Enumerating n + 1 colourings suffices: there are at most n stars.
    sample = enumerate_vertex_colorings(b.adjacency, limit=g.n + 1)
    stars = star_colorings(g, b)
    stars_only = all(c in stars for c in sample)
    lap("stars")

    count_matches = b_count == base["star_count"]
    reflexive = colorful and count_matches
    phi_iso = None
    errors: list[str] = []
    if mode == "full":
        try:
            _, b2 = b_squared(line_graph(g), b, limit=FULL_MODE_LIMIT)
            diag = phi_isomorphism(line_graph(g), b, b2)
            phi_iso = diag.reflexive
            if diag.b2_size and len(b2.colorings) != b_count:
                errors.append("B(B(X)) triangle count differs from the colouring count of B(X)")
        except ComplexError as exc:
            errors.append(f"full mode skipped: {exc}")
        lap("b_squared")
        if phi_iso is not None and phi_iso != reflexive:
            errors.append("fast and full verdicts disagree")

    agree = None
    if colorful:
        flags = [count_matches, stars_only] + ([phi_iso] if phi_iso is not None else [])
        agree = len(set(flags)) == 1
        if not agree:
            errors.append("equivalent reflexivity criteria disagree")

    necessary = audit_necessary_conditions(g, b)
    if reflexive and not (necessary["component_law_ok"] and necessary["degree_law_ok"]):
        errors.append("reflexive verdict violates a necessary condition")
    structural = _structural_checks(g, cols, b)
    lap("audit")
    if not structural["parity_ok"]:
        errors.append("parity lemma violated")
    if structural["triangle_lemma"]["applicable"] and not structural["triangle_lemma"]["ok"]:
        errors.append("triangle lemma violated")
    if not structural["phi_homomorphism_ok"]:
        errors.append("canonical map is not a homomorphism")

    if reflexive:
        reason = "edge-colorful and B has one coloring per vertex star"
    elif not colorful:
        reason = "not edge-colorful"
    else:
        reason = f"B has {b_count} colorings, expected {base['star_count']}"

    return ReflexivityReport(
        **base,
        colorable=True,
        class_count=b.size,
        b_component_count=len(components(b.adjacency)),
        colorful=colorful,
        colorful_witness=_witness_json(witness),
        b_coloring_count=b_count,
        reflexive=reflexive,
        reason=reason,
        cross_check={"count_matches": count_matches, "stars_only": stars_only, "phi_isomorphism": phi_iso, "agree": agree},
        necessary_conditions=necessary,
        structural=structural,
        empty_part_seen=b.had_empty_part,
        internal_errors=errors,
        timings=timings,
    )


@dataclass
class Block:
    graph: CubicGraph
    vertices: tuple[int, ...]
    edge_labels: tuple[int, ...]
    report: ReflexivityReport


@dataclass
class BlockReport:
    cutedges: list[int]
    blocks: list[Block]
    # True when every block is edge-reflexive; None otherwise, because a
    # non-reflexive block does not make the whole graph non-reflexive.
    verdict: bool | None

    def to_dict(self) -> dict:
        return {
            "cutedges": self.cutedges,
            "verdict": self.verdict,
            "sufficient_only": True,
            "blocks": [
                {
                    "vertices": list(b.vertices),
                    "edge_labels": list(b.edge_labels),
                    "reflexive": b.report.reflexive,
                    "report": b.report.to_dict(timings=False),
                }
                for b in self.blocks
            ],
        }


def split_at_cutedges(g: CubicGraph) -> tuple[list[int], list[tuple[CubicGraph, tuple[int, ...], tuple[int, ...]]]]:
    """Cut every cutedge at once. Each piece keeps the labels of its edges in
    ``g``; a cut edge appears as a half-edge in both pieces it separated."""
    bridges = cutedges(g)
    bridge_set = set(bridges)
    rest = CubicGraph(g.n, tuple(p for i, p in enumerate(g.full_edges) if i not in bridge_set), ())
    pieces = []
    for comp in cubic_components(rest):
        index = {v: i for i, v in enumerate(comp)}
        full, full_lab, half, half_lab = [], [], [], []
        for e in range(g.num_edges):
            ends = g.endpoints(e)
            inside = [v for v in ends if v in index]
            if not inside:
                continue
            if len(ends) == 2 and e not in bridge_set:
                full.append((index[ends[0]], index[ends[1]]))
                full_lab.append(e)
            else:
                for v in inside:
                    half.append(index[v])
                    half_lab.append(e)
        piece = CubicGraph(len(comp), tuple(full), tuple(half))
        pieces.append((piece, tuple(comp), tuple(full_lab + half_lab)))
    return bridges, pieces


def verify_via_blocks(g: CubicGraph, mode: str = "fast") -> BlockReport:
    bridges, pieces = split_at_cutedges(g)
    blocks = [Block(p, vs, labs, verify_edge_reflexive(p, mode)) for p, vs, labs in pieces]
    verdict = True if all(b.report.reflexive for b in blocks) else None
    return BlockReport(bridges, blocks, verdict)
