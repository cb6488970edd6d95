"""Command line: gen, verify, reproduce, export."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .coloring import enumerate_edge_colorings
from .complex import build_edge_complex
from .families import LADDER_CONVENTIONS, from_spec
from .formats import (
    FormatError,
    canonical_cubic,
    cubic_to_dot,
    cubic_to_graph6,
    from_graph6,
    graph_hash,
    read_cub,
    simple_to_dot,
    to_graph6,
    write_col,
    write_cub,
)
from .graph import CubicGraph, GraphError, line_graph, make_cubic
from .store import ReportStore
from .tables import TABLES, reproduce, to_json, to_markdown
from .verifier import MODES, verify_edge_reflexive, verify_via_blocks

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def load_graph(arg: str, convention: str = "squares") -> CubicGraph:
    """``@path`` (``.cub`` or ``.g6``), a bare existing ``.cub`` path, or a family spec.

    The result is in canonical ``.cub`` edge order.
    """
    try:
        path = None
        if arg.startswith("@"):
            path = Path(arg[1:])
        elif arg.endswith((".cub", ".g6")) and Path(arg).exists():
            path = Path(arg)
        if path is None:
            g = from_spec(arg, convention)
        elif path.suffix == ".g6":
            x = from_graph6(path.read_text().strip().splitlines()[0])
            g = make_cubic(x.n, x.sorted_edges())
        else:
            g = read_cub(path.read_text())
    except OSError as exc:
        raise InputError(f"{arg}: {exc.strerror or exc}") from exc
    except (FormatError, GraphError, ValueError, TypeError) as exc:
        raise InputError(f"{arg}: {exc}") from exc
    return canonical_cubic(g)


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# --- gen ----------------------------------------------------------------


def cmd_gen(args) -> int:
    g = load_graph(args.spec, args.ladder_convention)
    _write(write_cub(g), args.out)
    return EXIT_OK


# --- verify -------------------------------------------------------------


def _verify_job(job):
    arg, mode, convention, blocks = job
    try:
        g = load_graph(arg, convention)
    except InputError as exc:
        return {"input": arg, "error": str(exc)}
    try:
        report = verify_edge_reflexive(g, mode).to_dict()
    except GraphError as exc:
        return {"input": arg, "error": f"{arg}: {exc}"}
    out = {"input": arg, "graph_hash": report["graph_hash"], "report": report}
    if blocks:
        out["blocks"] = verify_via_blocks(g, mode).to_dict()
    return out


def _summary(res: dict) -> str:
    r = res["report"]
    tag = " [cached]" if res.get("cached") else ""
    line = (
        f"{res['input']}: reflexive={str(r['reflexive']).lower()} colorful={str(r['colorful']).lower()} "
        f"n={r['n']} colorings={r['coloring_count']} b_colorings={r['b_coloring_count']} ({r['reason']}){tag}"
    )
    if "blocks" in res:
        b = res["blocks"]
        verdict = "reflexive" if b["verdict"] else "inconclusive"
        line += f"\n  blocks: {len(b['blocks'])} after cutting {len(b['cutedges'])} cutedges, {verdict}"
    return line


def cmd_verify(args) -> int:
    conventions = {"ladder_convention": args.ladder_convention}
    store = None if args.no_cache else ReportStore(args.store)
    results: list[dict | None] = [None] * len(args.inputs)
    pending = []
    for i, arg in enumerate(args.inputs):
        if store is not None and not args.blocks:
            try:
                g = load_graph(arg, args.ladder_convention)
            except InputError as exc:
                results[i] = {"input": arg, "error": str(exc)}
                continue
            hit = store.lookup(graph_hash(g), args.mode, conventions)
            if hit is not None:
                results[i] = {"input": arg, "graph_hash": hit.graph_hash, "report": hit.report, "cached": True}
                continue
        pending.append(i)

    jobs = [(args.inputs[i], args.mode, args.ladder_convention, args.blocks) for i in pending]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            fresh = list(pool.map(_verify_job, jobs))
    else:
        fresh = [_verify_job(j) for j in jobs]
    for i, res in zip(pending, fresh):
        results[i] = res
        if store is not None and "error" not in res:
            store.put(res["graph_hash"], args.inputs[i], args.mode, conventions, res["report"])

    code = EXIT_OK
    for res in results:
        if "error" in res:
            print(f"error: {res['error']}", file=sys.stderr)
            code = EXIT_INPUT
            continue
        r = res["report"]
        if r["internal_errors"]:
            code = max(code, EXIT_MISMATCH)
        if args.expect is not None and r["reflexive"] != (args.expect == "reflexive"):
            code = max(code, EXIT_MISMATCH)
    good = [r for r in results if "error" not in r]
    if args.json:
        payload = good[0] if len(args.inputs) == 1 and good else good
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for res in good:
            print(_summary(res))
    return code


# --- reproduce ----------------------------------------------------------


def cmd_reproduce(args) -> int:
    tables = list(TABLES) if args.table == "all" else [args.table]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ok = True
    for t in tables:
        result = reproduce(t, args.mode, args.ladder_convention, args.jobs, args.extended)
        ok &= result["ok"]
        md = to_markdown(result)
        (out_dir / f"reproduce-{t}.md").write_text(md)
        (out_dir / f"reproduce-{t}.json").write_text(to_json(result))
        if args.json:
            sys.stdout.write(to_json(result))
        else:
            sys.stdout.write(md + "\n")
    return EXIT_OK if ok else EXIT_MISMATCH


# --- export -------------------------------------------------------------


def _graph_json(g: CubicGraph) -> dict:
    return {"n": g.n, "full_edges": [list(p) for p in g.full_edges], "half_edges": list(g.half_edges)}


def export_text(g: CubicGraph, fmt: str, what: str, mode: str = "fast") -> str:
    if what == "report":
        if fmt != "json":
            raise FormatError("reports export only as json")
        return json.dumps(verify_edge_reflexive(g, mode).to_dict(timings=False), indent=2, sort_keys=True) + "\n"
    if what == "colorings":
        cols = enumerate_edge_colorings(g)
        if fmt == "col":
            return write_col(cols)
        if fmt == "json":
            return json.dumps([[list(c) for c in p] for p in cols]) + "\n"
        raise FormatError("colorings export as col or json")
    if fmt == "col":
        raise FormatError("col format holds colorings only")
    if what == "graph":
        if fmt == "cub":
            return write_cub(g)
        if fmt == "dot":
            return cubic_to_dot(g)
        if fmt == "graph6":
            return cubic_to_graph6(g) + "\n"
        return json.dumps(_graph_json(g), sort_keys=True) + "\n"
    if what == "line":
        x = line_graph(g)
        extra = {}
    else:
        b = build_edge_complex(g)
        x = b.adjacency
        extra = {"classes": [list(c) for c in b.classes], "colorings": [list(t) for t in b.colorings]}
    if fmt == "cub":
        raise FormatError("cub format holds cubic graphs only")
    if fmt == "dot":
        return simple_to_dot(x, "L" if what == "line" else "B")
    if fmt == "graph6":
        return to_graph6(x) + "\n"
    return json.dumps({"n": x.n, "edges": [list(e) for e in x.sorted_edges()], **extra}, sort_keys=True) + "\n"


def cmd_export(args) -> int:
    g = load_graph(args.input, args.ladder_convention)
    try:
        text = export_text(g, args.format, args.what, args.mode)
    except FormatError as exc:
        raise InputError(str(exc)) from exc
    _write(text, args.out)
    return EXIT_OK


# --- entry point --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=MODES, default="fast")
    common.add_argument("--ladder-convention", choices=LADDER_CONVENTIONS, default="squares")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="edgereflex", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="write a family member as .cub")
    g.add_argument("spec", help="family spec, e.g. theta:2,2,5 or prism:4")
    g.add_argument("-o", "--out", help="output path (default stdout)")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", parents=[common], help="decide edge-reflexivity")
    v.add_argument("inputs", nargs="+", help="@file.cub, @file.g6 or family spec")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--store", help="JSONL store (default $REFLEX_STORE or ./reflex-store.jsonl)")
    v.add_argument("--no-cache", action="store_true", help="neither read nor write the store")
    v.add_argument("--blocks", action="store_true", help="also verify blocks after cutting cutedges")
    v.add_argument("--expect", choices=("reflexive", "not-reflexive"), help="exit 1 unless every verdict matches")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reproduce", parents=[common], help="run an expectation table")
    r.add_argument("table", choices=TABLES + ("all",))
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--extended", action="store_true", help="include the long theta-ladder lists")
    r.add_argument("--out-dir", default="reproduction", help="where the .md and .json artifacts go")
    r.set_defaults(func=cmd_reproduce)

    e = sub.add_parser("export", parents=[common], help="export a graph, its line graph, complex or colorings")
    e.add_argument("input")
    e.add_argument("--format", choices=("cub", "dot", "graph6", "json", "col"), default="json")
    e.add_argument("--what", choices=("graph", "line", "complex", "colorings", "report"), default="graph")
    e.add_argument("-o", "--out")
    e.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
