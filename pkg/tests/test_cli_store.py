from __future__ import annotations

import json
import random
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor

import pytest

from conftest import corpus, report_for
from edgereflex import __version__
from edgereflex import families as F
from edgereflex.cli import main
from edgereflex.formats import graph_hash, read_cub
from edgereflex.store import ReportStore, record_key
from edgereflex.verifier import verify_edge_reflexive


@pytest.fixture
def store_file(tmp_path, monkeypatch):
    path = tmp_path / "store.jsonl"
    monkeypatch.setenv("REFLEX_STORE", str(path))
    return path


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_examples(tmp_path, capsys):
    out = tmp_path / "t.cub"
    assert run(["gen", "theta:2,2,5", "-o", str(out)], capsys)[0] == 0
    assert read_cub(out.read_text()).n == 8
    code, text, _ = run(["gen", "prism:4"], capsys)
    g = read_cub(text)
    assert code == 0 and (g.n, g.num_full) == (8, 12)
    ops = tmp_path / "ops.txt"
    ops.write_text("subdivide 0\nadd4cycle 0\n")
    code, text, _ = run(["gen", f"program:@{ops}"], capsys)
    assert code == 0 and read_cub(text).n == 7


def test_gen_bad_spec_exits_2(capsys):
    code, _, err = run(["gen", "theta:1"], capsys)
    assert code == 2 and "error" in err


def test_verify_examples(store_file, capsys):
    code, text, _ = run(["verify", "theta:1,3,3", "--json"], capsys)
    assert code == 0 and json.loads(text)["report"]["reflexive"] is True
    code, text, _ = run(["verify", "prism:5", "--json"], capsys)
    assert code == 0 and json.loads(text)["report"]["colorful"] is False


def test_verify_file_full_mode(tmp_path, store_file, capsys):
    p = tmp_path / "g.cub"
    run(["gen", "k33", "-o", str(p)], capsys)
    code, text, _ = run(["verify", f"@{p}", "--mode", "full", "--json"], capsys)
    rep = json.loads(text)["report"]
    assert code == 0 and rep["cross_check"]["phi_isomorphism"] is True and rep["cross_check"]["agree"]


def test_verify_exit_codes(tmp_path, store_file, capsys):
    assert run(["verify", "theta:2,3,4", "--expect", "not-reflexive"], capsys)[0] == 0
    assert run(["verify", "theta:2,3,4", "--expect", "reflexive"], capsys)[0] == 1
    assert run(["verify", "nonsense:3"], capsys)[0] == 2
    assert run(["verify", f"@{tmp_path / 'missing.cub'}"], capsys)[0] == 2
    bad = tmp_path / "bad.cub"
    bad.write_text("vertices 1\nhalf 0\nhalf 0\n")
    code, _, err = run(["verify", f"@{bad}"], capsys)
    assert code == 2 and "degree 2 at vertex 0" in err


def test_verify_uses_cache(store_file, capsys):
    run(["verify", "prism:4"], capsys)
    _, text, _ = run(["verify", "prism:4"], capsys)
    assert "[cached]" in text
    _, text, _ = run(["verify", "prism:4", "--no-cache"], capsys)
    assert "[cached]" not in text
    lines = store_file.read_text().splitlines()
    assert len(lines) == 1


def test_cache_keyed_by_mode_convention_and_version(tmp_path):
    s = ReportStore(tmp_path / "s.jsonl")
    g = verify_edge_reflexive(F.prism(4))
    s.put(g.graph_hash, "prism:4", "fast", {"ladder_convention": "squares"}, g.to_dict())
    assert s.lookup(g.graph_hash, "fast", {"ladder_convention": "squares"}) is not None
    assert s.lookup(g.graph_hash, "full", {"ladder_convention": "squares"}) is None
    assert s.lookup(g.graph_hash, "fast", {"ladder_convention": "rungs"}) is None
    rec = s.records()[0]
    assert rec.version == __version__
    assert rec.key() != record_key(g.graph_hash, "fast", {"ladder_convention": "squares"}, "0.0.0")


def test_verify_parallel_results_in_input_order(store_file, capsys):
    specs = ["theta:2,2,5", "prism:5", "k33", "cycle:6", "theta:2,2,2"]
    code, text, _ = run(["verify", *specs, "--jobs", "3", "--no-cache", "--json"], capsys)
    got = json.loads(text)
    assert code == 0 and [r["input"] for r in got] == specs
    serial = json.loads(run(["verify", *specs, "--no-cache", "--json"], capsys)[1])
    strip = lambda rs: [{k: v for k, v in r["report"].items() if k != "timings"} for r in rs]
    assert strip(got) == strip(serial)


def test_cache_correctness_on_sampled_records(tmp_path):
    store = ReportStore(tmp_path / "cache.jsonl")
    graphs = [g for _, g in corpus()]
    for g in graphs:
        r = report_for(g)
        store.put(r.graph_hash, "corpus", "fast", {"ladder_convention": "squares"}, r.to_dict())
    records = store.records()
    assert len(records) >= 100
    by_hash = {graph_hash(g): g for g in graphs}
    for rec in random.Random(7).sample(records, 100):
        fresh = verify_edge_reflexive(by_hash[rec.graph_hash]).verdict()
        cached = {k: v for k, v in rec.report.items() if k != "timings"}
        assert cached == json.loads(json.dumps(fresh))


def test_concurrent_appends_do_not_interleave(tmp_path):
    store = ReportStore(tmp_path / "c.jsonl")
    big = {"blob": "x" * 20000}

    def put(i):
        store.put(f"h{i}", "f", "fast", {}, big)

    with ThreadPoolExecutor(8) as pool:
        list(pool.map(put, range(64)))
    lines = (tmp_path / "c.jsonl").read_text().splitlines()
    assert len(lines) == 64 and all(json.loads(l)["report"] == big for l in lines)


def test_store_skips_torn_lines(tmp_path):
    p = tmp_path / "t.jsonl"
    p.write_text('{"graph_hash": "a"\n\n')
    assert ReportStore(p).records() == []


def test_export_examples(tmp_path, capsys):
    code, text, _ = run(["export", "vertex", "--what", "complex", "--format", "graph6"], capsys)
    assert code == 0 and text.strip() == "Bw"
    code, text, _ = run(["export", "path:3", "--format", "dot"], capsys)
    assert code == 0 and "shape=point" in text
    code, text, _ = run(["export", "k33", "--what", "report", "--format", "json"], capsys)
    assert code == 0 and json.loads(text)["reflexive"] is True
    code, text, _ = run(["export", "k33", "--what", "colorings", "--format", "col"], capsys)
    assert code == 0 and len(text.splitlines()) == 2
    code, text, _ = run(["export", "k33", "--what", "line", "--format", "json"], capsys)
    assert code == 0 and json.loads(text)["n"] == 9


def test_export_mismatch_exits_2(capsys):
    assert run(["export", "vertex", "--format", "graph6"], capsys)[0] == 2
    assert run(["export", "k33", "--what", "report", "--format", "dot"], capsys)[0] == 2


def test_reproduce_writes_artifacts(tmp_path, capsys):
    code, text, _ = run(["reproduce", "prisms", "--out-dir", str(tmp_path)], capsys)
    assert code == 0 and "| Pi4 |" in text
    data = json.loads((tmp_path / "reproduce-prisms.json").read_text())
    assert data["ok"] and data["failed"] == 0
    assert "timings" not in (tmp_path / "reproduce-prisms.json").read_text()
    assert (tmp_path / "reproduce-prisms.md").exists()


def test_reproduce_exit_contract(tmp_path, capsys, monkeypatch):
    from edgereflex import tables

    original = tables._prism_rows
    monkeypatch.setattr(tables, "_prism_rows", lambda: original()[:1] + [tables.Row("prisms", "Pi5 (flipped)", lambda: F.prism(5), "reflexive", "test")])
    assert run(["reproduce", "prisms", "--out-dir", str(tmp_path)], capsys)[0] == 1


def test_console_entry_point_runs(tmp_path):
    r = subprocess.run([sys.executable, "-m", "edgereflex.cli", "verify", "k33", "--no-cache"], capture_output=True, text=True)
    assert r.returncode == 0 and "reflexive=true" in r.stdout
