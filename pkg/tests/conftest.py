from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from edgereflex.formats import graph_hash
from edgereflex.tables import rows_for
from edgereflex.verifier import verify_edge_reflexive

CORPUS_TABLES = ("theta", "base-cases", "prisms", "k33-subdivisions", "theta-ladders")


@lru_cache(maxsize=None)
def corpus() -> tuple:
    """(label, graph) pairs from the expectation tables, one per distinct graph."""
    seen, out = set(), []
    for t in CORPUS_TABLES:
        for row in rows_for(t):
            g = row.build()
            h = graph_hash(g)
            if h not in seen:
                seen.add(h)
                out.append((f"{t}/{row.label}", g))
    return tuple(out)


@lru_cache(maxsize=None)
def report_for(g, mode="fast"):
    return verify_edge_reflexive(g, mode)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
