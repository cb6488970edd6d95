"""Append-only JSONL cache of verification reports."""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__

DEFAULT_STORE = "reflex-store.jsonl"

_lock = threading.Lock()


def store_path(explicit: str | None = None) -> Path:
    return Path(explicit or os.environ.get("REFLEX_STORE") or DEFAULT_STORE)


@dataclass
class RunRecord:
    graph_hash: str
    family: str
    mode: str
    conventions: dict
    version: str
    timestamp: float
    report: dict

    def key(self) -> tuple:
        return record_key(self.graph_hash, self.mode, self.conventions, self.version)


def record_key(graph_hash: str, mode: str, conventions: dict, version: str = __version__) -> tuple:
    return (graph_hash, mode, json.dumps(conventions, sort_keys=True), version)


class ReportStore:
    """JSONL file; the last record for a key wins. Stale versions never match."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = store_path(None if path is None else str(path))

    def records(self) -> list[RunRecord]:
        if not self.path.exists():
            return []
        out = []
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    out.append(RunRecord(**json.loads(line)))
                except (json.JSONDecodeError, TypeError):
                    continue  # a torn or foreign line is ignored, not fatal
        return out

    def index(self) -> dict[tuple, RunRecord]:
        return {r.key(): r for r in self.records()}

    def lookup(self, graph_hash: str, mode: str, conventions: dict) -> RunRecord | None:
        want = record_key(graph_hash, mode, conventions)
        found = None
        for r in self.records():
            if r.key() == want:
                found = r
        return found

    def append(self, record: RunRecord) -> None:
        line = (json.dumps(asdict(record), sort_keys=True) + "\n").encode("utf-8")
        if self.path.parent != Path(""):
            self.path.parent.mkdir(parents=True, exist_ok=True)
        # One write() on an O_APPEND descriptor keeps lines from interleaving.
        with _lock:
            fd = os.open(self.path, os.O_WRONLY | os.O_CREAT | os.O_APPEND, 0o644)
            try:
                os.write(fd, line)
            finally:
                os.close(fd)

    def put(self, graph_hash: str, family: str, mode: str, conventions: dict, report: dict) -> RunRecord:
        rec = RunRecord(graph_hash, family, mode, dict(conventions), __version__, time.time(), report)
        self.append(rec)
        return rec
