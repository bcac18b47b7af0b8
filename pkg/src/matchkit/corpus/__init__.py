"""Embedded graph collection: every coordinate block from the source
figures, with captions, red-edge sets, and verified claimed lengths.

Files live under data/ in the graph file format; data/index.json maps ids
to files, captions, aliases, and extraction notes. Entries are parsed once
and shared (Graph values are immutable).
"""

from __future__ import annotations

import json
from functools import cache
from importlib.resources import files

from ..model import Graph, parse_graph

_DATA = files(__name__) / "data"


@cache
def load_index() -> tuple[dict, ...]:
    entries = json.loads((_DATA / "index.json").read_text(encoding="utf-8"))
    return tuple(entries)


@cache
def _by_id() -> dict[str, dict]:
    table: dict[str, dict] = {}
    for entry in load_index():
        table[entry["id"]] = entry
        for alias in entry.get("aliases", ()):
            table[alias] = entry
    return table


def corpus_ids() -> list[str]:
    return [entry["id"] for entry in load_index()]


@cache
def _load(file: str) -> Graph:
    return parse_graph((_DATA / file).read_text(encoding="utf-8"))


def get_graph(graph_id: str) -> Graph:
    """Load a corpus graph by id (aliases resolve to their canonical entry)."""
    entry = _by_id().get(graph_id)
    if entry is None:
        raise KeyError(f"unknown corpus id {graph_id!r}")
    return _load(entry["file"])


def get_document(graph_id: str) -> dict:
    """The raw graph document for an id, as stored on disk."""
    entry = _by_id().get(graph_id)
    if entry is None:
        raise KeyError(f"unknown corpus id {graph_id!r}")
    return json.loads((_DATA / entry["file"]).read_text(encoding="utf-8"))


def list_corpus() -> list[tuple[str, int, int, str | None]]:
    """(id, vertex count, red count, symmetry label) sorted by (count, id)."""
    rows = []
    for entry in load_index():
        g = get_graph(entry["id"])
        rows.append((g.id, g.n, len(g.red_edges), g.symmetry_label))
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows
