"""Graph data model, tolerance profile, and the on-disk graph file format.

Graphs are immutable values. The file format is JSON with coordinates kept
as decimal strings so a parsed graph serializes back byte-identically even
when the source prints more digits than a 64-bit float can hold.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

from .geometry import Point


class GraphFormatError(ValueError):
    """Parse failure; `kind` names the specific contract violation."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass(frozen=True)
class ToleranceProfile:
    unit_tol: float = 1e-6
    coincidence_tol: float = 1e-6
    rank_tol: float = 1e-8
    symmetry_tol: float = 1e-6
    rule_deviation_cap: float = 0.10

    def __post_init__(self):
        for name in ("unit_tol", "coincidence_tol", "rank_tol", "symmetry_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.rule_deviation_cap < 1.0:
            raise ValueError("rule_deviation_cap must lie in (0, 1)")


Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    vertices: tuple[Point, ...]
    edges: tuple[Edge, ...]                 # canonical u < v, sorted
    red_edges: frozenset[Edge]
    id: str = ""
    caption: str = ""
    symmetry_label: str | None = None
    claimed_deviations: tuple[tuple[Edge, str], ...] = ()
    # source decimal strings, kept so serialization is lossless
    vertex_strings: tuple[tuple[str, str], ...] | None = field(
        default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def with_vertices(self, vertices) -> "Graph":
        pts = tuple((float(x), float(y)) for x, y in vertices)
        if len(pts) != self.n:
            raise ValueError("vertex count must not change")
        return replace(self, vertices=pts, vertex_strings=None)


def make_graph(vertices, edges, red_edges=(), *, id="", caption="",
               symmetry_label=None, claimed_deviations=(),
               vertex_strings=None) -> Graph:
    """Build a Graph, canonicalizing edges and checking model invariants."""
    pts = tuple((float(x), float(y)) for x, y in vertices)
    for x, y in pts:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise GraphFormatError("malformed", "non-finite coordinate")
    n = len(pts)
    canon: list[Edge] = []
    seen: set[Edge] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError("index", f"edge ({u},{v}) out of range")
        if u == v:
            raise GraphFormatError("self_loop", f"self-loop at {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise GraphFormatError("duplicate_edge", f"duplicate edge {e}")
        seen.add(e)
        canon.append(e)
    canon.sort()
    reds: set[Edge] = set()
    for u, v in red_edges:
        u, v = int(u), int(v)
        e = (u, v) if u < v else (v, u)
        if e not in seen:
            raise GraphFormatError("red_not_edge", f"red edge {e} not in edge set")
        reds.add(e)
    claims: list[tuple[Edge, str]] = []
    for e, length in claimed_deviations:
        u, v = int(e[0]), int(e[1])
        ce = (u, v) if u < v else (v, u)
        if ce not in reds:
            raise GraphFormatError("claim_not_red",
                                   f"claimed deviation on non-red edge {ce}")
        claims.append((ce, str(length)))
    return Graph(pts, tuple(canon), frozenset(reds), id=id, caption=caption,
                 symmetry_label=symmetry_label,
                 claimed_deviations=tuple(claims),
                 vertex_strings=vertex_strings)


def graph_from_dict(doc: dict) -> Graph:
    if not isinstance(doc, dict):
        raise GraphFormatError("malformed", "graph document must be an object")
    try:
        raw_vertices = doc["vertices"]
        raw_edges = doc["edges"]
    except KeyError as exc:
        raise GraphFormatError("malformed", f"missing key {exc}") from exc
    strings = []
    coords = []
    for pair in raw_vertices:
        if len(pair) != 2:
            raise GraphFormatError("malformed", f"bad vertex entry {pair!r}")
        sx, sy = str(pair[0]), str(pair[1])
        try:
            coords.append((float(sx), float(sy)))
        except ValueError as exc:
            raise GraphFormatError("malformed", f"bad coordinate {pair!r}") from exc
        strings.append((sx, sy))
    claims = [((c["edge"][0], c["edge"][1]), c["length"])
              for c in doc.get("claimed_deviations", [])]
    return make_graph(
        coords, raw_edges, doc.get("red_edges", []),
        id=doc.get("id", ""), caption=doc.get("caption", ""),
        symmetry_label=doc.get("symmetry"),
        claimed_deviations=claims, vertex_strings=tuple(strings))


def parse_graph(text: str) -> Graph:
    """Parse graph file content; raises GraphFormatError on any violation."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError("malformed", f"invalid JSON: {exc}") from exc
    return graph_from_dict(doc)


def _coordinate_strings(g: Graph) -> list[list[str]]:
    if g.vertex_strings is not None:
        return [[sx, sy] for sx, sy in g.vertex_strings]
    return [[repr(x), repr(y)] for x, y in g.vertices]


def graph_to_dict(g: Graph) -> dict:
    return {
        "id": g.id,
        "caption": g.caption,
        "symmetry": g.symmetry_label,
        "vertices": _coordinate_strings(g),
        "edges": [[u, v] for u, v in g.edges],
        "red_edges": [[u, v] for u, v in sorted(g.red_edges)],
        "claimed_deviations": [
            {"edge": [u, v], "length": length}
            for (u, v), length in g.claimed_deviations
        ],
    }


def serialize_graph(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), indent=2, ensure_ascii=False) + "\n"


def degree_sequence(g: Graph) -> list[int]:
    deg = [0] * g.n
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def edge_lengths(g: Graph) -> list[tuple[Edge, float, float]]:
    """Per edge (sorted): (edge, length, deviation from unit)."""
    out = []
    for u, v in g.edges:
        length = math.dist(g.vertices[u], g.vertices[v])
        out.append(((u, v), length, length - 1.0))
    return out
