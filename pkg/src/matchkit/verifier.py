"""Checks deciding how close a graph is to a 4-regular matchstick graph,
plus the four construction-rule checks used for the near-matchstick corpus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import geometry
from .geometry import IntersectionClass, DISJOINT, ENDPOINT_TOUCH
from .model import Edge, Graph, ToleranceProfile, degree_sequence, edge_lengths


@dataclass(frozen=True)
class VerificationReport:
    degrees_ok: bool
    offending_vertices: tuple[int, ...]
    max_unit_deviation: float
    red_deviations: tuple[tuple[Edge, float], ...]
    crossings: tuple[tuple[Edge, Edge, IntersectionClass], ...]
    coincidences: tuple[tuple, ...]
    min_clearance: float
    is_matchstick: bool
    is_near_matchstick: bool

    def to_dict(self) -> dict:
        # min_clearance is +inf when no non-adjacent edge pairs exist; JSON
        # has no Infinity literal, so the serialized form uses null instead.
        clearance = self.min_clearance if math.isfinite(self.min_clearance) else None
        return {
            "degrees_ok": self.degrees_ok,
            "offending_vertices": list(self.offending_vertices),
            "max_unit_deviation": self.max_unit_deviation,
            "red_deviations": [
                {"edge": list(e), "deviation": d} for e, d in self.red_deviations
            ],
            "crossings": [
                {"edge1": list(e1), "edge2": list(e2), "kind": c.kind}
                for e1, e2, c in self.crossings
            ],
            "coincidences": [list(c) for c in self.coincidences],
            "min_clearance": clearance,
            "is_matchstick": self.is_matchstick,
            "is_near_matchstick": self.is_near_matchstick,
        }


@dataclass(frozen=True)
class RuleReport:
    rule1_rigid: bool
    rule2_frame_clean: bool
    rule3_red_count: int
    rule3_ok: bool
    rule4_deviation_cap: bool
    notes: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "rule1_rigid": self.rule1_rigid,
            "rule2_frame_clean": self.rule2_frame_clean,
            "rule3_red_count": self.rule3_red_count,
            "rule3_ok": self.rule3_ok,
            "rule4_deviation_cap": self.rule4_deviation_cap,
            "notes": list(self.notes),
        }


def check_regular(g: Graph, k: int) -> tuple[bool, list[int]]:
    if k < 0:
        raise ValueError("degree must be non-negative")
    offending = [i for i, d in enumerate(degree_sequence(g)) if d != k]
    return not offending, offending


def check_crossings(g: Graph, profile: ToleranceProfile):
    """Classify every non-adjacent edge pair; returns (violations, min_clearance).

    Pairs whose endpoints nearly coincide (endpoint_touch) are left to the
    coincidence check, so violations here are proper crossings, interior
    touches, and collinear overlaps.
    """
    violations = []
    min_clearance = float("inf")
    edges = g.edges
    V = g.vertices
    for i in range(len(edges)):
        u1, v1 = edges[i]
        s1 = (V[u1], V[v1])
        for j in range(i + 1, len(edges)):
            u2, v2 = edges[j]
            if u1 in (u2, v2) or v1 in (u2, v2):
                continue
            c = geometry.classify_segments(s1, (V[u2], V[v2]),
                                           profile.coincidence_tol)
            min_clearance = min(min_clearance, c.clearance)
            if c.kind not in (DISJOINT, ENDPOINT_TOUCH):
                violations.append((edges[i], edges[j], c))
    return violations, min_clearance


def check_coincidence(g: Graph, profile: ToleranceProfile) -> list[tuple]:
    """Vertex pairs and (vertex, non-incident edge) pairs closer than tolerance.

    Entries are ("vertex", i, j, distance) and ("edge", i, (u, v), distance).
    """
    tol = profile.coincidence_tol
    found = []
    V = g.vertices
    for i in range(g.n):
        for j in range(i + 1, g.n):
            d = geometry.distance(V[i], V[j])
            if d < tol:
                found.append(("vertex", i, j, d))
    for u, v in g.edges:
        for i in range(g.n):
            if i in (u, v):
                continue
            d = geometry.point_segment_distance(V[i], V[u], V[v])
            if d < tol:
                found.append(("edge", i, (u, v), d))
    return found


def verify(g: Graph, profile: ToleranceProfile | None = None) -> VerificationReport:
    """Aggregate regularity, length, crossing, and coincidence checks."""
    profile = profile or ToleranceProfile()
    degrees_ok, offending = check_regular(g, 4)
    gray_dev = 0.0
    red_devs = []
    for edge, _, dev in edge_lengths(g):
        if edge in g.red_edges:
            red_devs.append((edge, dev))
        else:
            gray_dev = max(gray_dev, abs(dev))
    crossings, min_clearance = check_crossings(g, profile)
    coincidences = check_coincidence(g, profile)
    geometry_ok = (degrees_ok and not crossings and not coincidences
                   and gray_dev <= profile.unit_tol)
    return VerificationReport(
        degrees_ok=degrees_ok,
        offending_vertices=tuple(offending),
        max_unit_deviation=gray_dev,
        red_deviations=tuple(red_devs),
        crossings=tuple(crossings),
        coincidences=tuple(coincidences),
        min_clearance=min_clearance,
        is_matchstick=geometry_ok and not g.red_edges,
        is_near_matchstick=geometry_ok,
    )


def check_construction_rules(g: Graph, rig, frame,
                             profile: ToleranceProfile | None = None) -> RuleReport:
    """The four construction rules: rigid, clean frame, at most three red
    edges, red deviations within the cap. `rig` is a RigidityReport and
    `frame` a FrameReport computed for the same graph."""
    profile = profile or ToleranceProfile()
    red_count = len(g.red_edges)
    devs = [abs(d) for e, _, d in edge_lengths(g) if e in g.red_edges]
    rule4 = all(d <= profile.rule_deviation_cap for d in devs)
    notes = []
    if frame.red_in_frame:
        notes.append(f"red edges inside frame triangles: {sorted(frame.red_in_frame)}")
    if not rule4:
        worst = max(devs)
        notes.append(f"max red deviation {worst:.6f} exceeds cap "
                     f"{profile.rule_deviation_cap}")
    return RuleReport(
        rule1_rigid=rig.infinitesimally_rigid,
        rule2_frame_clean=not frame.red_in_frame,
        rule3_red_count=red_count,
        rule3_ok=red_count <= 3,
        rule4_deviation_cap=rule4,
        notes=tuple(notes),
    )
