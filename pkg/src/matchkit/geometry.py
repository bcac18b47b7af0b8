"""Scalar geometric primitives shared by every other module.

All predicates are tolerance-based 64-bit float computations; coordinates
in this package are O(1)..O(10) so relative tolerances stay meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Point = tuple[float, float]

DISJOINT = "disjoint"
PROPER_CROSS = "proper_cross"
ENDPOINT_TOUCH = "endpoint_touch"
INTERIOR_TOUCH = "interior_touch"
COLLINEAR_OVERLAP = "collinear_overlap"


@dataclass(frozen=True)
class IntersectionClass:
    kind: str
    clearance: float


@dataclass(frozen=True)
class RigidTransform:
    angle: float
    translation: Point
    reflected: bool


def distance(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def orientation(a: Point, b: Point, c: Point, tol: float) -> int:
    """Sign of the cross product (b-a) x (c-a); 0 within scaled tolerance."""
    cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    # scale by squared magnitude so the predicate is scale-invariant
    scale = max(abs(v) for p in (a, b, c) for v in p)
    if abs(cross) <= tol * max(scale * scale, 1e-300):
        return 0
    return 1 if cross > 0 else -1


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    l2 = dx * dx + dy * dy
    if l2 == 0.0:
        return distance(p, a)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / l2
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - (ax + t * dx), p[1] - (ay + t * dy))


def _segment_gap(a: Point, b: Point, c: Point, d: Point) -> float:
    # minimum distance between two non-crossing segments
    return min(
        point_segment_distance(c, a, b),
        point_segment_distance(d, a, b),
        point_segment_distance(a, c, d),
        point_segment_distance(b, c, d),
    )


def classify_segments(s1: tuple[Point, Point], s2: tuple[Point, Point],
                      tol: float) -> IntersectionClass:
    """Classify how two segments meet and report their clearance.

    Kinds: disjoint, proper_cross, endpoint_touch, interior_touch,
    collinear_overlap. Clearance is 0 exactly when they meet.
    """
    a, b = s1
    c, d = s2
    if distance(a, b) <= tol or distance(c, d) <= tol:
        raise ValueError("degenerate segment")

    o1 = orientation(a, b, c, tol)
    o2 = orientation(a, b, d, tol)
    o3 = orientation(c, d, a, tol)
    o4 = orientation(c, d, b, tol)

    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return IntersectionClass(PROPER_CROSS, 0.0)

    gap = _segment_gap(a, b, c, d)

    if o1 == o2 == o3 == o4 == 0:
        # collinear: overlapping, touching at ends, or separated
        if gap > tol:
            return IntersectionClass(DISJOINT, gap)
        ends_meet = sum(1 for p in (a, b) for q in (c, d)
                        if distance(p, q) <= tol)
        axis_len = distance(a, b) + distance(c, d)
        hull = max(distance(p, q) for p in (a, b) for q in (c, d))
        if ends_meet == 1 and hull >= axis_len - tol:
            return IntersectionClass(ENDPOINT_TOUCH, 0.0)
        return IntersectionClass(COLLINEAR_OVERLAP, 0.0)

    if gap > tol:
        return IntersectionClass(DISJOINT, gap)

    # touching: endpoint-to-endpoint or endpoint against an interior
    if any(distance(p, q) <= tol for p in (a, b) for q in (c, d)):
        return IntersectionClass(ENDPOINT_TOUCH, 0.0)
    return IntersectionClass(INTERIOR_TOUCH, 0.0)


def rigid_align(A: list[Point], B: list[Point],
                allow_reflection: bool = False) -> tuple[RigidTransform, float]:
    """Best rigid transform mapping B onto A (orthogonal Procrustes) + rmsd."""
    if len(A) != len(B):
        raise ValueError("point lists differ in size")
    if len(A) < 2:
        raise ValueError("need at least two points")
    P = np.asarray(A, dtype=float)
    Q = np.asarray(B, dtype=float)
    pc = P.mean(axis=0)
    qc = Q.mean(axis=0)
    H = (Q - qc).T @ (P - pc)
    U, _, Vt = np.linalg.svd(H)
    R = (U @ Vt).T
    reflected = False
    if np.linalg.det(R) < 0:
        if allow_reflection:
            reflected = True
        else:
            U[:, -1] *= -1.0
            R = (U @ Vt).T
    moved = (Q - qc) @ R.T + pc
    rmsd = float(np.sqrt(np.mean(np.sum((moved - P) ** 2, axis=1))))
    angle = math.atan2(R[1, 0], R[0, 0])
    t = pc - R @ qc
    return RigidTransform(angle, (float(t[0]), float(t[1])), reflected), rmsd
