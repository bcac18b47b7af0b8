"""Structural analysis: outer boundary walk, frame-triangle detection, and
symmetry classification of an embedding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Edge, Graph, ToleranceProfile
from .verifier import check_crossings


@dataclass(frozen=True)
class FrameReport:
    outer_cycle: tuple[int, ...]
    frame_triangles: tuple[tuple[int, int, int], ...]
    red_in_frame: tuple[Edge, ...]

    def to_dict(self) -> dict:
        return {
            "outer_cycle": list(self.outer_cycle),
            "frame_triangles": [list(t) for t in self.frame_triangles],
            "red_in_frame": [list(e) for e in self.red_in_frame],
        }


@dataclass(frozen=True)
class SymmetryReport:
    label: str
    transforms: tuple[tuple[str, dict], ...]
    vertex_permutations: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "transforms": [
                {"type": t, **{k: (list(v) if isinstance(v, tuple) else v)
                               for k, v in params.items()}}
                for t, params in self.transforms
            ],
            "vertex_permutations": [list(p) for p in self.vertex_permutations],
        }


def outer_boundary(g: Graph, profile: ToleranceProfile | None = None) -> list[int]:
    """Walk the outer face counter-clockwise.

    Starts at the lexicographically smallest (x, then y) vertex and always
    takes the most clockwise available neighbor relative to the arrival
    direction. Requires a connected, crossing-free drawing.
    """
    profile = profile or ToleranceProfile()
    if g.n < 3:
        raise ValueError("outer boundary needs at least three vertices")
    if not g.is_connected():
        raise ValueError("outer boundary is undefined for disconnected graphs")
    violations, _ = check_crossings(g, profile)
    if violations:
        raise ValueError("outer face is undefined for a crossing drawing")

    V = g.vertices
    adj = g.adjacency()
    start = min(range(g.n), key=lambda i: V[i])

    def most_clockwise(at: int, d_in: tuple[float, float]) -> int:
        back = (-d_in[0], -d_in[1])
        best, best_angle = -1, -1.0
        for w in adj[at]:
            e = (V[w][0] - V[at][0], V[w][1] - V[at][1])
            ccw = math.atan2(back[0] * e[1] - back[1] * e[0],
                             back[0] * e[0] + back[1] * e[1])
            clockwise = (-ccw) % (2.0 * math.pi)
            if clockwise > best_angle:
                best, best_angle = w, clockwise
        return best

    cycle = [start]
    u, v = start, most_clockwise(start, (0.0, 1.0))
    guard = 2 * len(g.edges) + 2
    while v != start:
        cycle.append(v)
        if len(cycle) > guard:
            raise ValueError("boundary walk failed to close")
        d = (V[v][0] - V[u][0], V[v][1] - V[u][1])
        u, v = v, most_clockwise(v, d)
    if len(set(cycle)) != len(cycle):
        raise ValueError("outer face is not a simple cycle")
    return cycle


def _triangles(g: Graph):
    neighbors = [set() for _ in range(g.n)]
    for u, v in g.edges:
        neighbors[u].add(v)
        neighbors[v].add(u)
    for u, v in g.edges:
        for w in sorted(neighbors[u] & neighbors[v]):
            if w > v:
                yield (u, v, w)


def frame_triangles(g: Graph, profile: ToleranceProfile | None = None) -> FrameReport:
    """Equilateral 3-cycles touching the outer boundary, and any red edges
    they contain."""
    profile = profile or ToleranceProfile()
    outer = outer_boundary(g, profile)
    on_outer = set(outer)
    V = g.vertices
    tri_tol = 10.0 * profile.unit_tol
    frames = []
    red_hits: set[Edge] = set()
    for u, v, w in _triangles(g):
        if not {u, v, w} & on_outer:
            continue
        lengths = (math.dist(V[u], V[v]), math.dist(V[u], V[w]),
                   math.dist(V[v], V[w]))
        if max(lengths) - min(lengths) > tri_tol:
            continue
        frames.append((u, v, w))
        for e in ((u, v), (u, w), (v, w)):
            if e in g.red_edges:
                red_hits.add(e)
    return FrameReport(tuple(outer), tuple(frames), tuple(sorted(red_hits)))


def _match_permutation(moved: np.ndarray, original: np.ndarray,
                       tol: float) -> list[int] | None:
    # nearest-neighbor matching; fails unless it forms a bijection
    n = len(moved)
    perm: list[int] = []
    used = np.zeros(n, dtype=bool)
    for i in range(n):
        d = np.hypot(original[:, 0] - moved[i, 0], original[:, 1] - moved[i, 1])
        j = int(np.argmin(d))
        if used[j] or d[j] > tol:
            return None
        used[j] = True
        perm.append(j)
    return perm


def _preserves_edges(perm: list[int], edges: frozenset) -> bool:
    mapped = set()
    for u, v in edges:
        a, b = perm[u], perm[v]
        mapped.add((a, b) if a < b else (b, a))
    return mapped == set(edges)


def detect_symmetry(g: Graph, profile: ToleranceProfile | None = None) -> SymmetryReport:
    """Classify the embedding as asymmetric, mirror, point, or rotational(k).

    Rotation candidates (orders 2..12) are centered at the vertex centroid;
    mirror axes come from perpendicular bisector directions of vertex pairs
    at matching centroid distance. Point symmetry is a 2-fold rotation with
    no mirror.
    """
    profile = profile or ToleranceProfile()
    if g.n < 3:
        raise ValueError("symmetry detection needs at least three vertices")
    tol = profile.symmetry_tol
    P = np.asarray(g.vertices, dtype=float)
    center = P.mean(axis=0)
    Q = P - center
    edge_set = frozenset(g.edges)

    rotation = None
    for k in range(12, 1, -1):
        a = 2.0 * math.pi / k
        R = np.array([[math.cos(a), -math.sin(a)],
                      [math.sin(a), math.cos(a)]])
        perm = _match_permutation(Q @ R.T, Q, tol)
        if perm is not None and _preserves_edges(perm, edge_set):
            rotation = (k, perm)
            break

    radius = np.hypot(Q[:, 0], Q[:, 1])
    candidate_angles: set[float] = set()
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if abs(radius[i] - radius[j]) <= tol:
                dx, dy = Q[j] - Q[i]
                if dx == 0.0 and dy == 0.0:
                    continue
                axis = (math.atan2(dy, dx) + 0.5 * math.pi) % math.pi
                candidate_angles.add(round(axis, 9))

    mirrors = []
    for theta in sorted(candidate_angles):
        c2, s2 = math.cos(2.0 * theta), math.sin(2.0 * theta)
        M = np.array([[c2, s2], [s2, -c2]])
        perm = _match_permutation(Q @ M.T, Q, tol)
        if perm is not None and _preserves_edges(perm, edge_set):
            mirrors.append((theta, perm))

    ctr = (float(center[0]), float(center[1]))
    transforms: list[tuple[str, dict]] = []
    permutations: list[tuple[int, ...]] = []
    if rotation is not None:
        k, perm = rotation
        transforms.append(("rotation", {"order": k,
                                        "angle": 2.0 * math.pi / k,
                                        "center": ctr}))
        permutations.append(tuple(perm))
    for theta, perm in mirrors:
        transforms.append(("mirror", {"angle": theta, "center": ctr}))
        permutations.append(tuple(perm))

    if rotation is not None and rotation[0] >= 3:
        label = f"rotational({rotation[0]})"
    elif rotation is not None:
        label = "point" if not mirrors else "rotational(2)"
    elif mirrors:
        label = "mirror"
    else:
        label = "asymmetric"

    return SymmetryReport(label, tuple(transforms), tuple(permutations))
