"""Infinitesimal rigidity analysis via the rigidity matrix.

The matrix has one row per edge constraint. `include_red` selects whether
red edges count as bars: with them the report describes the built structure
(construction rule 1); without them it describes the unit-edge framework,
whose non-trivial motions are what let red lengths vary along a flex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Graph, ToleranceProfile


@dataclass(frozen=True)
class RigidityReport:
    rank: int
    dof: int
    infinitesimally_rigid: bool
    flex_basis: tuple[tuple[float, ...], ...]
    singular_values: tuple[float, ...]
    red_included: bool

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "dof": self.dof,
            "infinitesimally_rigid": self.infinitesimally_rigid,
            "flex_basis": [list(v) for v in self.flex_basis],
            "singular_values": list(self.singular_values),
            "red_included": self.red_included,
        }


def rigidity_matrix(g: Graph, include_red: bool = True) -> np.ndarray:
    """|edges| x 2n matrix; row for (u,v) holds (xu-xv, yu-yv) at u, negated at v."""
    if g.n < 2:
        raise ValueError("rigidity matrix needs at least two vertices")
    edges = [e for e in g.edges if include_red or e not in g.red_edges]
    M = np.zeros((len(edges), 2 * g.n))
    for k, (u, v) in enumerate(edges):
        dx = g.vertices[u][0] - g.vertices[v][0]
        dy = g.vertices[u][1] - g.vertices[v][1]
        M[k, 2 * u:2 * u + 2] = (dx, dy)
        M[k, 2 * v:2 * v + 2] = (-dx, -dy)
    return M


def numeric_rank(M: np.ndarray, rank_tol: float) -> int:
    """Count of singular values above rank_tol * sigma_max; 0 for zero matrix."""
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rank_tol * s[0]))


def trivial_motions(g: Graph) -> np.ndarray:
    """2n x 3 generators: two translations and one infinitesimal rotation."""
    n = g.n
    T = np.zeros((2 * n, 3))
    T[0::2, 0] = 1.0
    T[1::2, 1] = 1.0
    for i, (x, y) in enumerate(g.vertices):
        T[2 * i, 2] = -y
        T[2 * i + 1, 2] = x
    return T


def _sign_fix(v: np.ndarray) -> np.ndarray:
    for x in v:
        if abs(x) > 1e-12:
            return v if x > 0 else -v
    return v


def analyze_rigidity(g: Graph, profile: ToleranceProfile | None = None,
                     include_red: bool = True) -> RigidityReport:
    """Rank, degrees of freedom, and an orthonormal basis of non-trivial
    infinitesimal motions."""
    profile = profile or ToleranceProfile()
    if g.n < 3:
        raise ValueError("rigidity analysis needs at least three vertices")
    if not g.is_connected():
        raise ValueError("rigidity verdict is undefined for disconnected graphs")
    M = rigidity_matrix(g, include_red=include_red)
    U, s, Vt = np.linalg.svd(M)
    rank = int(np.count_nonzero(s > profile.rank_tol * s[0])) if s.size and s[0] > 0 else 0
    dof = max(0, 2 * g.n - 3 - rank)

    basis: list[tuple[float, ...]] = []
    if dof > 0:
        null = Vt[rank:].T                      # 2n x (2n - rank)
        T, _ = np.linalg.qr(trivial_motions(g))
        proj = null - T @ (T.T @ null)
        # orthonormalize what survives the projection
        u2, s2, _ = np.linalg.svd(proj, full_matrices=False)
        keep = u2[:, s2 > 1e-9]
        basis = [tuple(_sign_fix(keep[:, j])) for j in range(keep.shape[1])]

    return RigidityReport(
        rank=rank,
        dof=dof,
        infinitesimally_rigid=(dof == 0),
        flex_basis=tuple(basis),
        singular_values=tuple(float(x) for x in s),
        red_included=include_red,
    )
