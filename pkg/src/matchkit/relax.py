"""Damped least-squares relaxation of vertex coordinates toward target edge
lengths, and the continuation that drives red (forbidden-distance) edges
toward unit length along a flex.

The solver is Levenberg-Marquardt on reduced coordinates: one vertex is
pinned fully and a second keeps only its coordinate along the initial
direction between the two, which removes the three rigid-motion freedoms
without biasing shape. The continuation re-solves each stage with shifted
gray targets (multiplier updates) so the unit edges converge far below the
acceptance cap even though the gray/red weight ratio is finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import Edge, Graph, ToleranceProfile

ALL_UNIT = "all_unit"
PRESERVE_RED = "preserve_red"

# gray edges weigh this many times a red edge during continuation
_FLEX_WEIGHT_RATIO = 1e6
# multiplier updates stop once gray edges are this close to unit
_FLEX_GRAY_TARGET = 1e-12
_FLEX_MAX_OUTER = 8


@dataclass(frozen=True)
class RelaxConfig:
    mode: str = ALL_UNIT
    unit_weight: float = 1.0
    red_weight: float | None = None     # resolved by mode when None
    max_iterations: int = 500
    gradient_tol: float = 1e-12
    damping_init: float = 1e-3
    pinned: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if self.mode not in (ALL_UNIT, PRESERVE_RED):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.unit_weight < 0 or (self.red_weight is not None
                                    and self.red_weight < 0):
            raise ValueError("weights must be non-negative")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.pinned[0] == self.pinned[1]:
            raise ValueError("pinned vertices must be distinct")

    def resolved_red_weight(self) -> float:
        if self.red_weight is not None:
            return self.red_weight
        return 1.0 if self.mode == ALL_UNIT else 0.0


@dataclass(frozen=True)
class RelaxResult:
    final_vertices: tuple[tuple[float, float], ...]
    objective_history: tuple[float, ...]
    converged: bool
    iterations: int
    max_unit_residual: float
    red_residuals: tuple[float, ...]
    trajectory: tuple[tuple[tuple[float, float], ...], ...] = field(repr=False)

    def to_dict(self, include_trajectory: bool = True) -> dict:
        out = {
            "final_vertices": [list(p) for p in self.final_vertices],
            "objective_history": list(self.objective_history),
            "converged": self.converged,
            "iterations": self.iterations,
            "max_unit_residual": self.max_unit_residual,
            "red_residuals": list(self.red_residuals),
        }
        if include_trajectory:
            out["trajectory"] = [[list(p) for p in frame]
                                 for frame in self.trajectory]
        return out


@dataclass(frozen=True)
class FlexContinuationConfig:
    shrink_factor: float = 0.5
    target_red_deviation: float = 1e-2
    unit_residual_cap: float = 1e-8
    max_stages: int = 60

    def __post_init__(self):
        if not 0.0 < self.shrink_factor < 1.0:
            raise ValueError("shrink_factor must lie in (0, 1)")
        if self.target_red_deviation <= 0 or self.unit_residual_cap <= 0:
            raise ValueError("caps must be positive")
        if self.max_stages < 1:
            raise ValueError("max_stages must be at least 1")


def _edge_lengths(V: np.ndarray, edges: list[Edge]) -> np.ndarray:
    d = V[[u for u, _ in edges]] - V[[v for _, v in edges]]
    return np.hypot(d[:, 0], d[:, 1])


def residuals(g: Graph, targets, weights) -> np.ndarray:
    """Per edge: sqrt(weight) * (length - target), in g.edges order."""
    targets = np.asarray(targets, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if targets.shape != (len(g.edges),) or weights.shape != (len(g.edges),):
        raise ValueError("need one target and one weight per edge")
    V = np.asarray(g.vertices, dtype=float)
    return np.sqrt(weights) * (_edge_lengths(V, list(g.edges)) - targets)


def jacobian(g: Graph, targets, weights) -> np.ndarray:
    """Derivative of residuals: |edges| x 2n, rows sqrt(w)*(dx,dy)/length."""
    weights = np.asarray(weights, dtype=float)
    V = np.asarray(g.vertices, dtype=float)
    edges = list(g.edges)
    L = _edge_lengths(V, edges)
    if np.any(L == 0.0):
        raise ValueError("zero-length edge has no length gradient")
    J = np.zeros((len(edges), 2 * g.n))
    sw = np.sqrt(weights)
    for k, (u, v) in enumerate(edges):
        gx = sw[k] * (V[u, 0] - V[v, 0]) / L[k]
        gy = sw[k] * (V[u, 1] - V[v, 1]) / L[k]
        J[k, 2 * u:2 * u + 2] = (gx, gy)
        J[k, 2 * v:2 * v + 2] = (-gx, -gy)
    return J


class _Gauge:
    """Reduced coordinates: pinned vertex removed, second vertex on a rail."""

    def __init__(self, V0: np.ndarray, pinned: tuple[int, int]):
        p0, p1 = pinned
        n = len(V0)
        if not (0 <= p0 < n and 0 <= p1 < n):
            raise ValueError("pinned vertex index out of range")
        rail = V0[p1] - V0[p0]
        norm = math.hypot(*rail)
        if norm == 0.0:
            raise ValueError("pinned vertices coincide; gauge undefined")
        self.p0, self.p1 = p0, p1
        self.V0 = V0.copy()
        self.rail = rail / norm
        self.free = [i for i in range(n) if i not in (p0, p1)]
        self.size = 1 + 2 * len(self.free)

    def initial(self) -> np.ndarray:
        theta = np.zeros(self.size)
        theta[1:] = self.V0[self.free].ravel()
        return theta

    def unpack(self, theta: np.ndarray) -> np.ndarray:
        V = self.V0.copy()
        V[self.p1] = self.V0[self.p1] + theta[0] * self.rail
        V[self.free] = theta[1:].reshape(-1, 2)
        return V

    def reduce(self, J: np.ndarray) -> np.ndarray:
        R = np.zeros((J.shape[0], self.size))
        R[:, 0] = J[:, 2 * self.p1:2 * self.p1 + 2] @ self.rail
        cols = [c for i in self.free for c in (2 * i, 2 * i + 1)]
        R[:, 1:] = J[:, cols]
        return R


def _solve(g: Graph, V0: np.ndarray, targets: np.ndarray, weights: np.ndarray,
           cfg: RelaxConfig):
    """Core LM loop. Returns (V, history, iterations, converged, frames)."""
    edges = list(g.edges)
    sw = np.sqrt(weights)
    gauge = _Gauge(V0, cfg.pinned)

    def resid(V):
        L = _edge_lengths(V, edges)
        return sw * (L - targets), L

    theta = gauge.initial()
    V = gauge.unpack(theta)
    r, L = resid(V)
    obj = 0.5 * float(r @ r)
    if not math.isfinite(obj):
        raise ArithmeticError("objective diverged to a non-finite value")
    history = [obj]
    frames = [tuple(map(tuple, V))]
    lam = cfg.damping_init
    converged = False
    iterations = 0

    while iterations < cfg.max_iterations:
        if np.any(L == 0.0):
            raise ArithmeticError("edge collapsed to zero length")
        J = np.zeros((len(edges), 2 * g.n))
        for k, (u, v) in enumerate(edges):
            gx = sw[k] * (V[u, 0] - V[v, 0]) / L[k]
            gy = sw[k] * (V[u, 1] - V[v, 1]) / L[k]
            J[k, 2 * u:2 * u + 2] = (gx, gy)
            J[k, 2 * v:2 * v + 2] = (-gx, -gy)
        Jr = gauge.reduce(J)
        grad = Jr.T @ r
        if float(np.linalg.norm(grad)) <= cfg.gradient_tol:
            converged = True
            break
        A = Jr.T @ Jr
        diag = np.clip(np.diag(A).copy(), 1e-12, None)
        accepted = False
        while lam < 1e12:
            try:
                delta = np.linalg.solve(A + lam * np.diag(diag), -grad)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            V2 = gauge.unpack(theta + delta)
            r2, L2 = resid(V2)
            # cancellation-free objective change
            dobj = 0.5 * float((r2 - r) @ (r2 + r))
            if dobj < 0.0 and math.isfinite(dobj):
                theta = theta + delta
                V, r, L = V2, r2, L2
                prev_obj, obj = obj, obj + dobj
                lam = max(lam / 10.0, 1e-15)
                accepted = True
                history.append(obj)
                frames.append(tuple(map(tuple, V)))
                break
            lam *= 10.0
        iterations += 1
        if not accepted:
            break
        if prev_obj - obj < 1e-15 * max(prev_obj, 1.0):
            converged = True
            break

    return V, history, iterations, converged, frames


def _result(g: Graph, V, history, iterations, converged, frames) -> RelaxResult:
    edges = list(g.edges)
    L = _edge_lengths(V, edges)
    gray = [abs(L[k] - 1.0) for k, e in enumerate(edges) if e not in g.red_edges]
    reds = [float(L[k] - 1.0) for k, e in enumerate(edges) if e in g.red_edges]
    return RelaxResult(
        final_vertices=tuple(map(tuple, V)),
        objective_history=tuple(history),
        converged=converged,
        iterations=iterations,
        max_unit_residual=max(gray, default=0.0),
        red_residuals=tuple(reds),
        trajectory=tuple(frames),
    )


def relax(g: Graph, cfg: RelaxConfig | None = None) -> RelaxResult:
    """Minimize edge-length deviations from the mode's targets.

    all_unit pulls every edge toward length 1; preserve_red pulls gray edges
    toward 1 and leaves red edges at their current lengths (weight 0 unless
    overridden).
    """
    cfg = cfg or RelaxConfig()
    V0 = np.asarray(g.vertices, dtype=float)
    edges = list(g.edges)
    is_red = np.array([e in g.red_edges for e in edges])
    red_w = cfg.resolved_red_weight()
    weights = np.where(is_red, red_w, cfg.unit_weight)
    if cfg.mode == ALL_UNIT:
        targets = np.ones(len(edges))
    else:
        targets = np.where(is_red, _edge_lengths(V0, edges), 1.0)
    out = _solve(g, V0, targets, weights, cfg)
    return _result(g, *out)


def flex_continuation(g: Graph,
                      cfg: FlexContinuationConfig | None = None,
                      relax_cfg: RelaxConfig | None = None) -> list[RelaxResult]:
    """March red targets toward unit length along the framework's flex.

    Stage k re-targets red edges at 1 + shrink_factor^(k+1) * (initial - 1)
    and solves with gray edges weighted 1e6 times red. A stage is accepted
    only if the gray edges stay within unit_residual_cap and the max red
    deviation strictly decreases; the first rejected stage stops the run.
    An empty result means the framework would not move at all.
    """
    cfg = cfg or FlexContinuationConfig()
    relax_cfg = relax_cfg or RelaxConfig()
    if not g.red_edges:
        raise ValueError("continuation needs at least one red edge")
    edges = list(g.edges)
    is_red = np.array([e in g.red_edges for e in edges])
    weights = np.where(is_red, 1.0, _FLEX_WEIGHT_RATIO)

    V = np.asarray(g.vertices, dtype=float)
    t = _edge_lengths(V, edges)[is_red]
    prev_dev = float(np.abs(t - 1.0).max())
    stages: list[RelaxResult] = []

    for _ in range(cfg.max_stages):
        t = 1.0 + cfg.shrink_factor * (t - 1.0)
        base = np.ones(len(edges))
        base[is_red] = t
        shift = np.zeros(len(edges))
        history: list[float] = []
        frames: list = []
        iterations = 0
        V_stage = V
        for _outer in range(_FLEX_MAX_OUTER):
            V_stage, h, it, converged, fr = _solve(
                g, V_stage, base - shift, weights, relax_cfg)
            history.extend(h)
            frames.extend(fr)
            iterations += it
            L = _edge_lengths(V_stage, edges)
            gray_res = float(np.abs(L[~is_red] - 1.0).max())
            if gray_res <= _FLEX_GRAY_TARGET:
                break
            # multiplier update: fold the remaining gray error into targets
            shift[~is_red] += L[~is_red] - base[~is_red]

        L = _edge_lengths(V_stage, edges)
        gray_res = float(np.abs(L[~is_red] - 1.0).max())
        dev = float(np.abs(L[is_red] - 1.0).max())
        if gray_res > cfg.unit_residual_cap or not dev < prev_dev:
            break
        V = V_stage
        prev_dev = dev
        stages.append(_result(g, V_stage, history, iterations, converged, frames))
        if dev <= cfg.target_red_deviation:
            break

    return stages
