"""Geodesics between two subspaces and the metric data they carry.

The geodesic from V to W rotates each principal vector of V toward its
partner in W at constant speed:

    v_i(t) = cos(t theta_i) |v_i> + sin(t theta_i) |w_i_perp>,
    |w_i_perp> = (|w_i> - cos theta_i |v_i>) / sin theta_i.

Its l-th Finsler length is (sum_i theta_i^(2l))^(1/(2l)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import BadOrder, BadSteps, DegenerateAngles
from .pairs import degenerate_index_pairs, lengths_from_angles, principal_decomposition
from .subspace import Subspace, Tolerances, check_same_shape
from .tensors import ParamFamily, evaluate_tensors

__all__ = [
    "GeodesicCurve",
    "DirectionalMetric",
    "geodesic",
    "geodesic_lengths",
    "path_lengths",
    "g_direction",
    "isolate_projectors",
    "overlap_traces",
    "two_state_overlaps_from_traces",
    "four_state_phases_from_metric",
]

MIN_STEPS = 8


@dataclass(frozen=True, eq=False)
class GeodesicCurve:
    V: Subspace
    W: Subspace
    theta: np.ndarray
    v_frame: np.ndarray
    w_perp_frame: np.ndarray

    @property
    def m(self) -> int:
        return len(self.theta)

    def frame(self, t) -> np.ndarray:
        t = float(np.squeeze(t))
        return self.v_frame * np.cos(t * self.theta) + self.w_perp_frame * np.sin(t * self.theta)

    def velocity(self, t) -> np.ndarray:
        t = float(np.squeeze(t))
        th = self.theta
        return (-self.v_frame * np.sin(t * th) + self.w_perp_frame * np.cos(t * th)) * th

    def evaluator(self, t) -> Subspace:
        return Subspace(self.frame(t), self.V.tol)

    def family(self, analytic: bool = True) -> ParamFamily:
        """The curve as a one-parameter family for :func:`evaluate_tensors`."""
        deriv = (lambda x: self.velocity(x[0])[None]) if analytic else None
        return ParamFamily(1, lambda x: self.frame(x[0]), deriv)


def geodesic(V: Subspace, W: Subspace) -> GeodesicCurve:
    """Canonical geodesic from V to W built from the principal vectors."""
    check_same_shape(V, W)
    pd = principal_decomposition(V, W)
    residual = pd.w_frame - pd.v_frame * pd.cosines[None, :]
    sines = np.linalg.norm(residual, axis=0)
    # theta_i = 0 keeps the column fixed (continuous limit of the rotation)
    keep = sines > V.tol.ortho_tol
    w_perp = np.zeros_like(residual)
    w_perp[:, keep] = residual[:, keep] / sines[keep]
    theta = np.where(keep, pd.theta, 0.0)
    return GeodesicCurve(V, W, theta, np.array(pd.v_frame), w_perp)


def _trace_power_norm(G1, l):
    ev = np.clip(np.linalg.eigvalsh(0.5 * (G1 + G1.conj().T)), 0.0, None)
    return np.sum(ev ** l) ** (1.0 / (2 * l))


def path_lengths(frame_at: Callable, steps: int, orders) -> np.ndarray:
    """Finsler lengths of a path t -> frame on [0, 1] by the midpoint rule.

    The metric at each midpoint uses the projector difference between the
    neighbouring grid points, so the overall error is O(1/steps^2).
    """
    if int(steps) != steps or steps < MIN_STEPS:
        raise BadSteps(f"need at least {MIN_STEPS} steps, got {steps}")
    steps = int(steps)
    fam = ParamFamily(1, lambda x: frame_at(x[0]))
    dt = 1.0 / steps
    orders = [int(l) for l in orders]
    total = np.zeros(len(orders))
    for k in range(steps):
        s = evaluate_tensors(fam, [(k + 0.5) * dt], step=0.5 * dt, check_curvature=False)
        G1 = s.G[0, 0]
        total += [_trace_power_norm(G1, l) for l in orders]
    return total * dt


def geodesic_lengths(V: Subspace, W: Subspace, mode: str = "closed_form", steps: int = 1000) -> np.ndarray:
    """Finsler lengths L_1..L_m of the geodesic from V to W.

    ``mode='closed_form'`` evaluates (sum theta_i^(2l))^(1/(2l)); ``mode='numeric'``
    integrates the local norm along the curve with ``steps`` midpoints.
    """
    if mode == "closed_form":
        check_same_shape(V, W)
        return lengths_from_angles(principal_decomposition(V, W).theta)
    if mode == "numeric":
        if int(steps) != steps or steps < MIN_STEPS:
            raise BadSteps(f"need at least {MIN_STEPS} steps, got {steps}")
        curve = geodesic(V, W)
        return path_lengths(curve.frame, steps, range(1, V.m + 1))
    raise ValueError(f"unknown mode {mode!r}; expected 'closed_form' or 'numeric'")


@dataclass(frozen=True, eq=False)
class DirectionalMetric:
    """G contracted with the tangent of the geodesic V -> W, in V's frame basis.

    ``vectors[:, i]`` are the eigenvectors mapped into C^n (principal vectors
    of V toward W up to phase); ``principal_projectors[i]`` is the m x m
    spectral projector for eigenvalue ``eigenvalues[i]`` (ascending).
    """

    G: np.ndarray
    eigenvalues: np.ndarray
    principal_projectors: list
    vectors: np.ndarray


def g_direction(V: Subspace, W: Subspace, tol: Optional[Tolerances] = None, split: bool = True) -> DirectionalMetric:
    """Directional metric G(V -> W) = sum_i theta_i^2 |v_i^W><v_i^W| on V.

    Evaluated from the tensor of the geodesic family at t = 0 and expressed
    in the basis ``V.frame``.  With ``split`` the spectral projectors are
    returned and near-coincident theta_i^2 raise DegenerateAngles.
    """
    tol = tol or V.tol
    curve = geodesic(V, W)
    s = evaluate_tensors(curve.family(analytic=True), [0.0], check_curvature=False)
    R = V.frame.conj().T @ curve.v_frame
    G = R @ s.G[0, 0] @ R.conj().T
    G = 0.5 * (G + G.conj().T)
    ev, vec = np.linalg.eigh(G)
    projectors = []
    if split:
        deg = degenerate_index_pairs(ev, tol.deg_tol)
        if deg:
            raise DegenerateAngles(f"squared principal angles coincide at index pairs {deg}", deg)
        projectors = [np.outer(vec[:, i], vec[:, i].conj()) for i in range(len(ev))]
    return DirectionalMetric(G, ev, projectors, V.frame @ vec)


def isolate_projectors(G, eigenvalues) -> list:
    """Spectral projectors by polynomial isolation prod_{j != i} (G - l_j) / (l_i - l_j)."""
    G = np.asarray(G, dtype=complex)
    lam = np.asarray(eigenvalues, dtype=float)
    eye = np.eye(G.shape[0])
    out = []
    for i, li in enumerate(lam):
        Pi = eye.astype(complex)
        for j, lj in enumerate(lam):
            if j != i:
                Pi = Pi @ (G - lj * eye) / (li - lj)
        out.append(Pi)
    return out


def overlap_traces(V: Subspace, W: Subspace, U: Subspace, p: int, q: int) -> float:
    """tr[G(V -> W)^p G(V -> U)^q]."""
    check_same_shape(V, W, U)
    m = V.m
    for name, k in (("p", p), ("q", q)):
        if int(k) != k or not 1 <= k <= m:
            raise BadOrder(f"{name} must lie in 1..{m}, got {k}")
    Gw = g_direction(V, W, split=False).G
    Gu = g_direction(V, U, split=False).G
    return float(np.real(np.trace(np.linalg.matrix_power(Gw, int(p)) @ np.linalg.matrix_power(Gu, int(q)))))


def two_state_overlaps_from_traces(V: Subspace, W: Subspace, U: Subspace, max_cond: float = 1e8) -> np.ndarray:
    """|<v_i^W|v_k^U>|^2 recovered from the traces with p, q = 1..m.

    The traces form T = A S B^T with A[p, i] = theta_i(V, W)^(2p) and
    B[q, k] = theta_k(V, U)^(2q); the moment system is refused when either
    matrix has condition number above ``max_cond``.
    """
    m = V.m
    th_w = principal_decomposition(V, W).theta
    th_u = principal_decomposition(V, U).theta
    powers = np.arange(1, m + 1)[:, None]
    A = th_w[None, :] ** (2 * powers)
    B = th_u[None, :] ** (2 * powers)
    for name, M in (("V->W", A), ("V->U", B)):
        c = np.linalg.cond(M)
        if not np.isfinite(c) or c > max_cond:
            raise DegenerateAngles(f"moment system for {name} is ill conditioned (cond {c:.2e})")
    T = np.array([[overlap_traces(V, W, U, p, q) for q in range(1, m + 1)] for p in range(1, m + 1)])
    return np.linalg.solve(A, np.linalg.solve(B, T.T).T)


def four_state_phases_from_metric(V: Subspace, W: Subspace, U: Subspace) -> np.ndarray:
    """4SP at V from the spectral projectors of G(V->W) and G(V->U).

    Returns phi[i, i', k, k'] = arg tr[P_i Q_k P_i' Q_k'], which equals
    arg(M[i,k] conj(M[i',k]) M[i',k'] conj(M[i,k'])) for M = Vmat.
    """
    P = g_direction(V, W).principal_projectors
    Q = g_direction(V, U).principal_projectors
    m = V.m
    out = np.zeros((m, m, m, m))
    for a in range(m):
        for b in range(m):
            for c in range(m):
                for d in range(m):
                    out[a, b, c, d] = np.angle(np.trace(P[a] @ Q[c] @ P[b] @ Q[d]))
    return out
