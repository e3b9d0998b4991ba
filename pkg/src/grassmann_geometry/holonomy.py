"""Transport of single principal vectors along geodesics.

Each principal vector of a pair spans a line bundle over the geodesic, with
connection A^i = -i <v_i | d v_i>.  The accumulated phase along a sampled
curve is taken as sum_k arg <v(t_k)|v(t_{k+1})>, which is what the integral
of A^i tends to and which telescopes exactly under any change of phase of
the samples.

Sign convention: exp(+i * phase) multiplies the corner overlaps.  With this
choice a triangle of one-dimensional subspaces returns the Pancharatnam phase
arg <v|w><w|u><u|v>.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import BadSteps, DegenerateAngles, PhaseUndefined
from .geodesics import MIN_STEPS, geodesic
from .pairs import principal_decomposition
from .subspace import Subspace, Tolerances, _rng, check_same_shape
from .triples import principal_pairs, require_paired, wrap_phase

__all__ = [
    "TransportResult",
    "transport_phase",
    "pseudo_principal_vectors",
    "three_state_phases_via_holonomy",
    "three_state_phase_via_holonomy",
]


@dataclass(frozen=True, eq=False)
class TransportResult:
    """``samples`` is a list of (t, vector); ``phase`` lies in (-pi, pi]."""

    samples: list
    phase: float
    endpoint_vector: np.ndarray

    @property
    def min_overlap(self) -> float:
        vs = [v for _, v in self.samples]
        return float(min(abs(np.vdot(a, b)) for a, b in zip(vs[:-1], vs[1:])))


def _check_steps(steps):
    if int(steps) != steps or steps < MIN_STEPS:
        raise BadSteps(f"need at least {MIN_STEPS} steps, got {steps}")
    return int(steps)


def transport_phase(V: Subspace, W: Subspace, i: int, steps: int = 200,
                    gauge: Optional[Callable] = None, method: str = "overlap") -> TransportResult:
    """Phase accumulated by the i-th principal vector along the geodesic V -> W.

    Parameters
    ----------
    gauge : callable, optional
        t -> chi(t); the sampled vector is re-gauged to exp(i chi(t)) v_i(t).
    method : {'overlap', 'connection'}
        'overlap' sums arg <v_k|v_{k+1}> (exact telescoping).  'connection'
        integrates Im <v|dv/dt> with the midpoint rule, the derivative taken
        as a difference of the neighbouring samples; its error is O(1/steps^2).
    """
    steps = _check_steps(steps)
    pd = principal_decomposition(V, W)
    if not 0 <= i < pd.m:
        raise IndexError(f"principal index {i} out of range for m={pd.m}")
    # only index i has to be separated from the others
    bad = [p for p in pd.degenerate_pairs if i in p]
    if bad:
        raise DegenerateAngles(f"principal angle {i} is degenerate with {bad}", bad)
    curve = geodesic(V, W)

    def vec(t):
        v = curve.frame(t)[:, i]
        return v * np.exp(1j * gauge(t)) if gauge is not None else v

    ts = np.linspace(0.0, 1.0, steps + 1)
    vs = [vec(t) for t in ts]
    if method == "overlap":
        phase = float(np.sum([np.angle(np.vdot(a, b)) for a, b in zip(vs[:-1], vs[1:])]))
    elif method == "connection":
        dt = 1.0 / steps
        phase = 0.0
        for k in range(steps):
            mid = vec(ts[k] + 0.5 * dt)
            phase += np.imag(np.vdot(mid, (vs[k + 1] - vs[k]) / dt)) * dt
    else:
        raise ValueError(f"unknown method {method!r}")
    return TransportResult(list(zip(ts, vs)), float(wrap_phase(phase)), vs[-1])


def pseudo_principal_vectors(X: Subspace, toward: Subspace) -> np.ndarray:
    """Eigenvectors of G(X -> toward) in C^n, ascending eigenvalue order.

    Their phases are whatever the eigensolver returns; callers must not rely
    on them.
    """
    check_same_shape(X, toward)
    pd = principal_decomposition(X, toward)
    R = X.frame.conj().T @ pd.v_frame
    G = (R * pd.theta ** 2) @ R.conj().T
    _, vec = np.linalg.eigh(0.5 * (G + G.conj().T))
    return X.frame @ vec


def _leg(start: Subspace, end: Subspace, steps: int, rng):
    """Pseudo-principal vectors sampled along the geodesic start -> end.

    Returns the first sample, the last sample and the accumulated phase of
    every column.  For t < 1/2 the vectors are read off toward ``end``, from
    then on toward ``start``, so the angles never collapse to zero.
    """
    curve = geodesic(start, end)
    ts = np.linspace(0.0, 1.0, steps + 1)
    phase = np.zeros(start.m)
    first = prev = None
    for t in ts:
        X = Subspace(curve.frame(t), start.tol)
        ref = end if t < 0.5 else start
        cur = pseudo_principal_vectors(X, ref)
        if rng is not None:
            cur = cur * np.exp(2j * np.pi * rng.random(cur.shape[1]))[None, :]
        if prev is None:
            first = cur
        else:
            ov = np.einsum("ni,ni->i", prev.conj(), cur)
            if np.min(np.abs(ov)) < 0.5:
                raise BadSteps("consecutive pseudo-principal vectors decorrelate; increase steps")
            phase += np.angle(ov)
        prev = cur
    return first, prev, phase


def three_state_phases_via_holonomy(V: Subspace, W: Subspace, U: Subspace, steps: int = 2000,
                                    randomize_phases=None, tol: Optional[Tolerances] = None) -> np.ndarray:
    """All three-state phases phi[i, j, k] from transport around the triangle V -> W -> U -> V.

    ``randomize_phases`` (seed or Generator) multiplies every sampled
    pseudo-principal vector by an independent random phase; the result does
    not depend on it.
    """
    steps = _check_steps(steps)
    require_paired(principal_pairs(V, W, U, tol), tol or V.tol)
    rng = None if randomize_phases is None else _rng(randomize_phases)
    s1, f1, a1 = _leg(V, W, steps, rng)
    s2, f2, a2 = _leg(W, U, steps, rng)
    s3, f3, a3 = _leg(U, V, steps, rng)
    # transported endpoints e = f exp(-i a); corners <e3|s1>, <e1|s2>, <e2|s3>
    c31 = (f3 * np.exp(-1j * a3)[None, :]).conj().T @ s1   # [k, i]
    c12 = (f1 * np.exp(-1j * a1)[None, :]).conj().T @ s2   # [i, j]
    c23 = (f2 * np.exp(-1j * a2)[None, :]).conj().T @ s3   # [j, k]
    prod = np.einsum("ki,ij,jk->ijk", c31, c12, c23)
    low = np.min(np.abs(prod))
    if low < (tol or V.tol).ortho_tol:
        raise PhaseUndefined(f"a corner overlap vanishes ({low:.2e})")
    return np.angle(prod)


def three_state_phase_via_holonomy(V: Subspace, W: Subspace, U: Subspace, i: int, j: int, k: int,
                                   steps: int = 2000, randomize_phases=None) -> float:
    """Single entry phi[i, j, k] of :func:`three_state_phases_via_holonomy`."""
    return float(three_state_phases_via_holonomy(V, W, U, steps, randomize_phases)[i, j, k])
