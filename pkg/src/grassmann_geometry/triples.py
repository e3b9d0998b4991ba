"""Invariants of three or more subspaces.

Index conventions.  For the triple (V, W, U) the three pairs are (V, W),
(W, U) and (U, V), with principal indices i, j and k respectively:

    v_i^W, w_i^V   from (V, W)       <v_i^W | w_i^V> = cos theta_i(V, W)
    w_j^U, u_j^W   from (W, U)
    u_k^V, v_k^U   from (U, V)

The principal unitaries are

    Vmat[i, k] = <v_i^W | v_k^U>,  Wmat[i, j] = <w_i^V | w_j^U>,
    Umat[j, k] = <u_j^W | u_k^V>,

and the three-state phase is phi[i, j, k] = arg(conj(Vmat[i, k]) Wmat[i, j] Umat[j, k]).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import (
    BadArguments,
    DegenerateAngles,
    DimensionMismatch,
    GrassmannError,
    PhaseUndefined,
    TooSmallAmbient,
)
from .pairs import PairData, principal_decomposition
from .subspace import Configuration, Subspace, Tolerances, check_same_shape, orthonormalize, projector

__all__ = [
    "TripleData",
    "EquivalenceResult",
    "principal_pairs",
    "require_paired",
    "principal_unitaries",
    "unitaries_from_pairs",
    "invariants_from_unitaries",
    "triple_invariants",
    "three_state_phases_via_projectors",
    "realize_triple",
    "configs_equivalent",
    "invariant_count",
    "orbit_codimension_numeric",
    "wrap_phase",
    "phase_distance",
]


def wrap_phase(x):
    """Map angles into (-pi, pi]."""
    y = np.mod(np.asarray(x, dtype=float) + np.pi, 2 * np.pi) - np.pi
    return np.where(y == -np.pi, np.pi, y)


def phase_distance(a, b):
    """Distance on the circle, aware of the 2 pi seam."""
    d = np.mod(np.asarray(a) - np.asarray(b), 2 * np.pi)
    return np.minimum(d, 2 * np.pi - d)


@dataclass(frozen=True, eq=False)
class TripleData:
    """All per-triple invariants of (V, W, U).

    ``four_state_phases`` holds full tensors keyed by subspace name:
    'V' -> [i, i', k, k'], 'W' -> [i, i', j, j'], 'U' -> [j, j', k, k'].
    Only entries with the first pair and the second pair strictly increasing
    are independent, see :meth:`independent_four_state_phases`.
    """

    unitaries: tuple
    two_state_overlaps: tuple
    four_state_phases: dict
    three_state_phases: np.ndarray
    angles: tuple
    projector_route_residual: float = float("nan")
    pairs: tuple = field(default=(), repr=False)

    @property
    def m(self) -> int:
        return self.three_state_phases.shape[0]

    def independent_four_state_phases(self) -> dict:
        m = self.m
        idx = [(a, b, c, d) for a, b in combinations(range(m), 2) for c, d in combinations(range(m), 2)]
        return {name: np.array([t[a, b, c, d] for a, b, c, d in idx]) for name, t in self.four_state_phases.items()}


def _require_nondegenerate(pd: PairData, name: str):
    if pd.degenerate:
        raise DegenerateAngles(
            f"principal angles of pair {name} are degenerate at index pairs {list(pd.degenerate_pairs)}",
            indices=pd.degenerate_pairs,
            pair=name,
        )


def principal_pairs(V: Subspace, W: Subspace, U: Subspace, tol: Optional[Tolerances] = None, require_generic=True):
    """Principal decompositions of (V, W), (W, U), (U, V)."""
    check_same_shape(V, W, U)
    tol = tol or V.tol
    vw = principal_decomposition(V, W, tol)
    wu = principal_decomposition(W, U, tol)
    uv = principal_decomposition(U, V, tol)
    if require_generic:
        for pd, name in ((vw, "(V,W)"), (wu, "(W,U)"), (uv, "(U,V)")):
            _require_nondegenerate(pd, name)
    return vw, wu, uv


def require_paired(pairs, tol: Tolerances):
    """Refuse three-state phases when a principal cosine vanishes.

    At theta_i = pi/2 the overlap <v_i|w_i> is zero, so nothing ties the
    phase of v_i to that of w_i and the three-state phase is not defined.
    """
    for pd, name in zip(pairs, ("(V,W)", "(W,U)", "(U,V)")):
        low = float(np.min(pd.cosines))
        if low < tol.ortho_tol:
            raise PhaseUndefined(f"pair {name} has a principal angle pi/2 (cosine {low:.2e}); phases are unpaired")


def unitaries_from_pairs(vw: PairData, wu: PairData, uv: PairData):
    v_w, w_v = vw.v_frame, vw.w_frame
    w_u, u_w = wu.v_frame, wu.w_frame
    u_v, v_u = uv.v_frame, uv.w_frame
    Vmat = v_w.conj().T @ v_u
    Wmat = w_v.conj().T @ w_u
    Umat = u_w.conj().T @ u_v
    return Vmat, Wmat, Umat


def principal_unitaries(V: Subspace, W: Subspace, U: Subspace, tol: Optional[Tolerances] = None):
    """The three m x m principal unitaries in the SVD gauge."""
    return unitaries_from_pairs(*principal_pairs(V, W, U, tol))


def _four_point(M):
    # phi[a, a', b, b'] = arg(M[a,b] conj(M[a',b]) M[a',b'] conj(M[a,b']))
    prod = np.einsum("ab,cb,cd,ad->acbd", M, M.conj(), M, M.conj())
    return np.angle(prod)


def _check_four_point(M, name, tol):
    m = M.shape[0]
    mags = np.abs(M)
    for a, b in combinations(range(m), 2):
        for c, d in combinations(range(m), 2):
            low = min(mags[a, c], mags[b, c], mags[b, d], mags[a, d])
            if low < tol.ortho_tol:
                raise PhaseUndefined(
                    f"four-state phase {name}[{a},{b},{c},{d}] involves a vanishing overlap ({low:.2e})"
                )


def invariants_from_unitaries(Vmat, Wmat, Umat, tol: Tolerances):
    """2SO, 4SP and 3SP from the principal unitaries (any gauge)."""
    so = (np.abs(Vmat) ** 2, np.abs(Wmat) ** 2, np.abs(Umat) ** 2)
    for M, name in ((Vmat, "V"), (Wmat, "W"), (Umat, "U")):
        _check_four_point(M, name, tol)
    fsp = {"V": _four_point(Vmat), "W": _four_point(Wmat), "U": _four_point(Umat)}
    # 3SP[i, j, k] = arg(conj(V[i,k]) W[i,j] U[j,k])
    triple = np.einsum("ik,ij,jk->ijk", Vmat.conj(), Wmat, Umat)
    low = np.min(
        np.minimum(
            np.minimum(np.abs(Vmat)[:, None, :], np.abs(Wmat)[:, :, None]),
            np.abs(Umat)[None, :, :],
        )
    )
    if low < tol.ortho_tol:
        raise PhaseUndefined(f"a three-state phase involves a vanishing overlap ({low:.2e})")
    return so, fsp, np.angle(triple)


def _spectral_vectors(A: Subspace, B: Subspace):
    # eigenvectors of P_A P_B P_A on A, sorted by descending eigenvalue (ascending angle)
    H = A.frame.conj().T @ projector(B) @ A.frame
    H = 0.5 * (H + H.conj().T)
    ev, vec = np.linalg.eigh(H)
    return A.frame @ vec[:, ::-1]


def three_state_phases_via_projectors(V: Subspace, W: Subspace, U: Subspace) -> np.ndarray:
    """arg tr[P_i^{V->W} P_i^{W->V} P_j^{W->U} P_j^{U->W} P_k^{U->V} P_k^{V->U}].

    The rank-one projectors come from eigen-decompositions of P_A P_B P_A, so
    this route shares no code with the SVD route.
    """
    v_w = _spectral_vectors(V, W)
    w_v = _spectral_vectors(W, V)
    w_u = _spectral_vectors(W, U)
    u_w = _spectral_vectors(U, W)
    u_v = _spectral_vectors(U, V)
    v_u = _spectral_vectors(V, U)

    def ov(a, b):
        return a.conj().T @ b

    # trace of a product of rank-one projectors |p1><p1| ... |p6><p6|
    # = <p6|p1><p1|p2><p2|p3><p3|p4><p4|p5><p5|p6>
    A = ov(v_u, v_w)                 # <p6=v_k^U | p1=v_i^W>  [k, i]
    B = np.diag(ov(v_w, w_v))        # <v_i^W | w_i^V>        [i]
    C = ov(w_v, w_u)                 # <w_i^V | w_j^U>        [i, j]
    D = np.diag(ov(w_u, u_w))        # <w_j^U | u_j^W>        [j]
    E = ov(u_w, u_v)                 # <u_j^W | u_k^V>        [j, k]
    F = np.diag(ov(u_v, v_u))        # <u_k^V | v_k^U>        [k]
    tr = np.einsum("ki,i,ij,j,jk,k->ijk", A, B, C, D, E, F)
    return np.angle(tr)


def triple_invariants(V: Subspace, W: Subspace, U: Subspace, tol: Optional[Tolerances] = None,
                      cross_check: bool = True) -> TripleData:
    tol = tol or V.tol
    vw, wu, uv = principal_pairs(V, W, U, tol)
    require_paired((vw, wu, uv), tol)
    Vmat, Wmat, Umat = unitaries_from_pairs(vw, wu, uv)
    so, fsp, tsp = invariants_from_unitaries(Vmat, Wmat, Umat, tol)
    residual = float("nan")
    if cross_check:
        residual = float(np.max(phase_distance(three_state_phases_via_projectors(V, W, U), tsp)))
    return TripleData(
        unitaries=(Vmat, Wmat, Umat),
        two_state_overlaps=so,
        four_state_phases=fsp,
        three_state_phases=tsp,
        angles=(vw.theta, wu.theta, uv.theta),
        projector_route_residual=residual,
        pairs=(vw, wu, uv),
    )


def realize_triple(theta_vw, theta_wu, theta_uv, Vmat, Wmat, Umat, n: Optional[int] = None,
                   tol: Optional[Tolerances] = None):
    """Build subspaces (V, W, U) with prescribed angles and principal unitaries.

    The Gram matrix of the 3m vectors {v_i^W}, {w_i^V}, {u_k^V} is fixed by the
    data; it is factored and embedded in C^n.  Raises ValueError when the data
    do not describe any configuration (Gram matrix not positive semidefinite).
    """
    tol = tol or Tolerances()
    c1 = np.diag(np.cos(np.asarray(theta_vw, dtype=float)))
    c2 = np.diag(np.cos(np.asarray(theta_wu, dtype=float)))
    c3 = np.diag(np.cos(np.asarray(theta_uv, dtype=float)))
    m = c1.shape[0]
    I = np.eye(m)
    vu = np.asarray(Vmat) @ c3
    wu = np.asarray(Wmat) @ c2 @ np.asarray(Umat)
    M = np.block([
        [I, c1, vu],
        [c1, I, wu],
        [vu.conj().T, wu.conj().T, I],
    ])
    M = 0.5 * (M + M.conj().T)
    ev, Q = np.linalg.eigh(M)
    if ev[0] < -1e-9:
        raise ValueError(f"inconsistent invariants: Gram matrix has eigenvalue {ev[0]:.3e}")
    keep = ev > 1e-12 * ev[-1]
    X = np.sqrt(ev[keep])[:, None] * Q[:, keep].conj().T
    r = X.shape[0]
    n = 3 * m if n is None else n
    if n < r:
        raise TooSmallAmbient(f"configuration needs ambient dimension {r}, got n={n}")
    emb = np.zeros((n, 3 * m), dtype=complex)
    emb[:r] = X

    return tuple(orthonormalize(emb[:, a * m:(a + 1) * m], tol) for a in range(3))


# --------------------------------------------------------------------------
# equivalence of configurations
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EquivalenceResult:
    """``equivalent`` is None when the decision is indeterminate."""

    equivalent: Optional[bool]
    witness: Optional[np.ndarray] = None
    witness_error: float = float("nan")
    max_deviation: float = float("nan")
    reason: str = ""

    def __bool__(self):
        return bool(self.equivalent)


def _canonical_vectors(C: Configuration, tol: Tolerances) -> np.ndarray:
    """Principal vectors of C in a gauge fixed by invariants only.

    Returns an n x (l m) matrix whose Gram matrix is a function of the pair and
    triple invariants; two equivalent configurations give equal Gram matrices.
    """
    l = len(C)
    if l == 1:
        return C[0].frame
    pd01 = principal_decomposition(C[0], C[1], tol)
    base, partner = pd01.v_frame.copy(), pd01.w_frame.copy()
    others = [principal_decomposition(C[0], C[c], tol).w_frame.copy() for c in range(2, l)]
    if others:
        root = others[0][:, 0]
        ov = base.conj().T @ root
        if np.min(np.abs(ov)) < np.sqrt(tol.ortho_tol):
            raise PhaseUndefined("vanishing overlap while fixing the gauge")
        ph = ov / np.abs(ov)
        base = base * ph[None, :]
        partner = partner * ph[None, :]
        for X in others:
            ov = base[:, 0].conj() @ X
            if np.min(np.abs(ov)) < np.sqrt(tol.ortho_tol):
                raise PhaseUndefined("vanishing overlap while fixing the gauge")
            X *= (ov.conj() / np.abs(ov))[None, :]
    return np.hstack([base, partner] + others)


def _gram_witness(X, Y, tol: Tolerances) -> np.ndarray:
    """Unitary mapping the columns of X onto those of Y (equal Gram matrices)."""
    n = X.shape[0]
    M = X.conj().T @ X
    M = 0.5 * (M + M.conj().T)
    ev, C = np.linalg.eigh(M)
    keep = ev > tol.ortho_tol * max(ev[-1], 1.0)
    C, ev = C[:, keep], ev[keep]
    Xo = X @ C / np.sqrt(ev)[None, :]
    Yo = Y @ C / np.sqrt(ev)[None, :]
    Xc = scipy.linalg.null_space(Xo.conj().T) if Xo.shape[1] < n else np.zeros((n, 0))
    Yo = scipy.linalg.polar(Yo)[0] if Yo.shape[1] else Yo
    Yc = scipy.linalg.null_space(Yo.conj().T) if Yo.shape[1] < n else np.zeros((n, 0))
    U = Yo @ Xo.conj().T + Yc @ Xc.conj().T
    return scipy.linalg.polar(U)[0]


def configs_equivalent(A: Configuration, B: Configuration, tol: Optional[Tolerances] = None) -> EquivalenceResult:
    """Decide whether some unitary maps every subspace of A onto the matching one of B.

    The verdict compares pairwise principal angles and, for every triple, the
    two-state overlaps, four-state and three-state phases.  When equivalent, a
    witness unitary is assembled from the Gram matrices of gauge-fixed
    principal vectors.
    """
    tol = tol or A.tol
    if (A.n, A.m, len(A)) != (B.n, B.m, len(B)):
        raise DimensionMismatch(
            f"configurations differ in (n, m, l): {(A.n, A.m, len(A))} vs {(B.n, B.m, len(B))}"
        )
    l = len(A)
    worst = 0.0
    for a, b in combinations(range(l), 2):
        ta = principal_decomposition(A[a], A[b], tol).theta
        tb = principal_decomposition(B[a], B[b], tol).theta
        d = float(np.max(np.abs(ta - tb)))
        worst = max(worst, d)
        if d > tol.eq_tol:
            return EquivalenceResult(False, max_deviation=d, reason=f"principal angles of pair ({a},{b}) differ")
    for a, b, c in combinations(range(l), 3):
        try:
            ta = triple_invariants(A[a], A[b], A[c], tol, cross_check=False)
            tb = triple_invariants(B[a], B[b], B[c], tol, cross_check=False)
        except DegenerateAngles as exc:
            return EquivalenceResult(None, max_deviation=worst, reason=f"indeterminate: {exc}")
        except PhaseUndefined as exc:
            return EquivalenceResult(None, max_deviation=worst, reason=f"indeterminate: {exc}")
        d_so = max(float(np.max(np.abs(x - y))) for x, y in zip(ta.two_state_overlaps, tb.two_state_overlaps))
        fa, fb = ta.independent_four_state_phases(), tb.independent_four_state_phases()
        d_fp = max((float(np.max(phase_distance(fa[k], fb[k]))) for k in fa if fa[k].size), default=0.0)
        d_tp = float(np.max(phase_distance(ta.three_state_phases, tb.three_state_phases)))
        d = max(d_so, d_fp, d_tp)
        worst = max(worst, d)
        if d > tol.eq_tol:
            which = ["two-state overlaps", "four-state phases", "three-state phases"][int(np.argmax([d_so, d_fp, d_tp]))]
            return EquivalenceResult(False, max_deviation=d, reason=f"{which} of triple ({a},{b},{c}) differ")
    try:
        X = _canonical_vectors(A, tol)
        Y = _canonical_vectors(B, tol)
    except GrassmannError as exc:
        return EquivalenceResult(True, max_deviation=worst, reason=f"invariants agree; no witness: {exc}")
    U = _gram_witness(X, Y, tol)
    err = max(
        float(np.linalg.norm(U @ projector(sa) @ U.conj().T - projector(sb), 2))
        for sa, sb in zip(A, B)
    )
    return EquivalenceResult(True, witness=U, witness_error=err, max_deviation=worst, reason="invariants agree")


# --------------------------------------------------------------------------
# parameter counting
# --------------------------------------------------------------------------


def invariant_count(m: int, l: int) -> int:
    """Number of independent invariants of l generic m-planes (n large)."""
    if int(m) != m or int(l) != l or m < 1 or l < 2:
        raise BadArguments(f"need integers m >= 1, l >= 2; got m={m}, l={l}")
    m, l = int(m), int(l)
    if l == 2:
        return m
    return m * m * l * (l - 2) + 1


def _anti_hermitian_basis(n):
    for a in range(n):
        X = np.zeros((n, n), dtype=complex)
        X[a, a] = 1j
        yield X
    for a in range(n):
        for b in range(a + 1, n):
            X = np.zeros((n, n), dtype=complex)
            X[a, b], X[b, a] = 1.0, -1.0
            yield X
            X = np.zeros((n, n), dtype=complex)
            X[a, b], X[b, a] = 1j, 1j
            yield X


def orbit_codimension_numeric(C: Configuration, rel_tol: float = 1e-8) -> int:
    """Codimension of the U(n) orbit through C, from the rank of the
    infinitesimal action X -> ([X, P_1], ..., [X, P_l])."""
    n, m, l = C.n, C.m, len(C)
    if n <= m * l:
        raise TooSmallAmbient(f"need n > m l; got n={n}, m={m}, l={l}")
    Ps = [projector(s) for s in C]
    cols = []
    for X in _anti_hermitian_basis(n):
        img = np.concatenate([(X @ P - P @ X).ravel() for P in Ps])
        cols.append(np.concatenate([img.real, img.imag]))
    J = np.array(cols).T
    s = np.linalg.svd(J, compute_uv=False)
    rank = int(np.sum(s > rel_tol * s[0]))
    return l * 2 * m * (n - m) - rank
