"""Local geometric tensors on a parametrized family of subspaces.

For a family of frames psi(x), x in R^d, with projector P(x):

    A_a      = i psi^dagger d_a psi                      (Hermitian connection)
    Q_ab     = psi^dagger (d_a P)(d_b P) psi             (m x m, moving-frame basis)
    G_ab     = (Q_ab + Q_ba) / 2                          (matrix valued metric)
    F_ab     = i (Q_ab - Q_ba),  so that  Q = G - (i/2) F

With this Hermitian convention the curvature of A reads
F_ab = d_a A_b - d_b A_a - i [A_a, A_b]; the commutator carries a factor -i
relative to the anti-Hermitian form psi^dagger d psi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import BadOrder, NonSmoothFrame, StepTooLarge
from .subspace import polar_frame

__all__ = [
    "ParamFamily",
    "TensorSample",
    "evaluate_tensors",
    "finsler_norm",
    "abelian_reduction",
    "curvature_from_connection",
    "default_step",
    "interpolation_family",
    "bloch_family",
]

_COS_QUARTER = np.cos(np.pi / 4)


@dataclass(frozen=True)
class ParamFamily:
    """A smooth map x -> n x m orthonormal frame.

    ``derivative``, when given, returns the d partial derivatives of the frame
    (shape (d, n, m)); otherwise central differences are used.
    """

    dim_param: int
    frame_at: Callable
    derivative: Optional[Callable] = None

    @property
    def derivative_mode(self) -> str:
        return "analytic" if self.derivative is not None else "central_difference"

    def frame(self, x) -> np.ndarray:
        return np.asarray(self.frame_at(np.asarray(x, dtype=float)), dtype=complex)


@dataclass(frozen=True, eq=False)
class TensorSample:
    x: np.ndarray
    frame: np.ndarray
    A: np.ndarray          # (d, m, m) Hermitian
    Q: np.ndarray          # (d, d, m, m)
    G: np.ndarray          # (d, d, m, m) Hermitian, symmetric in (a, b)
    F: np.ndarray          # (d, d, m, m) Hermitian, antisymmetric in (a, b)
    fd_tol: float
    curvature_residual: float = float("nan")

    @property
    def n(self) -> int:
        return self.frame.shape[0]

    @property
    def m(self) -> int:
        return self.frame.shape[1]

    @property
    def d(self) -> int:
        return self.A.shape[0]


def default_step(x) -> np.ndarray:
    return 1e-5 * (1.0 + np.abs(np.asarray(x, dtype=float)))


def _min_cos(a, b):
    return np.linalg.svd(a.conj().T @ b, compute_uv=False)[-1]


def _check_neighbor(fam, x, psi, psi_n, h):
    if _min_cos(psi, psi_n) >= _COS_QUARTER:
        if np.linalg.norm(psi_n - psi, 2) > 1.0:
            raise NonSmoothFrame(f"frame gauge jumps between x={x} and a neighbour at step {h:.3e}")
        return
    # distinguish a coarse step from a genuinely discontinuous family
    if _smooth_nearby(fam, x, psi, h):
        raise StepTooLarge(f"neighbouring frames at step {h:.3e} are more than pi/4 apart")
    raise NonSmoothFrame(f"family is not continuous near x={x}")


def _smooth_nearby(fam, x, psi, h):
    x = np.asarray(x, dtype=float)
    d = fam.dim_param
    for a in range(d):
        e = np.zeros(d)
        e[a] = 1e-3 * h
        for s in (1, -1):
            if _min_cos(psi, fam.frame(x + s * e)) < _COS_QUARTER:
                return False
    return True


def _frame_derivatives(fam: ParamFamily, x, h, check=True):
    x = np.asarray(x, dtype=float)
    psi = fam.frame(x)
    d = fam.dim_param
    if fam.derivative is not None:
        dpsi = np.asarray(fam.derivative(x), dtype=complex).reshape(d, *psi.shape)
        return psi, dpsi, None
    h = np.broadcast_to(np.asarray(h, dtype=float), (d,))
    dpsi = np.empty((d,) + psi.shape, dtype=complex)
    dP = np.empty((d, psi.shape[0], psi.shape[0]), dtype=complex)
    for a in range(d):
        e = np.zeros(d)
        e[a] = h[a]
        plus, minus = fam.frame(x + e), fam.frame(x - e)
        if check:
            _check_neighbor(fam, x, psi, plus, h[a])
            _check_neighbor(fam, x, psi, minus, h[a])
        dpsi[a] = (plus - minus) / (2 * h[a])
        dP[a] = (plus @ plus.conj().T - minus @ minus.conj().T) / (2 * h[a])
    return psi, dpsi, dP


def _connection(psi, dpsi):
    A = 1j * np.einsum("ni,anj->aij", psi.conj(), dpsi)
    return 0.5 * (A + np.conj(np.swapaxes(A, 1, 2)))


def curvature_from_connection(A, dA):
    """F_ab = d_a A_b - d_b A_a - i [A_a, A_b] with dA[a, b] = d_a A_b."""
    comm = np.einsum("aij,bjk->abik", A, A) - np.einsum("bij,ajk->abik", A, A)
    return dA - np.swapaxes(dA, 0, 1) - 1j * comm


def evaluate_tensors(fam: ParamFamily, x, step=None, check_curvature: bool = True,
                     curvature_step=None) -> TensorSample:
    """A, Q, G, F of the family at the parameter point ``x``.

    Q uses first derivatives of the projector only.  With ``check_curvature``
    the connection is differentiated as well and the residual between F and
    d A - d A - i [A, A] is stored in ``curvature_residual``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    d = fam.dim_param
    if x.shape != (d,):
        raise ValueError(f"parameter point must have shape ({d},), got {x.shape}")
    h = default_step(x) if step is None else np.broadcast_to(np.asarray(step, dtype=float), (d,))
    psi, dpsi, dP = _frame_derivatives(fam, x, h)
    m = psi.shape[1]
    if np.max(np.abs(psi.conj().T @ psi - np.eye(m))) > 1e-8:
        raise NonSmoothFrame(f"frame at x={x} is not orthonormal")
    if dP is None:
        dP = np.einsum("ani,mi->anm", dpsi, psi.conj()) + np.einsum("ni,ami->anm", psi, dpsi.conj())
    A = _connection(psi, dpsi)
    left = np.einsum("ni,anm->aim", psi.conj(), dP)      # psi^dagger dP_a   (d, m, n)
    right = np.einsum("bnm,mj->bnj", dP, psi)            # dP_b psi          (d, n, m)
    Q = np.einsum("ain,bnj->abij", left, right)
    Qt = np.swapaxes(Q, 0, 1)
    G = 0.5 * (Q + Qt)
    F = 1j * (Q - Qt)
    fd_tol = max(1e-6, 10.0 * float(np.max(h)) ** 2) if fam.derivative is None else 1e-6

    residual = float("nan")
    if check_curvature and d > 1:
        hc = 1e-3 * (1.0 + np.abs(x)) if curvature_step is None else np.broadcast_to(curvature_step, (d,))
        dA = np.empty((d, d, m, m), dtype=complex)
        for a in range(d):
            # Richardson combination of two central differences, error O(hc^4)
            est = []
            for scale in (1.0, 0.5):
                e = np.zeros(d)
                e[a] = scale * hc[a]
                p_psi, p_d, _ = _frame_derivatives(fam, x + e, h, check=False)
                m_psi, m_d, _ = _frame_derivatives(fam, x - e, h, check=False)
                est.append((_connection(p_psi, p_d) - _connection(m_psi, m_d)) / (2 * e[a]))
            dA[a] = (4 * est[1] - est[0]) / 3
        residual = float(np.max(np.abs(F - curvature_from_connection(A, dA))))
    elif d == 1:
        residual = 0.0
    return TensorSample(x=x, frame=psi, A=A, Q=Q, G=G, F=F, fd_tol=fd_tol, curvature_residual=residual)


def finsler_norm(sample: TensorSample, u, l: int) -> float:
    """(tr[G(u, u)^l])^(1/(2l)) with G(u, u) = sum u^a u^b G_ab."""
    bound = min(sample.m, sample.n - sample.m)
    if int(l) != l or l < 1 or l > bound:
        raise BadOrder(f"Finsler order must satisfy 1 <= l <= {bound}, got {l}")
    u = np.asarray(u, dtype=float).reshape(sample.d)
    Guu = np.einsum("a,b,abij->ij", u, u, sample.G)
    ev = np.clip(np.linalg.eigvalsh(0.5 * (Guu + Guu.conj().T)), 0.0, None)
    return float(np.sum(ev ** int(l)) ** (1.0 / (2 * int(l))))


def abelian_reduction(sample: TensorSample):
    """Trace part of Q: returns (fs_metric, berry_like) = (Re tr Q, -2 Im tr Q)."""
    trQ = np.einsum("abii->ab", sample.Q)
    return trQ.real.copy(), -2.0 * trQ.imag


# --------------------------------------------------------------------------
# ready-made families
# --------------------------------------------------------------------------


def interpolation_family(frames) -> ParamFamily:
    """x -> polar(F_0 + sum_a x_a (F_{a+1} - F_0)); a smooth chart near F_0."""
    frames = [np.asarray(f, dtype=complex) for f in frames]
    base = frames[0]
    dirs = np.array([f - base for f in frames[1:]])

    def frame_at(x):
        return polar_frame(base + np.tensordot(x, dirs, axes=1))

    return ParamFamily(len(dirs), frame_at)


def bloch_family(analytic: bool = True) -> ParamFamily:
    """Two-level state (cos(t/2), e^{i p} sin(t/2)) over (t, p)."""

    def frame_at(x):
        t, p = x
        return np.array([[np.cos(t / 2)], [np.exp(1j * p) * np.sin(t / 2)]])

    def derivative(x):
        t, p = x
        dt = np.array([[-0.5 * np.sin(t / 2)], [0.5 * np.exp(1j * p) * np.cos(t / 2)]])
        dp = np.array([[0.0], [1j * np.exp(1j * p) * np.sin(t / 2)]])
        return np.array([dt, dp])

    return ParamFamily(2, frame_at, derivative if analytic else None)
