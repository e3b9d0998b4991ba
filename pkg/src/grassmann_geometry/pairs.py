"""Invariants of a pair of subspaces: principal angles, principal vectors,
Finsler lengths and the Plucker overlap."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .subspace import DEFAULT_TOLERANCES, Subspace, Tolerances, check_same_shape, projector

__all__ = [
    "PairData",
    "principal_decomposition",
    "principal_angles",
    "angles_via_projectors",
    "finsler_lengths",
    "lengths_from_angles",
    "plucker_overlap",
    "plucker_triple",
    "degenerate_index_pairs",
]


@dataclass(frozen=True, eq=False)
class PairData:
    """Principal data of an ordered pair (V, W).

    ``v_frame[:, i]`` is |v_i^W> and ``w_frame[:, i]`` is |w_i^V>; together they
    satisfy ``v_frame^dagger w_frame = diag(cosines)`` with ``cosines >= 0``.
    ``theta`` is ascending.
    """

    theta: np.ndarray
    cosines: np.ndarray
    v_frame: np.ndarray
    w_frame: np.ndarray
    degenerate_pairs: tuple = ()

    @property
    def m(self) -> int:
        return len(self.theta)

    @property
    def degenerate(self) -> bool:
        return bool(self.degenerate_pairs)

    @property
    def sines(self) -> np.ndarray:
        return np.sin(self.theta)


def degenerate_index_pairs(cosines, deg_tol) -> tuple:
    c = np.asarray(cosines)
    m = len(c)
    return tuple(
        (i, j) for i in range(m) for j in range(i + 1, m) if abs(c[i] - c[j]) < deg_tol
    )


def principal_decomposition(V: Subspace, W: Subspace, tol: Optional[Tolerances] = None) -> PairData:
    """Principal angles and conjugate principal bases via the SVD of V^dagger W."""
    check_same_shape(V, W)
    tol = tol or V.tol
    M = V.frame.conj().T @ W.frame
    left, s, right_h = np.linalg.svd(M)
    v_frame = V.frame @ left
    w_frame = W.frame @ right_h.conj().T
    cosines = np.clip(s, 0.0, 1.0)
    theta = np.arccos(cosines)
    # arccos loses digits near 1; the component of w_i orthogonal to V has norm sin(theta_i)
    residual = w_frame - v_frame * cosines[None, :]
    sines = np.clip(np.linalg.norm(residual, axis=0), 0.0, 1.0)
    small = theta < np.pi / 4
    theta = np.where(small, np.arcsin(sines), theta)
    v_frame.flags.writeable = False
    w_frame.flags.writeable = False
    return PairData(
        theta=theta,
        cosines=cosines,
        v_frame=v_frame,
        w_frame=w_frame,
        degenerate_pairs=degenerate_index_pairs(cosines, tol.deg_tol),
    )


def principal_angles(V: Subspace, W: Subspace) -> np.ndarray:
    return principal_decomposition(V, W).theta


def angles_via_projectors(V: Subspace, W: Subspace) -> np.ndarray:
    """Spectrum of P_V P_W P_V seen as an operator on V, in descending order.

    These are the squared principal cosines, computed without any SVD.
    """
    check_same_shape(V, W)
    H = V.frame.conj().T @ projector(W) @ V.frame
    H = 0.5 * (H + H.conj().T)
    ev = np.linalg.eigvalsh(H)[::-1]
    return np.clip(ev, 0.0, 1.0)


def lengths_from_angles(theta) -> np.ndarray:
    """L_l = (sum_i theta_i^(2l))^(1/(2l)) for l = 1..m."""
    theta = np.abs(np.asarray(theta, dtype=float))
    m = len(theta)
    out = np.empty(m)
    scale = theta.max() if m else 0.0
    for l in range(1, m + 1):
        if scale == 0.0:
            out[l - 1] = 0.0
        else:
            # factor out the largest angle to avoid underflow for large l
            out[l - 1] = scale * np.sum((theta / scale) ** (2 * l)) ** (1.0 / (2 * l))
    return out


def finsler_lengths(V: Subspace, W: Subspace) -> np.ndarray:
    return lengths_from_angles(principal_decomposition(V, W).theta)


def plucker_overlap(V: Subspace, W: Subspace) -> complex:
    """<Pl V, Pl W> = det <v_i|w_j>.

    The modulus is the product of principal cosines; the phase depends on the
    frames chosen for V and W.
    """
    check_same_shape(V, W)
    return complex(np.linalg.det(V.frame.conj().T @ W.frame))


def plucker_triple(V: Subspace, W: Subspace, U: Subspace) -> complex:
    """P(V, W, U) = <Pl V, Pl W><Pl W, Pl U><Pl U, Pl V>, a frame independent number."""
    return plucker_overlap(V, W) * plucker_overlap(W, U) * plucker_overlap(U, V)
