"""Subspaces of C^n stored as orthonormal frames.

A point of the Grassmannian Gr(m, n) is kept as an n x m matrix with
orthonormal columns.  The projector P = F F^dagger is derived on demand; it is
the phase/basis independent view, the frame is what principal vectors and
gauge bookkeeping need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import BadDimensions, DimensionMismatch, NotOrthonormal, RankDeficient

__all__ = [
    "Tolerances",
    "Subspace",
    "Configuration",
    "orthonormalize",
    "polar_frame",
    "projector",
    "sample",
    "sample_unitary",
    "sample_subspace",
    "sample_configuration",
    "transform",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by all operations.

    ortho_tol : orthonormality of frames, rank detection, vanishing overlaps
    eq_tol    : equality of invariants
    deg_tol   : detection of coinciding principal cosines
    """

    ortho_tol: float = 1e-10
    eq_tol: float = 1e-8
    deg_tol: float = 1e-7

    def __post_init__(self):
        for name in ("ortho_tol", "eq_tol", "deg_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    def replace(self, **changes) -> "Tolerances":
        values = {"ortho_tol": self.ortho_tol, "eq_tol": self.eq_tol, "deg_tol": self.deg_tol}
        values.update(changes)
        return Tolerances(**values)


DEFAULT_TOLERANCES = Tolerances()


def _frozen(a):
    a = np.array(a, dtype=complex, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Subspace:
    """An m-dimensional subspace of C^n given by an orthonormal frame.

    Construction validates ``frame^dagger frame = I`` to ``tol.ortho_tol``;
    use :func:`orthonormalize` for arbitrary full-rank input.
    """

    frame: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOLERANCES)

    def __post_init__(self):
        frame = np.asarray(self.frame)
        if frame.ndim == 1:
            frame = frame[:, None]
        if frame.ndim != 2:
            raise BadDimensions(f"frame must be a 2-d array, got shape {frame.shape}")
        n, m = frame.shape
        if m < 1 or n < m:
            raise BadDimensions(f"need 1 <= m <= n, got n={n}, m={m}")
        frame = _frozen(frame)
        err = np.max(np.abs(frame.conj().T @ frame - np.eye(m)))
        if err > self.tol.ortho_tol:
            raise NotOrthonormal(f"frame is not orthonormal (max deviation {err:.3e})")
        object.__setattr__(self, "frame", frame)

    @property
    def n(self) -> int:
        return self.frame.shape[0]

    @property
    def m(self) -> int:
        return self.frame.shape[1]

    @property
    def projector(self) -> np.ndarray:
        return projector(self)

    def __repr__(self):
        return f"Subspace(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class Configuration:
    """Ordered collection of subspaces sharing (n, m)."""

    subspaces: tuple
    labels: Optional[tuple] = None
    tol: Tolerances = field(default=DEFAULT_TOLERANCES)

    def __post_init__(self):
        subs = tuple(self.subspaces)
        if not subs:
            raise BadDimensions("a configuration needs at least one subspace")
        n, m = subs[0].n, subs[0].m
        for s in subs[1:]:
            if (s.n, s.m) != (n, m):
                raise DimensionMismatch(
                    f"all subspaces must share (n, m) = ({n}, {m}); got ({s.n}, {s.m})"
                )
        object.__setattr__(self, "subspaces", subs)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(f"S{i}" for i in range(len(subs))))
        else:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(subs):
                raise BadDimensions("labels and subspaces differ in length")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.subspaces[0].n

    @property
    def m(self) -> int:
        return self.subspaces[0].m

    def __len__(self):
        return len(self.subspaces)

    def __getitem__(self, i):
        return self.subspaces[i]

    def __iter__(self):
        return iter(self.subspaces)

    def transformed(self, U) -> "Configuration":
        return Configuration(tuple(transform(U, s) for s in self.subspaces), self.labels, self.tol)


def _fix_column_phases(q):
    # Largest-magnitude entry of each column made real positive (first one on ties).
    idx = np.argmax(np.abs(q), axis=0)
    pivots = q[idx, np.arange(q.shape[1])]
    return q * (np.abs(pivots) / pivots)[None, :]


def orthonormalize(raw, tol: Tolerances = DEFAULT_TOLERANCES) -> Subspace:
    """Orthonormal frame for the column space of ``raw`` (Gram-Schmidt order).

    Raises RankDeficient when the smallest singular value of ``raw`` is at or
    below ``tol.ortho_tol``.
    """
    raw = np.asarray(raw, dtype=complex)
    if raw.ndim == 1:
        raw = raw[:, None]
    n, m = raw.shape
    if m < 1 or n < m:
        raise BadDimensions(f"need 1 <= m <= n, got n={n}, m={m}")
    smin = np.linalg.svd(raw, compute_uv=False)[-1]
    if smin <= tol.ortho_tol:
        raise RankDeficient(f"columns are linearly dependent (smallest singular value {smin:.3e})")
    q, _ = np.linalg.qr(raw)
    # one refinement pass keeps frame^dagger frame = I at machine precision
    q, _ = np.linalg.qr(q)
    return Subspace(_fix_column_phases(q), tol)


def polar_frame(raw) -> np.ndarray:
    """Closest orthonormal frame ``raw (raw^dagger raw)^{-1/2}``.

    Smooth in ``raw`` and free of any phase convention, which is what
    parametrized families need.
    """
    raw = np.asarray(raw, dtype=complex)
    u, _, vh = np.linalg.svd(raw, full_matrices=False)
    return u @ vh


def projector(S: Subspace) -> np.ndarray:
    """P = sum_i |v_i><v_i| for the frame columns |v_i>."""
    F = S.frame
    P = F @ F.conj().T
    return 0.5 * (P + P.conj().T)


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_unitary(n: int, seed=None) -> np.ndarray:
    """Haar-random n x n unitary (QR of a complex Ginibre matrix, R phases removed)."""
    if n < 1:
        raise BadDimensions(f"n must be positive, got {n}")
    rng = _rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


def sample_subspace(n: int, m: int, seed=None, tol: Tolerances = DEFAULT_TOLERANCES) -> Subspace:
    """Uniformly distributed point of Gr(m, n)."""
    if m < 1 or n < m:
        raise BadDimensions(f"need 1 <= m <= n, got n={n}, m={m}")
    rng = _rng(seed)
    z = (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2)
    return orthonormalize(z, tol)


def sample(kind: str, n: int, m: Optional[int] = None, seed=None):
    """Dispatch to :func:`sample_subspace` or :func:`sample_unitary`."""
    if kind == "unitary":
        return sample_unitary(n, seed)
    if kind == "subspace":
        if m is None:
            raise BadDimensions("subspace sampling needs m")
        return sample_subspace(n, m, seed)
    raise ValueError(f"unknown kind {kind!r}; expected 'subspace' or 'unitary'")


def sample_configuration(n: int, m: int, l: int, seed=None, tol: Tolerances = DEFAULT_TOLERANCES) -> Configuration:
    rng = _rng(seed)
    subs = tuple(sample_subspace(n, m, rng, tol) for _ in range(l))
    return Configuration(subs, tol=tol)


def transform(U, S: Subspace) -> Subspace:
    """Image U S of a subspace under a unitary (frame mapped column-wise)."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (S.n, S.n):
        raise DimensionMismatch(f"unitary of shape {U.shape} cannot act on C^{S.n}")
    return Subspace(U @ S.frame, S.tol)


def check_same_shape(*subspaces: Sequence[Subspace]):
    n, m = subspaces[0].n, subspaces[0].m
    for s in subspaces[1:]:
        if (s.n, s.m) != (n, m):
            raise DimensionMismatch(
                f"subspaces must share (n, m); got ({n}, {m}) and ({s.n}, {s.m})"
            )
