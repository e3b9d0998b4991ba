"""Discrete U(1) gauge fields on the complete tripartite graph K_{m,m,m}.

Vertices are (part, index) with part 0 = i (V-W pair), 1 = j (W-U pair),
2 = k (U-V pair).  One orientation per edge is stored:

    phi1[i, k]  on (0, i) -> (2, k)
    phi2[j, i]  on (1, j) -> (0, i)
    phi3[k, j]  on (2, k) -> (1, j)

so the triangle (0, i) -> (1, j) -> (2, k) -> (0, i) has circulation
-phi2[j, i] - phi3[k, j] + phi1[i, k].  A gauge transform (alpha, beta, gamma)
on parts (0, 1, 2) shifts the edge x -> y by g_x - g_y.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidLoop
from .subspace import Subspace, Tolerances
from .triples import phase_distance, principal_pairs, require_paired, unitaries_from_pairs, wrap_phase

__all__ = [
    "TripartiteConnection",
    "Loop",
    "GaugeResult",
    "from_triple",
    "edge_phase",
    "wilson_loop",
    "apply_gauge",
    "random_gauge",
    "loop_basis",
    "incidence_matrix",
    "edge_list",
    "reduce_loop",
    "decompose",
    "tree_gauge",
    "gauge_equivalent",
]


@dataclass(frozen=True, eq=False)
class TripartiteConnection:
    phi1: np.ndarray
    phi2: np.ndarray
    phi3: np.ndarray

    def __post_init__(self):
        arrs = [np.asarray(a, dtype=float) for a in (self.phi1, self.phi2, self.phi3)]
        m = arrs[0].shape[0]
        for a in arrs:
            if a.shape != (m, m):
                raise ValueError("phi1, phi2, phi3 must all be m x m")
        for name, a in zip(("phi1", "phi2", "phi3"), arrs):
            object.__setattr__(self, name, wrap_phase(a))

    @property
    def m(self) -> int:
        return self.phi1.shape[0]

    @classmethod
    def zero(cls, m: int) -> "TripartiteConnection":
        z = np.zeros((m, m))
        return cls(z, z, z)

    @classmethod
    def random(cls, m: int, seed=None) -> "TripartiteConnection":
        rng = np.random.default_rng(seed)
        return cls(*(rng.uniform(-np.pi, np.pi, (m, m)) for _ in range(3)))


@dataclass(frozen=True)
class Loop:
    """Closed walk given by its vertices (part, index); the last vertex joins the first."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple((int(p), int(i)) for p, i in self.vertices)
        object.__setattr__(self, "vertices", vs)

    def __len__(self):
        return len(self.vertices)

    def reversed(self) -> "Loop":
        return Loop(self.vertices[::-1])

    def edges(self):
        vs = self.vertices
        return [(vs[a], vs[(a + 1) % len(vs)]) for a in range(len(vs))]


def _validate(loop: Loop, m: int):
    vs = loop.vertices
    if len(vs) < 3:
        raise InvalidLoop(f"a loop needs at least 3 vertices, got {len(vs)}")
    for p, i in vs:
        if p not in (0, 1, 2) or not 0 <= i < m:
            raise InvalidLoop(f"vertex {(p, i)} is not in K_(m,m,m) with m={m}")
    for x, y in loop.edges():
        if x[0] == y[0]:
            raise InvalidLoop(f"consecutive vertices {x} and {y} lie in the same part")


def edge_phase(conn: TripartiteConnection, x, y) -> float:
    """Phase on the oriented edge x -> y (negated if stored the other way)."""
    (p, a), (q, b) = x, y
    if (p, q) == (0, 2):
        return conn.phi1[a, b]
    if (p, q) == (1, 0):
        return conn.phi2[a, b]
    if (p, q) == (2, 1):
        return conn.phi3[a, b]
    if (p, q) in ((2, 0), (0, 1), (1, 2)):
        return -edge_phase(conn, y, x)
    raise InvalidLoop(f"no edge between {x} and {y}")


def wilson_loop(conn: TripartiteConnection, loop: Loop) -> float:
    """Circulation of ``conn`` around ``loop`` in (-pi, pi]."""
    _validate(loop, conn.m)
    return float(wrap_phase(sum(edge_phase(conn, x, y) for x, y in loop.edges())))


def from_triple(V: Subspace, W: Subspace, U: Subspace, tol: Optional[Tolerances] = None) -> TripartiteConnection:
    """Connection whose triangle circulations are the three-state phases of (V, W, U)."""
    pairs = principal_pairs(V, W, U, tol)
    require_paired(pairs, tol or V.tol)
    Vmat, Wmat, Umat = unitaries_from_pairs(*pairs)
    return TripartiteConnection(np.angle(Vmat), -np.angle(Wmat).T, -np.angle(Umat).T)


def apply_gauge(conn: TripartiteConnection, alpha, beta, gamma) -> TripartiteConnection:
    alpha, beta, gamma = (np.asarray(g, dtype=float) for g in (alpha, beta, gamma))
    return TripartiteConnection(
        conn.phi1 + alpha[:, None] - gamma[None, :],
        conn.phi2 + beta[:, None] - alpha[None, :],
        conn.phi3 + gamma[:, None] - beta[None, :],
    )


def random_gauge(m: int, seed=None):
    rng = np.random.default_rng(seed)
    return tuple(rng.uniform(-np.pi, np.pi, m) for _ in range(3))


def edge_list(m: int):
    """Stored edges in a fixed order: phi1 (row major), then phi2, then phi3."""
    out = []
    for (p, q) in ((0, 2), (1, 0), (2, 1)):
        out += [((p, a), (q, b)) for a in range(m) for b in range(m)]
    return out


def incidence_matrix(loops: Sequence[Loop], m: int) -> np.ndarray:
    """Signed edge counts, one row per loop, columns as in :func:`edge_list`."""
    index = {e: c for c, e in enumerate(edge_list(m))}
    M = np.zeros((len(loops), 3 * m * m), dtype=int)
    for r, loop in enumerate(loops):
        _validate(loop, m)
        for x, y in loop.edges():
            if (x, y) in index:
                M[r, index[(x, y)]] += 1
            else:
                M[r, index[(y, x)]] -= 1
    return M


def loop_basis(m: int) -> list:
    """3m^2 - 3m + 1 independent loops generating all circulations.

    Triangles through (0, 0) for every (j, k), triangles through (1, 0) for
    every i >= 1 and k, and 4-loops (0, i) (1, j) (0, 0) (1, 0) for i, j >= 1.
    Relative to the spanning tree used by :func:`tree_gauge` each loop closes
    exactly one new edge, so the set is a fundamental cycle basis.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    loops = [Loop(((0, 0), (1, j), (2, k))) for j in range(m) for k in range(m)]
    loops += [Loop(((0, i), (1, 0), (2, k))) for i in range(1, m) for k in range(m)]
    loops += [Loop(((0, i), (1, j), (0, 0), (1, 0))) for i in range(1, m) for j in range(1, m)]
    return loops


def reduce_loop(loop: Loop) -> list:
    """Split a loop into triangles and alternating 4-loops with the same circulation.

    Three consecutive vertices x, y, z in distinct parts give
    (... x y z ...) = (... x z ...) + (x y z).  A remaining loop that uses
    only two parts is cut into 4-loops along chords from its first vertex.
    Back-and-forth steps x y x are dropped.
    """
    pieces = []
    vs = list(loop.vertices)
    changed = True
    while changed and len(vs) >= 3:
        changed = False
        L = len(vs)
        for a in range(L):
            x, y, z = vs[a], vs[(a + 1) % L], vs[(a + 2) % L]
            if x == z:
                # x y x is a back-and-forth step with zero circulation
                drop = {(a + 1) % L, (a + 2) % L}
                vs = [v for c, v in enumerate(vs) if c not in drop]
                changed = True
                break
            if len({x[0], y[0], z[0]}) == 3:
                pieces.append(Loop((x, y, z)))
                del vs[(a + 1) % L]
                changed = True
                break
    if len(vs) >= 3:
        # bipartite remainder v0 v1 ... v_{2r-1}
        v0 = vs[0]
        for s in range(1, len(vs) - 3, 2):
            pieces.append(Loop((v0, vs[s], vs[s + 1], vs[s + 2])))
        tail = (v0,) + tuple(vs[-3:])
        pieces.append(Loop(tail))
    return [p for p in pieces if not _trivial(p)]


def _trivial(loop: Loop) -> bool:
    # a 4-loop x y x y' or x y x' y retraces itself
    v = loop.vertices
    return len(v) == 4 and (v[0] == v[2] or v[1] == v[3])


def decompose(loop: Loop, m: int):
    """Integer coefficients c with circulation(loop) = sum_b c_b circulation(basis_b).

    Returns (coefficients, basis).  The loop is first reduced to triangles and
    4-loops; the edge-incidence system is then solved over the fundamental
    cycle basis and checked to be exact.
    """
    _validate(loop, m)
    basis = loop_basis(m)
    B = incidence_matrix(basis, m).astype(float)
    pieces = reduce_loop(loop)
    target = incidence_matrix([loop], m)[0]
    piece_sum = incidence_matrix(pieces, m).sum(axis=0) if pieces else np.zeros_like(target)
    if not np.array_equal(piece_sum, target):
        raise InvalidLoop("loop reduction did not preserve edge incidences")
    sol, *_ = np.linalg.lstsq(B.T, target.astype(float), rcond=None)
    coeffs = np.rint(sol).astype(int)
    if not np.array_equal(coeffs @ B.astype(int), target):
        raise InvalidLoop("loop is not an integer combination of basis loops")
    return coeffs, basis


def _tree_edges(m: int):
    # star from (0, 0) to every (1, j) and (2, k), plus (1, 0) - (0, i) for i >= 1
    return [((0, 0), (1, j)) for j in range(m)] + [((0, 0), (2, k)) for k in range(m)] + [
        ((1, 0), (0, i)) for i in range(1, m)
    ]


def tree_gauge(conn: TripartiteConnection):
    """Gauge (alpha, beta, gamma) that zeroes the spanning-tree edges, and the gauged connection."""
    m = conn.m
    alpha, beta, gamma = np.zeros(m), np.zeros(m), np.zeros(m)
    # edge x -> y becomes phase + g_x - g_y; with g_(0,0) = 0 solve along the tree
    for j in range(m):
        beta[j] = edge_phase(conn, (0, 0), (1, j))
    for k in range(m):
        gamma[k] = edge_phase(conn, (0, 0), (2, k))
    for i in range(1, m):
        alpha[i] = edge_phase(conn, (1, 0), (0, i)) + beta[0]
    g = (alpha, beta, gamma)
    return g, apply_gauge(conn, *g)


@dataclass(frozen=True, eq=False)
class GaugeResult:
    equivalent: bool
    witness: Optional[tuple] = None
    max_deviation: float = 0.0

    def __bool__(self):
        return bool(self.equivalent)


def gauge_equivalent(connA: TripartiteConnection, connB: TripartiteConnection,
                     tol: Optional[Tolerances] = None) -> GaugeResult:
    """Decide whether connB = apply_gauge(connA, g) for some g; return g when it is."""
    if connA.m != connB.m:
        raise ValueError("connections have different part sizes")
    eq_tol = (tol or Tolerances()).eq_tol
    gA, tA = tree_gauge(connA)
    gB, tB = tree_gauge(connB)
    dev = max(float(np.max(phase_distance(a, b))) for a, b in
              ((tA.phi1, tB.phi1), (tA.phi2, tB.phi2), (tA.phi3, tB.phi3)))
    if dev > eq_tol:
        return GaugeResult(False, None, dev)
    witness = tuple(a - b for a, b in zip(gA, gB))
    return GaugeResult(True, witness, dev)
