"""Acceptance checks 1-10.

Each test prints one PASS/FAIL line.  Run standalone with
``python3 tests/test_acceptance.py`` or through pytest with ``-s`` to see
the lines interleaved; they are also shown in the pytest summary on failure.
"""

import time

import numpy as np
import pytest

from grassmann_geometry.gauge_graph import (
    TripartiteConnection,
    apply_gauge,
    from_triple,
    gauge_equivalent,
    incidence_matrix,
    loop_basis,
    random_gauge,
    tree_gauge,
    wilson_loop,
)
from grassmann_geometry.geodesics import g_direction, geodesic_lengths
from grassmann_geometry.holonomy import three_state_phase_via_holonomy, three_state_phases_via_holonomy
from grassmann_geometry.pairs import angles_via_projectors, plucker_overlap, principal_decomposition
from grassmann_geometry.subspace import (
    Configuration,
    Subspace,
    sample_configuration,
    sample_subspace,
    sample_unitary,
)
from grassmann_geometry.tensors import bloch_family, evaluate_tensors, interpolation_family
from grassmann_geometry.triples import (
    configs_equivalent,
    invariant_count,
    orbit_codimension_numeric,
    phase_distance,
    realize_triple,
    triple_invariants,
)

SEED = 1729


@pytest.fixture
def report(capsys):
    def _report(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {title}  {detail}")
        assert ok, f"criterion {number} failed: {detail}"
    return _report


def pair_with_angles(n, theta, rng):
    """A pair with the given principal angles, rotated and re-framed at random."""
    m = len(theta)
    e = np.eye(n)
    V = e[:, :m]
    W = np.cos(theta) * e[:, :m] + np.sin(theta) * e[:, m:2 * m]
    G = sample_unitary(n, rng)
    gv, gw = sample_unitary(m, rng), sample_unitary(m, rng)
    return Configuration((Subspace(G @ V @ gv), Subspace(G @ W @ gw)))


def test_1_route_equivalence(report):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(200):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(2 * m, 13))
        V, W = sample_subspace(n, m, rng), sample_subspace(n, m, rng)
        c2 = principal_decomposition(V, W).cosines ** 2
        worst = max(worst, float(np.max(np.abs(np.sort(c2) - np.sort(angles_via_projectors(V, W))))))
    report(1, "cos^2(SVD) vs spectrum of P_V P_W P_V", worst < 1e-10, f"max dev {worst:.2e}")


def test_2_pair_equivalence(report):
    rng = np.random.default_rng(SEED + 2)
    witness, flips = 0.0, 0
    ok = True
    for _ in range(50):
        m = int(rng.integers(1, 4))
        n = int(rng.integers(2 * m, 11))
        theta = np.sort(rng.uniform(0.05, np.pi / 2 - 0.05, m))
        A, B = pair_with_angles(n, theta, rng), pair_with_angles(n, theta, rng)
        res = configs_equivalent(A, B)
        ok &= res.equivalent is True
        witness = max(witness, res.witness_error)
        bumped = theta.copy()
        bumped[int(rng.integers(m))] += 1e-3
        flips += configs_equivalent(A, pair_with_angles(n, bumped, rng)).equivalent is False
    ok = ok and witness < 1e-8 and flips == 50
    report(2, "pairs with equal angles are equivalent", ok, f"witness err {witness:.2e}, flipped {flips}/50")


def test_3_triple_equivalence(report):
    rng = np.random.default_rng(SEED + 3)
    witness, ok, flips = 0.0, True, 0
    eps = 1e-3
    for _ in range(50):
        m = int(rng.integers(1, 4))
        n = 3 * m + int(rng.integers(0, 3))
        C = Configuration(tuple(sample_subspace(n, m, rng) for _ in range(3)))
        res = configs_equivalent(C, C.transformed(sample_unitary(n, rng)))
        ok &= res.equivalent is True
        witness = max(witness, res.witness_error)
        td = triple_invariants(*C)
        Vmat, Wmat, Umat = td.unitaries
        shifted = Wmat @ np.diag(np.r_[np.exp(1j * eps), np.ones(m - 1)])
        other = Configuration(realize_triple(*td.angles, Vmat, shifted, Umat, n=n))
        # only the j = 0 slice of the three-state phases moves
        tp = triple_invariants(*other).three_state_phases
        moved = np.max(phase_distance(tp, td.three_state_phases)) > eps / 2
        flips += bool(moved and configs_equivalent(C, other).equivalent is False)
    ok = ok and witness < 1e-8 and flips == 50
    report(3, "conjugated triples are equivalent", ok, f"witness err {witness:.2e}, flipped {flips}/50")


def test_4_parameter_counting(report):
    rows = []
    for m, l, n in [(1, 3, 4), (2, 2, 5), (2, 3, 7), (3, 3, 10)]:
        C = sample_configuration(n, m, l, seed=SEED + n)
        rows.append((orbit_codimension_numeric(C), invariant_count(m, l)))
    report(4, "orbit codimension equals invariant count", all(a == b for a, b in rows),
           " ".join(f"{a}/{b}" for a, b in rows))


def test_5_geodesic_lengths(report):
    rng = np.random.default_rng(SEED + 5)
    worst, ratios = 0.0, []
    for m in (1, 2, 3):
        for _ in range(3):
            n = 2 * m + int(rng.integers(0, 3))
            V, W = sample_subspace(n, m, rng), sample_subspace(n, m, rng)
            exact = geodesic_lengths(V, W)
            e1000 = np.abs(geodesic_lengths(V, W, "numeric", 1000) - exact)
            e500 = np.abs(geodesic_lengths(V, W, "numeric", 500) - exact)
            worst = max(worst, float(np.max(e1000)))
            ratios += list(e500[e1000 > 1e-11] / e1000[e1000 > 1e-11])
    ratio_ok = bool(ratios) and all(3.5 < r < 4.5 for r in ratios)
    report(5, "numeric Finsler lengths", worst < 1e-6 and ratio_ok,
           f"max err {worst:.2e}, ratio range [{min(ratios):.3f}, {max(ratios):.3f}]")


def test_6_directional_metric(report):
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    for _ in range(100):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(2 * m, 13))
        V, W = sample_subspace(n, m, rng), sample_subspace(n, m, rng)
        theta = principal_decomposition(V, W).theta
        ev = g_direction(V, W, split=False).eigenvalues
        worst = max(worst, float(np.max(np.abs(np.sort(ev) - np.sort(theta ** 2)))))
    report(6, "eigenvalues of G(V->W) are theta^2", worst < 1e-9, f"max dev {worst:.2e}")


def test_7_holonomy(report):
    rng = np.random.default_rng(SEED + 7)
    start = time.perf_counter()
    dev, inv = 0.0, 0.0
    for _ in range(20):
        V, W, U = (sample_subspace(9, 2, rng) for _ in range(3))
        direct = triple_invariants(V, W, U).three_state_phases
        plain = three_state_phases_via_holonomy(V, W, U, steps=2000)
        shuffled = three_state_phases_via_holonomy(V, W, U, steps=2000, randomize_phases=rng)
        dev = max(dev, float(np.max(phase_distance(plain, direct))))
        inv = max(inv, float(np.max(phase_distance(plain, shuffled))))
    report(7, "3SP via holonomy", dev < 1e-6 and inv < 1e-6,
           f"vs direct {dev:.2e}, re-randomized {inv:.2e}, {time.perf_counter() - start:.1f}s")


def test_8_single_line_reductions(report):
    kets = [np.array(v, dtype=complex) / np.linalg.norm(v) for v in ([1, 0], [1, 1], [1, 1j])]
    V, W, U = (Subspace(k[:, None]) for k in kets)
    v, w, u = kets
    # independent oracle: Bargmann product straight from the kets
    oracle = np.angle(np.vdot(v, w) * np.vdot(w, u) * np.vdot(u, v))
    direct = triple_invariants(V, W, U).three_state_phases[0, 0, 0]
    hol = three_state_phase_via_holonomy(V, W, U, 0, 0, 0, steps=400)
    ok3 = abs(oracle - np.pi / 4) < 1e-12 and abs(direct - oracle) < 1e-12 and abs(hol - oracle) < 1e-6

    fam = bloch_family(analytic=True)
    N = 100
    dt, dp = np.pi / N, 2 * np.pi / N
    flux = 0.0
    for a in range(N):
        for b in range(N):
            s = evaluate_tensors(fam, [(a + 0.5) * dt, (b + 0.5) * dp], check_curvature=False)
            flux += np.trace(s.F[0, 1]).real * dt * dp
    ok_flux = abs(abs(flux) - 2 * np.pi) < 0.01 * 2 * np.pi
    report(8, "m = 1 reductions", ok3 and ok_flux, f"3SP {direct:.15f}, flux {flux:.6f}")


def test_9_gauge_graph(report):
    rng = np.random.default_rng(SEED + 9)
    conn = TripartiteConnection.random(3, rng)
    loops = loop_basis(3) + [lp.reversed() for lp in loop_basis(3)[:5]]
    ref = np.array([wilson_loop(conn, lp) for lp in loops])
    inv = max(
        float(np.max(phase_distance([wilson_loop(apply_gauge(conn, *random_gauge(3, rng)), lp) for lp in loops], ref)))
        for _ in range(100)
    )
    counts = []
    for m in (1, 2, 3, 4):
        B = loop_basis(m)
        counts.append(bool(len(B) == 3 * m * m - 3 * m + 1 == np.linalg.matrix_rank(incidence_matrix(B, m))))

    agree = 0
    for t in range(100):
        m = int(rng.integers(1, 5))
        A = TripartiteConnection.random(m, rng)
        if t % 3 == 0:
            B = TripartiteConnection.random(m, rng)
        else:
            B = apply_gauge(A, *random_gauge(m, rng))
            if t % 3 == 2:
                p = B.phi1.copy()
                p[int(rng.integers(m)), int(rng.integers(m))] += 0.05
                B = TripartiteConnection(p, B.phi2, B.phi3)
        tree = gauge_equivalent(A, B).equivalent
        basis = all(phase_distance(wilson_loop(A, lp), wilson_loop(B, lp)) < 1e-8 for lp in loop_basis(m))
        agree += tree == basis
    ok = inv < 1e-12 and all(counts) and agree == 100
    report(9, "gauge graph", ok, f"invariance dev {inv:.2e}, basis ok {counts}, verdicts agree {agree}/100")


def test_10_plucker(report):
    rng = np.random.default_rng(SEED + 10)
    worst = 0.0
    for _ in range(50):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(m + 1, 13))
        V, W = sample_subspace(n, m, rng), sample_subspace(n, m, rng)
        worst = max(worst, abs(abs(plucker_overlap(V, W)) - np.prod(principal_decomposition(V, W).cosines)))

    # tr Q(u, u) against 1 - |<Pl psi(0)|Pl psi(+-delta u)>|^2 ~ delta^2 Re tr Q(u, u)
    n, m, d = 7, 3, 4
    base = sample_subspace(n, m, rng).frame
    frames = [base] + [base + 0.3 * (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) for _ in range(d)]
    fam = interpolation_family(frames)
    x0 = np.zeros(d)
    s = evaluate_tensors(fam, x0, check_curvature=False)
    psi0 = fam.frame(x0)
    delta = 3e-4
    dq = 0.0
    for _ in range(10):
        u = rng.standard_normal(d)
        u /= np.linalg.norm(u)
        trq = np.einsum("a,b,abii->", u, u, s.Q).real
        loss = [1 - abs(np.linalg.det(psi0.conj().T @ fam.frame(x0 + sg * delta * u))) ** 2 for sg in (1, -1)]
        dq = max(dq, abs(0.5 * sum(loss) / delta ** 2 - trq) / max(1.0, abs(trq)))
    ok = worst < 1e-10 and dq < s.fd_tol
    report(10, "Pluecker consistency", ok, f"|det| dev {worst:.2e}, tr Q dev {dq:.2e} (fd_tol {s.fd_tol:.0e})")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
