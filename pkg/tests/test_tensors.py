import numpy as np
import pytest
import scipy.linalg

from grassmann_geometry import errors
from grassmann_geometry.geodesics import geodesic
from grassmann_geometry.subspace import Subspace, sample_subspace
from grassmann_geometry.tensors import (
    ParamFamily,
    abelian_reduction,
    bloch_family,
    evaluate_tensors,
    finsler_norm,
    interpolation_family,
)


def great_circle(analytic):
    f = lambda x: np.array([[np.cos(x[0] / 2)], [np.sin(x[0] / 2)]])
    d = lambda x: np.array([[[-np.sin(x[0] / 2) / 2], [np.cos(x[0] / 2) / 2]]])
    return ParamFamily(1, f, d if analytic else None)


def random_family(n=6, m=2, d=2, seed=0):
    rng = np.random.default_rng(seed)
    return interpolation_family([sample_subspace(n, m, rng).frame for _ in range(d + 1)])


@pytest.mark.parametrize("analytic", [True, False])
@pytest.mark.parametrize("x", [-1.3, 0.0, 0.4, 2.0])
def test_great_circle(analytic, x):
    s = evaluate_tensors(great_circle(analytic), [x])
    assert abs(np.trace(s.G[0, 0]).real - 0.25) < 1e-8
    assert abs(np.trace(s.F[0, 0])) < 1e-12


def test_bloch_values():
    # analytic: g_tt = 1/4, g_pp = sin^2 t / 4, F_tp = -sin t / 2
    t = 1.1
    for fam in (bloch_family(True), bloch_family(False)):
        s = evaluate_tensors(fam, [t, 0.7])
        assert abs(s.G[0, 0, 0, 0] - 0.25) < 1e-8
        assert abs(s.G[1, 1, 0, 0] - np.sin(t) ** 2 / 4) < 1e-8
        assert abs(s.G[0, 1, 0, 0]) < 1e-8
        assert abs(s.F[0, 1, 0, 0] + np.sin(t) / 2) < 1e-8
        assert s.curvature_residual < s.fd_tol


def test_constant_family():
    F0 = sample_subspace(5, 2, seed=1).frame
    s = evaluate_tensors(ParamFamily(2, lambda x: F0), [0.3, -0.2])
    for T in (s.A, s.Q, s.G, s.F):
        assert np.max(np.abs(T)) < 1e-12
    fs, berry = abelian_reduction(s)
    assert np.max(np.abs(fs)) < 1e-12 and np.max(np.abs(berry)) < 1e-12


def test_tensor_symmetries():
    s = evaluate_tensors(random_family(), [0.1, -0.2])
    tol = s.fd_tol
    G, F, Q = s.G, s.F, s.Q
    assert np.max(np.abs(G - np.swapaxes(G, 0, 1))) < tol
    assert np.max(np.abs(G - np.conj(np.swapaxes(G, 2, 3)))) < tol
    assert np.max(np.abs(F + np.swapaxes(F, 0, 1))) < tol
    assert np.max(np.abs(F - np.conj(np.swapaxes(F, 2, 3)))) < tol
    assert np.max(np.abs(Q - (G - 0.5j * F))) < tol
    assert np.max(np.abs(s.A - np.conj(np.swapaxes(s.A, 1, 2)))) < 1e-12
    assert s.curvature_residual < tol


def test_second_derivative_identity():
    # G_ab = -(1/2) psi^dagger d_a d_b P psi, from second differences of P
    fam = random_family(seed=3)
    x = np.array([0.05, 0.1])
    s = evaluate_tensors(fam, x)
    h = 1e-4
    proj = lambda y: (lambda F: F @ F.conj().T)(fam.frame(y))
    psi = s.frame
    e = np.eye(2) * h
    for a in range(2):
        for b in range(2):
            d2 = (proj(x + e[a] + e[b]) - proj(x + e[a] - e[b]) - proj(x - e[a] + e[b]) + proj(x - e[a] - e[b])) / (4 * h * h)
            assert np.max(np.abs(-0.5 * psi.conj().T @ d2 @ psi - s.G[a, b])) < 1e-6


def test_fd_convergence_order():
    exact = evaluate_tensors(bloch_family(True), [1.0, 0.3]).G
    fam = bloch_family(False)
    err = [np.max(np.abs(evaluate_tensors(fam, [1.0, 0.3], step=h).G - exact)) for h in (2e-2, 1e-2)]
    assert 3.5 < err[0] / err[1] < 4.5


def test_gauge_covariance():
    fam = random_family(seed=4)
    rng = np.random.default_rng(5)
    H = [(lambda X: X + X.conj().T)(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) for _ in range(2)]
    u = lambda x: scipy.linalg.expm(1j * (x[0] * H[0] + x[1] * H[1]))
    fam2 = ParamFamily(2, lambda x: fam.frame(x) @ u(x))
    x = np.array([0.2, -0.1])
    s1, s2 = evaluate_tensors(fam, x), evaluate_tensors(fam2, x)
    for w in ([1.0, 0.0], [0.3, -0.7]):
        G1 = np.einsum("a,b,abij->ij", w, w, s1.G)
        G2 = np.einsum("a,b,abij->ij", w, w, s2.G)
        assert np.max(np.abs(np.linalg.eigvalsh(G1) - np.linalg.eigvalsh(G2))) < 1e-8
    assert np.max(np.abs(np.linalg.eigvalsh(s1.F[0, 1]) - np.linalg.eigvalsh(s2.F[0, 1]))) < 1e-8
    # Hermitian convention: A' = u^dagger A u + i u^dagger du
    U0 = u(x)
    h = 1e-6
    for a in range(2):
        e = np.zeros(2)
        e[a] = h
        dU = (u(x + e) - u(x - e)) / (2 * h)
        expected = U0.conj().T @ s1.A[a] @ U0 + 1j * U0.conj().T @ dU
        assert np.max(np.abs(s2.A[a] - expected)) < 1e-6


def test_finsler_norm_properties():
    s = evaluate_tensors(random_family(n=7, m=3, seed=6), [0.0, 0.0])
    u = np.array([0.4, -1.1])
    assert finsler_norm(s, [0, 0], 1) == 0.0
    for l in (1, 2, 3):
        assert abs(finsler_norm(s, 2 * u, l) - 2 * finsler_norm(s, u, l)) < 1e-12
    Guu = np.einsum("a,b,abij->ij", u, u, s.G)
    assert abs(finsler_norm(s, u, 1) - np.sqrt(np.trace(Guu).real)) < 1e-12
    with pytest.raises(errors.BadOrder):
        finsler_norm(s, u, 4)
    with pytest.raises(errors.BadOrder):
        finsler_norm(s, u, 0)


def test_finsler_norm_on_geodesic_tangent():
    th = np.array([np.pi / 6, np.pi / 3])
    e = np.eye(5)
    V = Subspace(e[:, :2])
    W = Subspace(np.cos(th) * e[:, :2] + np.sin(th) * e[:, 2:4])
    s = evaluate_tensors(geodesic(V, W).family(), [0.0])
    L1 = np.sqrt(np.sum(th ** 2))
    L2 = np.sum(th ** 4) ** 0.25
    assert abs(finsler_norm(s, [1.0], 1) - L1) < 1e-12
    assert abs(finsler_norm(s, [1.0], 2) - L2) < 1e-12


def test_abelian_reduction():
    s = evaluate_tensors(bloch_family(True), [0.8, 0.1])
    fs, berry = abelian_reduction(s)
    assert np.allclose(fs, s.G[:, :, 0, 0].real, atol=1e-14)
    assert np.allclose(berry, s.F[:, :, 0, 0].real, atol=1e-14)
    s = evaluate_tensors(random_family(seed=7), [0.1, 0.1])
    fs, berry = abelian_reduction(s)
    assert np.max(np.abs(berry + berry.T)) < 1e-8
    assert np.max(np.abs(fs - np.einsum("abii->ab", s.G).real)) < s.fd_tol
    assert np.max(np.abs(berry - np.einsum("abii->ab", s.F).real)) < s.fd_tol


def test_bloch_flux():
    N = 100
    fam = bloch_family(True)
    dt, dp = np.pi / N, 2 * np.pi / N
    flux = sum(
        evaluate_tensors(fam, [(a + 0.5) * dt, (b + 0.5) * dp], check_curvature=False).F[0, 1, 0, 0].real
        for a in range(N) for b in range(N)
    ) * dt * dp
    assert abs(abs(flux) - 2 * np.pi) < 0.01 * 2 * np.pi


def test_step_too_large():
    with pytest.raises(errors.StepTooLarge):
        evaluate_tensors(bloch_family(False), [1.0, 0.3], step=2.5)


def test_non_smooth_frame():
    jump = ParamFamily(1, lambda x: np.array([[1.0], [0.0]]) if x[0] < 0 else np.array([[0.0], [1.0]]))
    with pytest.raises(errors.NonSmoothFrame):
        evaluate_tensors(jump, [0.0])
    sign = ParamFamily(1, lambda x: np.array([[1.0], [0.0]]) * (1 if x[0] < 0 else -1))
    with pytest.raises(errors.NonSmoothFrame):
        evaluate_tensors(sign, [0.0])
