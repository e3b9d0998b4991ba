import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassmann_geometry import errors
from grassmann_geometry.subspace import (
    Configuration,
    Subspace,
    Tolerances,
    orthonormalize,
    polar_frame,
    projector,
    sample,
    sample_configuration,
    sample_subspace,
    sample_unitary,
    transform,
)


def column_space_projector(raw):
    # independent oracle: P = X (X^dagger X)^{-1} X^dagger
    raw = np.asarray(raw, dtype=complex)
    return raw @ np.linalg.solve(raw.conj().T @ raw, raw.conj().T)


def test_orthonormalize_identity_columns_unchanged():
    S = orthonormalize(np.eye(3)[:, :2])
    assert np.allclose(S.frame, np.eye(3)[:, :2], atol=1e-15)


def test_orthonormalize_gram_schmidt_forced():
    raw = np.array([[1, 1], [0, 1], [0, 0]], dtype=complex)
    S = orthonormalize(raw)
    assert np.max(np.abs(S.frame.conj().T @ S.frame - np.eye(2))) < 1e-12
    assert np.allclose(S.projector, np.diag([1, 1, 0]), atol=1e-12)


def test_orthonormalize_duplicated_column():
    raw = np.array([[1, 1], [2, 2], [0, 0]], dtype=complex)
    with pytest.raises(errors.RankDeficient):
        orthonormalize(raw)


def test_orthonormalize_phase_convention(rng):
    raw = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    F = orthonormalize(raw).frame
    idx = np.argmax(np.abs(F), axis=0)
    pivots = F[idx, np.arange(3)]
    assert np.allclose(pivots.imag, 0, atol=1e-15)
    assert np.all(pivots.real > 0)


def test_bad_dimensions():
    with pytest.raises(errors.BadDimensions):
        orthonormalize(np.ones((2, 3)))
    with pytest.raises(errors.BadDimensions):
        Subspace(np.ones((2, 2, 2)))


def test_not_orthonormal():
    with pytest.raises(errors.NotOrthonormal):
        Subspace(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_projector_examples():
    assert np.allclose(projector(Subspace(np.array([1, 0]))), [[1, 0], [0, 0]])
    P = projector(Subspace(np.array([1, 1]) / np.sqrt(2)))
    assert np.allclose(P, 0.5)
    S = sample_subspace(6, 2, seed=7)
    assert abs(np.trace(S.projector) - 2) < 1e-10


def test_projector_properties(rng):
    S = sample_subspace(7, 3, rng)
    P = S.projector
    assert np.allclose(P, P.conj().T, atol=1e-14)
    assert np.allclose(P @ P, P, atol=1e-12)


def test_sample_unitary_and_determinism():
    U = sample("unitary", 3, seed=1)
    assert np.max(np.abs(U @ U.conj().T - np.eye(3))) < 1e-12
    a = sample("subspace", 5, 2, seed=42).frame
    b = sample("subspace", 5, 2, seed=42).frame
    assert np.array_equal(a, b)
    with pytest.raises(ValueError):
        sample("other", 3)


def test_haar_average_overlap():
    # E|<v|w>|^2 = m/n for independent uniform lines
    rng = np.random.default_rng(0)
    vals = []
    for _ in range(10_000):
        v = sample_subspace(4, 1, rng)
        w = sample_subspace(4, 1, rng)
        vals.append(np.real(np.trace(v.projector @ w.projector)))
    assert abs(np.mean(vals) - 0.25) < 0.02


def test_transform_covariance(rng):
    S = sample_subspace(6, 2, rng)
    U = sample_unitary(6, rng)
    assert np.max(np.abs(transform(U, S).projector - U @ S.projector @ U.conj().T)) < 1e-10
    with pytest.raises(errors.DimensionMismatch):
        transform(np.eye(5), S)


def test_configuration_shape_checks(rng):
    a = sample_subspace(5, 2, rng)
    b = sample_subspace(5, 1, rng)
    with pytest.raises(errors.DimensionMismatch):
        Configuration((a, b))
    C = sample_configuration(5, 2, 3, seed=1)
    assert len(C) == 3 and C.labels == ("S0", "S1", "S2")


def test_tolerances_validation():
    with pytest.raises(ValueError):
        Tolerances(eq_tol=0.0)
    t = Tolerances().replace(deg_tol=1e-5)
    assert t.deg_tol == 1e-5 and t.eq_tol == 1e-8


def test_polar_frame_is_orthonormal(rng):
    raw = rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))
    F = polar_frame(raw)
    assert np.allclose(F.conj().T @ F, np.eye(2), atol=1e-14)
    assert np.allclose(F @ F.conj().T, column_space_projector(raw), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 9), data=st.data())
def test_orthonormalize_preserves_span(n, data):
    m = data.draw(st.integers(1, n))
    seed = data.draw(st.integers(0, 2**31 - 1))
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    S = orthonormalize(raw)
    assert np.max(np.abs(S.frame.conj().T @ S.frame - np.eye(m))) < 1e-12
    assert np.max(np.abs(S.projector - column_space_projector(raw))) < 1e-10
    # idempotent up to a rotation within the span
    assert np.max(np.abs(orthonormalize(S.frame).projector - S.projector)) < 1e-10


def test_sample_bitwise_determinism():
    a = sample_configuration(6, 2, 3, seed=99)
    b = sample_configuration(6, 2, 3, seed=99)
    assert all(np.array_equal(x.frame, y.frame) for x, y in zip(a, b))
