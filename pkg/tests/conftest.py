import numpy as np
import pytest

from grassmann_geometry.subspace import Subspace, orthonormalize, sample_subspace


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_triple(n, m, seed):
    rng = np.random.default_rng(seed)
    return tuple(sample_subspace(n, m, rng) for _ in range(3))


def ket(*entries):
    return Subspace(np.array(entries, dtype=complex)[:, None] / np.linalg.norm(entries))


def bloch_triangle():
    """|0>, |+>, |+i> in C^2."""
    return ket(1, 0), ket(1, 1), ket(1, 1j)


def c4_pair():
    """span{e1, e2} and span{(e1 + e3)/sqrt2, e2}: angles {0, pi/4}."""
    e = np.eye(4)
    V = Subspace(e[:, :2])
    W = orthonormalize(np.stack([(e[0] + e[2]) / np.sqrt(2), e[1]], axis=1))
    return V, W
