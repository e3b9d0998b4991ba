"""Connection, metric and curvature of a smooth family of subspaces."""

import numpy as np

from grassmann_geometry.tensors import (
    abelian_reduction,
    bloch_family,
    evaluate_tensors,
    finsler_norm,
    interpolation_family,
)
from grassmann_geometry.subspace import sample_subspace

# Single qubit on the Bloch sphere: metric diag(1/4, sin^2/4), curvature -sin/2.
fam = bloch_family()
s = evaluate_tensors(fam, [np.pi / 3, 0.4])
print("G (Bloch):\n", s.G[:, :, 0, 0].real)
print("F_theta,phi:", s.F[0, 1, 0, 0].real, " expected", -np.sin(np.pi / 3) / 2)

# Total flux through the sphere on a coarse midpoint grid.
N = 60
dt, dp = np.pi / N, 2 * np.pi / N
flux = sum(
    evaluate_tensors(fam, [(a + 0.5) * dt, (b + 0.5) * dp], check_curvature=False).F[0, 1, 0, 0].real
    for a in range(N) for b in range(N)
) * dt * dp
print("flux / 2pi:", flux / (2 * np.pi))

# A two-parameter family of planes in C^6 with finite-difference derivatives.
rng = np.random.default_rng(3)
frames = [sample_subspace(6, 2, rng).frame for _ in range(3)]
fam = interpolation_family(frames)
s = evaluate_tensors(fam, [0.1, -0.2])
print("curvature from A vs from Q: residual", s.curvature_residual, "within", s.fd_tol)
fs, berry = abelian_reduction(s)
print("trace metric:\n", fs)
print("trace curvature:\n", berry)
u = np.array([1.0, 0.5])
print("Finsler norms of u for l = 1, 2:", [finsler_norm(s, u, l) for l in (1, 2)])
