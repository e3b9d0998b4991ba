"""Shortest paths between subspaces and what the metric sees along them."""

import numpy as np

from grassmann_geometry.geodesics import (
    g_direction,
    geodesic,
    geodesic_lengths,
    path_lengths,
    two_state_overlaps_from_traces,
)
from grassmann_geometry.subspace import polar_frame, sample_subspace
from grassmann_geometry.triples import triple_invariants

rng = np.random.default_rng(5)
V, W, U = (sample_subspace(8, 2, rng) for _ in range(3))
curve = geodesic(V, W)
print("angles:", curve.theta)

# Lengths from the angles vs integrating the Finsler norms along the curve.
print("closed form:", geodesic_lengths(V, W))
for steps in (250, 500, 1000):
    err = geodesic_lengths(V, W, "numeric", steps) - geodesic_lengths(V, W)
    print(f"  steps {steps:4d}  error {np.abs(err).max():.3e}")

# Any bumped path with the same ends is longer.
Z = 0.02 * (rng.standard_normal((8, 2)) + 1j * rng.standard_normal((8, 2)))
bumped = lambda t: polar_frame(curve.frame(t) + np.sin(np.pi * t) * Z)
print("geodesic:", path_lengths(curve.frame, 400, [1, 2]), " bumped:", path_lengths(bumped, 400, [1, 2]))

# The metric in the direction of W has eigenvalues theta^2.
g = g_direction(V, W)
print("eigenvalues of G(V->W):", g.eigenvalues, " theta^2:", curve.theta ** 2)

# Overlap data of a triple recovered from traces of projected metrics.
print("2SO from traces:\n", two_state_overlaps_from_traces(V, W, U))
print("2SO direct:\n", triple_invariants(V, W, U).two_state_overlaps[0])
