"""Three-state phases as phases picked up by transporting principal vectors."""

import time

import numpy as np

from grassmann_geometry.holonomy import three_state_phases_via_holonomy, transport_phase
from grassmann_geometry.subspace import Subspace, sample_subspace
from grassmann_geometry.triples import phase_distance, triple_invariants

# |0>, |+>, |+i>: the phase of <0|+><+|+i><+i|0> is pi/4.
kets = [np.array(v, dtype=complex) / np.linalg.norm(v) for v in ([1, 0], [1, 1], [1, 1j])]
print("Bloch triangle:", three_state_phases_via_holonomy(*(Subspace(k) for k in kets), steps=200)[0, 0, 0],
      " pi/4 =", np.pi / 4)

rng = np.random.default_rng(8)
V, W, U = (sample_subspace(9, 2, rng) for _ in range(3))
t0 = time.perf_counter()
h = three_state_phases_via_holonomy(V, W, U, steps=2000, randomize_phases=rng)
print(f"holonomy route ({time.perf_counter() - t0:.2f}s):\n", h)
print("max deviation from the direct route:",
      np.max(phase_distance(h, triple_invariants(V, W, U).three_state_phases)))

# Re-gauging the transported vector by exp(i pi t^2) shifts the phase by pi; the
# connection integral converges at second order.
for steps in (50, 100, 200):
    r = transport_phase(V, W, 0, steps, gauge=lambda t: np.pi * t ** 2, method="connection")
    print(f"  steps {steps:3d}  error {phase_distance(r.phase, np.pi):.3e}")
