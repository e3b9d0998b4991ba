"""Invariants of three subspaces, and deciding when two triples are unitarily equivalent."""

import numpy as np

from grassmann_geometry.subspace import Configuration, sample_configuration, sample_unitary
from grassmann_geometry.triples import configs_equivalent, invariant_count, realize_triple, triple_invariants

C = sample_configuration(7, 2, 3, seed=11)
td = triple_invariants(*C)
print("angles VW, WU, UV:")
for a in td.angles:
    print("   ", a)
print("two-state overlaps seen from V:\n", td.two_state_overlaps[0])
print("three-state phases phi[i, j, k]:\n", td.three_state_phases)
print("projector cross-check residual:", td.projector_route_residual)

# Rotating the whole configuration changes nothing.
G = sample_unitary(7, seed=12)
res = configs_equivalent(C, C.transformed(G))
print("rotated copy equivalent:", res.equivalent, " witness error:", res.witness_error)

# Rebuild a triple from its invariants alone, then nudge a single phase.
again = Configuration(realize_triple(*td.angles, *td.unitaries, n=7))
print("rebuilt from invariants equivalent:", configs_equivalent(C, again).equivalent)
Vmat, Wmat, Umat = td.unitaries
nudged = Wmat @ np.diag([np.exp(0.01j), 1.0])
other = Configuration(realize_triple(*td.angles, Vmat, nudged, Umat, n=7))
res = configs_equivalent(C, other)
print("phase-nudged triple equivalent:", res.equivalent, "-", res.reason)

print("independent invariants of l generic m-planes:")
for m in (1, 2, 3):
    print("   m =", m, [invariant_count(m, l) for l in (2, 3, 4)])
