"""Three-state phases as a U(1) gauge field on the complete tripartite graph."""

import numpy as np

from grassmann_geometry.gauge_graph import (
    Loop,
    apply_gauge,
    decompose,
    from_triple,
    gauge_equivalent,
    loop_basis,
    random_gauge,
    tree_gauge,
    wilson_loop,
)
from grassmann_geometry.subspace import sample_configuration
from grassmann_geometry.triples import triple_invariants, wrap_phase

C = sample_configuration(9, 3, 3, seed=4)
conn = from_triple(*C)
tsp = triple_invariants(*C).three_state_phases
print("triangle (0,1),(1,2),(2,0):", wilson_loop(conn, Loop(((0, 1), (1, 2), (2, 0)))), " 3SP:", tsp[1, 2, 0])

# Circulations do not see gauge transformations.
long_loop = Loop(((0, 0), (1, 1), (2, 2), (0, 1), (2, 0), (1, 2)))
g = apply_gauge(conn, *random_gauge(3, seed=1))
print("long loop before/after gauge:", wilson_loop(conn, long_loop), wilson_loop(g, long_loop))

# Every loop is an integer combination of 3m^2 - 3m + 1 basis loops.
coeffs, basis = decompose(long_loop, 3)
print(len(basis), "basis loops; coefficients", coeffs)
print("recombined:", wrap_phase(sum(c * wilson_loop(conn, b) for c, b in zip(coeffs, basis))))

# Fixing the spanning-tree edges to zero decides gauge equivalence edge by edge.
_, fixed = tree_gauge(conn)
print("tree-gauged phi1 row 0:", fixed.phi1[0])
print("equivalent to gauged copy:", gauge_equivalent(conn, g).equivalent)
print("basis circulations:", np.round([wilson_loop(conn, b) for b in loop_basis(3)], 4))
