"""Unitary invariants of configurations of subspaces of C^n.

Subpackages
-----------
subspace     frames, projectors, sampling
pairs        principal angles and Plucker overlaps
triples      principal unitaries, 2SO / 4SP / 3SP, equivalence, counting
tensors      local A, Q, G, F tensors and Finsler norms
geodesics    geodesics, their lengths and directional metrics
holonomy     transport of principal vectors, 3SP from holonomy
gauge_graph  U(1) connections on K_{m,m,m}
cli          command line front end
"""

from .errors import *  # noqa: F401,F403
from .errors import GrassmannError
from .gauge_graph import (
    Loop,
    TripartiteConnection,
    apply_gauge,
    decompose,
    from_triple,
    gauge_equivalent,
    loop_basis,
    wilson_loop,
)
from .geodesics import (
    GeodesicCurve,
    g_direction,
    geodesic,
    geodesic_lengths,
    overlap_traces,
    two_state_overlaps_from_traces,
)
from .holonomy import three_state_phase_via_holonomy, three_state_phases_via_holonomy, transport_phase
from .pairs import (
    PairData,
    angles_via_projectors,
    finsler_lengths,
    plucker_overlap,
    plucker_triple,
    principal_angles,
    principal_decomposition,
)
from .subspace import (
    Configuration,
    Subspace,
    Tolerances,
    orthonormalize,
    projector,
    sample,
    sample_configuration,
    sample_subspace,
    sample_unitary,
    transform,
)
from .tensors import ParamFamily, TensorSample, abelian_reduction, evaluate_tensors, finsler_norm
from .triples import (
    TripleData,
    configs_equivalent,
    invariant_count,
    orbit_codimension_numeric,
    principal_unitaries,
    realize_triple,
    triple_invariants,
)

__version__ = "0.1.0"
