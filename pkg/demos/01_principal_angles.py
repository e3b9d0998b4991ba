"""Principal angles of two subspaces, computed two ways, and the lengths they give."""

import numpy as np

from grassmann_geometry import errors
from grassmann_geometry.pairs import angles_via_projectors, plucker_overlap, principal_decomposition
from grassmann_geometry.geodesics import g_direction, geodesic_lengths
from grassmann_geometry.subspace import Subspace, sample_subspace

# Two planes in C^4 that share e2 and tilt e1 toward e3 by 45 degrees.
e = np.eye(4)
V = Subspace(e[:, :2])
W = Subspace(np.stack([(e[0] + e[2]) / np.sqrt(2), e[1]], axis=1))
pd = principal_decomposition(V, W)
print("angles (rad):", pd.theta)
print("angles (deg):", np.degrees(pd.theta))

# The squared cosines are also the spectrum of P_V P_W P_V restricted to V.
print("cos^2 from SVD:       ", np.sort(pd.cosines ** 2))
print("cos^2 from projectors:", np.sort(angles_via_projectors(V, W)))

# |det <v_i|w_j>| is the product of cosines.
print("|Pluecker overlap| =", abs(plucker_overlap(V, W)), " prod cos =", np.prod(pd.cosines))

# One length per order l: (sum theta^(2l))^(1/(2l)).
rng = np.random.default_rng(0)
A, B = sample_subspace(8, 3, rng), sample_subspace(8, 3, rng)
print("random (8, 3) pair, lengths L1..L3:", geodesic_lengths(A, B))

# Principal vectors are not unique when angles coincide; asking for them is refused.
try:
    g_direction(Subspace(e[:, :2]), Subspace((e[:, :2] + e[:, 2:]) / np.sqrt(2)))
except errors.DegenerateAngles as exc:
    print("refused:", exc)
