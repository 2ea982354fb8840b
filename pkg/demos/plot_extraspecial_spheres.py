"""
Extraspecial groups and their sphere counts
===========================================

The poset of elementary abelian subgroups of order at least p^2 in an
extraspecial group of order p^(2m+1) has the homology of a wedge of
p^(m^2) spheres of dimension m-1.  We check a few cases by direct
computation.
"""

import quillenkit as qk
from quillenkit.homology import order_complex

# %%
# Build the Heisenberg-type group of order 3^5.  Elements are integers,
# multiplication is a vectorized oracle.
X = qk.extraspecial_exponent_p(3, 2)
print(X, "center order", qk.groups.center(X).order)
print("x1 * y1 =", X.mul(X.x(1), X.y(1)), " commutator [x1, y1] =", X.comm(X.x(1), X.y(1)), "= z")

# %%
# The full poset and the smaller one above the center give the same homology.
full = qk.elem_abelian_poset(X)
above = qk.above_z_poset(X)
print(len(full), "subgroups in A>=2,", len(above), "above Z")
print("f-vector above Z:", order_complex(above).f_vector())
print("reduced Betti numbers:", qk.poset_homology(above).betti)

# %%
# A small table over several primes.
for p, m in [(3, 1), (5, 1), (7, 1), (3, 2)]:
    H = qk.poset_homology(qk.elem_abelian_poset(qk.extraspecial_exponent_p(p, m)))
    print(f"p={p} m={m}: rank {H.rank(m - 1)} in degree {m - 1}, expected {p ** (m * m)}")
