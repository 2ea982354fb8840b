"""
Counting through a central product
==================================

Extraspecial subgroups with small centralizer in a central product are
products of such subgroups in the factors, so the counts a_n convolve.
That lets us predict the homology of a group of order 7^8 without
enumerating its subgroups.
"""

import quillenkit as qk
from quillenkit import verify as V

# %%
# Small cases where both routes are cheap.
for left, right in [((3, 1), 2), ((5, 1), 2)]:
    p = left[0]
    P = qk.central_product(qk.extraspecial_exponent_p(*left), qk.cyclic(p, right))
    print(P.order, "factorized", V.espec_counts_central_product(P), "direct", qk.espec(P).counts)

# %%
# The order 7^8 example: prediction only.
r = V.verify_corollary3(7, 1, 1)
print("counts", r.counts)
print("predicted Betti numbers", r.predicted.betti)
print("nonzero degrees", r.predicted.nonzero_degrees(), "match", r.match)
