"""
A split extension of order 7^6
==============================

A unipotent symplectic map with one-dimensional fixed space lifts to an
automorphism of order 7 of the extraspecial group of order 7^5.  The
resulting split extension has exponent 7 and cyclic center, and its
truncated complex has homology in two degrees.  Takes about half a minute.
"""

import time

import quillenkit as qk
from quillenkit import groups as gr
from quillenkit.fpalg import fixed_space, matrix_order

# %%
# The linear map and its lift.
M = qk.phi_matrix(7, 2)
print(M.data)
print("order", matrix_order(M, 7), "fixed space", [v.tolist() for v in fixed_space(M)])

P = qk.semidirect_example(7, 2)
print(P, "lift correction", P.alpha.corr)
print("exponent 7:", gr.exponent_is_p(P), " class:", gr.nilpotence_class(P), " |Z| =", gr.center(P).order)

# %%
# Two independent routes: count the extraspecial subgroups with small
# centralizer, then compute the homology of the poset above Z directly.
t0 = time.perf_counter()
E = qk.espec(P)
print("a_n:", E.counts, f"({time.perf_counter() - t0:.0f}s)")

t0 = time.perf_counter()
H = qk.poset_homology(qk.above_z_poset(P))
print("Betti numbers:", H.betti, f"({time.perf_counter() - t0:.0f}s)")
print("H_0 / 7 =", H.rank(0) // 7, " H_1 =", H.rank(1), "= 7^4")
