"""
Degree sets
===========

Starting from sets of at most two integers and closing under
(I, J) -> 1 + I + J gives the collection of degree sets that the
construction can reach.  Intervals {n, ..., 2n+1} appear early.
"""

from quillenkit import verify as V

fam = V.omega_sets(7, 8)
print(len(fam), "sets inside [0, 7]")
for n in range(4):
    print(sorted(range(n, 2 * n + 2)), frozenset(range(n, 2 * n + 2)) in fam)
print("closed:", V.is_closed_under_sum(fam, 7))
print("largest:", [sorted(s) for s in fam if len(s) == max(map(len, fam))])
