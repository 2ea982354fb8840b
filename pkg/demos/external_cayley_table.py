"""
Reading a group from a Cayley table
===================================

Any p-group can be supplied as a multiplication table, for example one
exported from a computer algebra system.  Here the extraspecial group of
order 27 and exponent 9 is read from the shipped corpus.
"""

from pathlib import Path

import quillenkit as qk
from quillenkit import groups as gr
from quillenkit import verify as V

path = Path(__file__).resolve().parents[1] / "corpus" / "c9_by_c3.table"
G = qk.load_cayley_table(path)
print(G, gr.classify(G), "exponent 3:", gr.exponent_is_p(G))

# %%
# Its order-3 elements generate an elementary abelian group of order 9,
# so the truncated poset has one point and no extraspecial subgroup of
# exponent 3 contributes.
print("Omega_1 order", gr.omega1(G).order)
print("E(P) counts", qk.espec(G).counts)
r = V.verify_main1(G)
print("computed", r.computed.betti, "predicted", r.predicted.betti, "match", r.match)
