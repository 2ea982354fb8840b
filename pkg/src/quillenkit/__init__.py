"""Exact homology of truncated Quillen complexes of finite p-groups.

Groups are integer-indexed with vectorized multiplication oracles;
posets of elementary abelian subgroups are turned into order complexes
whose reduced integral homology is computed by sparse Smith normal form.
"""

__version__ = "0.1.0"

from .constructions import (central_product, corollary3_group, cyclic, direct_product, elementary_abelian,
                            extraspecial_exponent_p, lift_symplectic, semidirect_example)
from .fpalg import FpMatrix, is_symplectic, matrix_order, phi_matrix, standard_symplectic_form
from .groups import CayleyTableGroup, FiniteGroup, Subgroup, load_cayley_table
from .homology import HomologyProfile, TooLarge, order_complex, poset_homology, reduced_homology, smith_normal_form
from .posets import above_z_poset, elem_abelian_poset, espec
from .verify import (predicted_profile, verify_corollary3, verify_equivalence_a2_az, verify_main1,
                     verify_prop_extra, verify_techlem, omega_sets)

__all__ = [
    "FiniteGroup", "Subgroup", "CayleyTableGroup", "load_cayley_table",
    "cyclic", "elementary_abelian", "extraspecial_exponent_p", "central_product", "direct_product",
    "semidirect_example", "corollary3_group", "lift_symplectic",
    "FpMatrix", "phi_matrix", "standard_symplectic_form", "is_symplectic", "matrix_order",
    "elem_abelian_poset", "above_z_poset", "espec",
    "order_complex", "reduced_homology", "poset_homology", "smith_normal_form", "HomologyProfile", "TooLarge",
    "predicted_profile", "verify_main1", "verify_equivalence_a2_az", "verify_prop_extra", "verify_techlem",
    "verify_corollary3", "omega_sets",
]
