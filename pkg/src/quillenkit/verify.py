"""Executable checks of the structural results: subgroup-count predictions
against directly computed homology, the brute-force lemmas about M_Z(P),
and the split-extension examples.

Homotopy equivalences are checked at the level of reduced homology; for a
wedge of spheres the homology determines the homotopy type.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from . import groups as gr
from .constructions import (CentralProductGroup, central_product, corollary3_group, extraspecial_exponent_p,
                            semidirect_example)
from .groups import FiniteGroup, Subgroup
from .homology import HomologyProfile, TooLarge, poset_homology, DEFAULT_MAX_SIMPLICES
from .posets import (EspecReport, above_z_poset, elem_abelian_poset, espec, intersection, maximal_members,
                     mz_bruteforce, normal_elementary_abelian_p2, omega1_center, BRUTEFORCE_LIMIT)

HOMOLOGY_LEVEL_NOTE = "checked on reduced integral homology, which determines a wedge of spheres up to homotopy"
DEGREE_MINUS_ONE_NOTE = "degree -1 is predicted as Z exactly when A>=2(P) is empty"
PROP_EXTRA_LIMIT = 10 ** 5
COROLLARY3_LIMIT = 7 ** 6


@dataclass
class VerificationReport:
    claim: str
    group: dict
    predicted: object
    computed: object
    match: bool
    timings: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    counts: dict[int, int] | None = None

    def as_json(self) -> dict:
        def enc(x):
            if isinstance(x, HomologyProfile):
                return x.as_json()
            if isinstance(x, dict):
                return {str(k): enc(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [enc(v) for v in x]
            return x
        return {
            "claim": self.claim,
            "group": self.group,
            "predicted": enc(self.predicted),
            "computed": enc(self.computed),
            "match": self.match,
            "notes": list(self.notes),
        }


class _Clock:
    def __init__(self):
        self.timings: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        yield
        self.timings[name] = round((time.perf_counter() - t0) * 1000.0, 3)


def describe(G: FiniteGroup) -> dict:
    return {**G.label, "order": G.order}


def predicted_profile(report: EspecReport | dict[int, int], max_degree: int, p: int | None = None,
                      poset_empty: bool = False) -> HomologyProfile:
    """Ranks ``a_(l+1) p^((l+1)^2)`` in degree ``l``; degree -1 only for an empty poset."""
    if isinstance(report, EspecReport):
        counts, p = report.counts, report.p
    else:
        counts = report
    betti = {-1: 1 if poset_empty else 0}
    for l in range(0, max_degree + 1):
        betti[l] = counts.get(l + 1, 0) * p ** ((l + 1) ** 2)
    return HomologyProfile(betti, {k: [] for k in betti})


def _max_degree(counts: dict[int, int]) -> int:
    return max(counts, default=0)


def _truncated_poset(G: FiniteGroup):
    Z = omega1_center(G)
    if Z.order == G.p:
        return above_z_poset(G, Z), "A>Z"
    return elem_abelian_poset(G), "A>=2"


def verify_main1(G: FiniteGroup, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> VerificationReport:
    """Homology of A>=2(G) against the count of E(G)."""
    if G.p is None or G.p == 2:
        raise ValueError("needs a p-group for an odd prime")
    if gr.is_cyclic(G):
        raise ValueError("G must be noncyclic")
    clock = _Clock()
    with clock.phase("espec"):
        rep = espec(G)
    with clock.phase("poset"):
        poset, which = _truncated_poset(G)
    with clock.phase("homology"):
        computed = poset_homology(poset, max_simplices)
    predicted = predicted_profile(rep, max(computed.betti), poset_empty=len(poset) == 0)
    notes = [HOMOLOGY_LEVEL_NOTE, DEGREE_MINUS_ONE_NOTE, f"computed on {which}"]
    return VerificationReport("main1", describe(G), predicted, computed, predicted.same_as(computed),
                              clock.timings, notes, rep.counts)


def verify_equivalence_a2_az(G: FiniteGroup, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> VerificationReport:
    Z = omega1_center(G)
    if Z.order != G.p:
        raise ValueError("Omega_1(Z(G)) must have order p")
    clock = _Clock()
    with clock.phase("a2"):
        full = poset_homology(elem_abelian_poset(G), max_simplices)
    with clock.phase("az"):
        az = poset_homology(above_z_poset(G, Z), max_simplices)
    return VerificationReport("a2-equiv", describe(G), full, az, full.same_as(az), clock.timings,
                              [HOMOLOGY_LEVEL_NOTE])


def verify_prop_extra(p: int, m: int, max_elements: int = PROP_EXTRA_LIMIT,
                      max_simplices: int = DEFAULT_MAX_SIMPLICES) -> VerificationReport:
    """A>=2 of the extraspecial group of order p^(2m+1) is a wedge of p^(m^2) (m-1)-spheres."""
    if p ** (2 * m + 1) > max_elements:
        raise TooLarge(f"extraspecial group of order {p}^{2 * m + 1} exceeds {max_elements} elements")
    clock = _Clock()
    with clock.phase("construct"):
        X = extraspecial_exponent_p(p, m)
    with clock.phase("poset"):
        poset = elem_abelian_poset(X)
    with clock.phase("homology"):
        computed = poset_homology(poset, max_simplices)
    predicted = HomologyProfile({k: (p ** (m * m) if k == m - 1 else 0) for k in range(-1, m)})
    return VerificationReport("prop-extra", describe(X), predicted, computed, predicted.same_as(computed),
                              clock.timings, [HOMOLOGY_LEVEL_NOTE])


def _factor_family(G: FiniteGroup, Z: Subgroup) -> list[Subgroup]:
    """M*_Z of a factor, or ``[Z]`` when M_Z is empty (the factor's Omega_1 is Z)."""
    fam = maximal_members(mz_bruteforce(G, Z))
    return fam if fam else [Z]


def verify_techlem(G1: FiniteGroup, G2: FiniteGroup, limit: int = BRUTEFORCE_LIMIT) -> VerificationReport:
    """M*_Z of a central product equals the products of the factors' M*_Z members."""
    p = G1.p
    for G in (G1, G2):
        if G.order <= (p or 0):
            raise ValueError("each factor must be larger than the identified center")
    if G1.order * G2.order // p > limit:
        raise TooLarge(f"central product of order {G1.order * G2.order // p} exceeds {limit}")
    if not (gr.exponent_is_p(G1) or gr.exponent_is_p(G2)):
        raise ValueError("at least one factor must have exponent p")
    clock = _Clock()
    with clock.phase("construct"):
        P = central_product(G1, G2)
        Z = P.image_left(omega1_center(G1))
    with clock.phase("bruteforce"):
        lhs = maximal_members(mz_bruteforce(P, Z, limit))
    with clock.phase("factors"):
        F1 = _factor_family(G1, omega1_center(G1))
        F2 = _factor_family(G2, omega1_center(G2))
        rhs = {P.product_subgroup(X1, X2) for X1 in F1 for X2 in F2}
    lhs_keys = {X.key for X in lhs}
    rhs_keys = {X.key for X in rhs}
    computed = sorted(X.order for X in lhs)
    predicted = sorted(X.order for X in rhs)
    notes = ["a factor whose M_Z is empty contributes Z itself"]
    return VerificationReport("techlem", describe(P), {"orders": predicted}, {"orders": computed},
                              lhs_keys == rhs_keys, clock.timings, notes)


def convolve_counts(c1: dict[int, int], c2: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for n1, a1 in c1.items():
        for n2, a2 in c2.items():
            if n1 + n2 >= 1:
                out[n1 + n2] = out.get(n1 + n2, 0) + a1 * a2
    return dict(sorted(out.items()))


def espec_counts_central_product(P: CentralProductGroup) -> dict[int, int]:
    """Counts a_n of a central product from the factors alone.

    E(P1 P2) consists of the products X1 X2 with X_i in E(P_i) (or X_i = Z
    when Omega_1(P_i) = Z, entered with n = 0).  Only valid when both
    factors have cyclic center and one of them has exponent p.
    """
    counts = []
    for G in (P.G1, P.G2):
        Z = omega1_center(G)
        if Z.order != G.p:
            raise ValueError("factor centers must be cyclic")
        c = dict(espec(G).counts)
        if gr.omega1(G) == Z:
            c[0] = 1
        counts.append(c)
    if not (gr.exponent_is_p(P.G1) or gr.exponent_is_p(P.G2)):
        raise ValueError("one factor must have exponent p")
    return convolve_counts(*counts)


def verify_corollary3(p: int, t: int, k: int, max_elements: int = COROLLARY3_LIMIT,
                      max_simplices: int = DEFAULT_MAX_SIMPLICES) -> VerificationReport:
    """Homology concentrated exactly in degrees t and t+k."""
    if p <= 2 * k + 3:
        raise ValueError(f"needs p > 2k+3, got p={p}, k={k}")
    clock = _Clock()
    order = p ** (2 * (t + k + 2))
    notes = [HOMOLOGY_LEVEL_NOTE]
    with clock.phase("construct"):
        P = corollary3_group(p, t, k)
    with clock.phase("espec"):
        if isinstance(P, CentralProductGroup):
            counts = espec_counts_central_product(P)
            notes.append("E(P) counted from the central factors")
        else:
            counts = espec(P).counts
    predicted = predicted_profile(counts, _max_degree(counts), p)
    want = [t, t + k] if k else [t]
    ok = predicted.nonzero_degrees() == want and counts.get(t + k + 1) == 1
    computed = None
    if order <= max_elements and not isinstance(P, CentralProductGroup):
        with clock.phase("poset"):
            poset = above_z_poset(P)
        with clock.phase("homology"):
            computed = poset_homology(poset, max_simplices)
        ok = (ok and predicted.same_as(computed) and computed.nonzero_degrees() == want
              and computed.rank(t + k) == p ** ((t + k + 1) ** 2)
              and computed.rank(0) % p == 0 and computed.rank(0) // p == counts.get(1, 0))
    else:
        notes.append(f"order {p}^{2 * (t + k + 2)} is above the homology limit; prediction only")
    group = {"construct": "corollary3", "p": p, "t": t, "k": k, "order": order}
    return VerificationReport("corollary3", group, predicted, computed, ok, clock.timings, notes, counts)


# -- lemma suite on tiny groups -------------------------------------------------

def _z_and_family(G: FiniteGroup, limit: int):
    Z = omega1_center(G)
    if Z.order != G.p:
        raise ValueError("Z(G) must be cyclic")
    mz = mz_bruteforce(G, Z, limit)
    return Z, mz, maximal_members(mz)


def check_lemma_maxex(G: FiniteGroup, limit: int = BRUTEFORCE_LIMIT) -> bool:
    """Extraspecial X in M_Z is maximal iff Omega_1(C_G(X)) = Z."""
    Z, mz, star = _z_and_family(G, limit)
    star_keys = {X.key for X in star}
    for X in mz:
        if gr.is_extraspecial(G, X):
            if (X.key in star_keys) != (gr.omega1(G, gr.centralizer(G, X)) == Z):
                return False
    return True


def check_lemma_nea(G: FiniteGroup, limit: int = BRUTEFORCE_LIMIT) -> bool:
    """Some normal elementary abelian N of order p^2 lies in every member of M*_Z."""
    _, _, star = _z_and_family(G, limit)
    return any(all(N.issubset(S) for S in star) for N in normal_elementary_abelian_p2(G))


def check_lemma_mzsint(G: FiniteGroup, limit: int = BRUTEFORCE_LIMIT) -> bool:
    """Intersections of two or more members of M*_Z lie in M_Z and are not extraspecial."""
    Z, mz, star = _z_and_family(G, limit)
    mz_keys = {X.key for X in mz}
    inters = {}
    for i, S in enumerate(star):
        for T in star[i + 1:]:
            Y = intersection([S, T])
            inters[Y.key] = Y
    frontier = list(inters.values())
    while frontier:
        nxt = []
        for Y in frontier:
            for S in star:
                W = intersection([Y, S])
                if W.key not in inters:
                    inters[W.key] = W
                    nxt.append(W)
        frontier = nxt
    return all(Y.key in mz_keys and not gr.is_extraspecial(G, Y) for Y in inters.values())


def check_lemma_techlem(G1: FiniteGroup, G2: FiniteGroup, limit: int = BRUTEFORCE_LIMIT) -> bool:
    return verify_techlem(G1, G2, limit).match


# -- the collection Omega -------------------------------------------------------

def omega_sets(max_element: int, depth: int) -> list[frozenset[int]]:
    """Sets generated from those of size <= 2 by ``(I, J) -> 1 + I + J``, within ``[0, max_element]``."""
    if max_element < 0 or depth < 0:
        raise ValueError("bounds must be nonnegative")
    from itertools import combinations
    universe = range(max_element + 1)
    found = {frozenset()}
    found |= {frozenset([i]) for i in universe}
    found |= {frozenset(c) for c in combinations(universe, 2)}
    for _ in range(depth):
        new = set()
        cur = list(found)
        for I in cur:
            for J in cur:
                S = frozenset(1 + i + j for i in I for j in J)
                if S not in found and all(s <= max_element for s in S):
                    new.add(S)
        if not new:
            break
        found |= new
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_closed_under_sum(family, max_element: int) -> bool:
    fam = set(family)
    for I in fam:
        for J in fam:
            S = frozenset(1 + i + j for i in I for j in J)
            if all(s <= max_element for s in S) and S not in fam:
                return False
    return True
