"""Acceptance gate: one pass/fail line per criterion, exact integer equality throughout.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines, or
``python3 tests/test_acceptance.py`` for a plain report.
"""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from quillenkit import cli
from quillenkit import constructions as cs
from quillenkit import groups as gr
from quillenkit import verify as V
from quillenkit.fpalg import FpMatrix, fixed_space, is_symplectic, matrix_order, phi_matrix, standard_symplectic_form
from quillenkit.homology import boundary_matrices, order_complex, poset_homology, reduced_homology, smith_normal_form
from quillenkit.posets import elem_abelian_poset

from conftest import CORPUS, rational_rank

CRITERIA = {}
PROFILES = []   # every homology profile computed by the gate, for the torsion criterion
GROUPS = []     # every group constructed by the gate, for the associativity criterion


def criterion(n, title):
    def deco(fn):
        CRITERIA[n] = (title, fn)
        return fn
    return deco


def _keep(G):
    GROUPS.append(G)
    return G


def _homology(poset):
    prof = poset_homology(poset)
    PROFILES.append(prof)
    return prof


@criterion(1, "extraspecial A>=2 is a wedge of p^(m^2) spheres of dimension m-1")
def c01():
    details, ok = [], True
    for p, m in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]:
        X = _keep(cs.extraspecial_exponent_p(p, m))
        prof = _homology(elem_abelian_poset(X))
        want = {k: (p ** (m * m) if k == m - 1 else 0) for k in range(-1, m)}
        good = prof.betti == want and prof.is_torsion_free()
        ok &= good
        details.append(f"({p},{m}):{prof.rank(m - 1)}@{m - 1}")
    return ok, " ".join(details)


@criterion(2, "cyclic groups give the (-1)-sphere")
def c02():
    ok = True
    for p, n in [(3, 1), (3, 2), (5, 1)]:
        prof = _homology(elem_abelian_poset(_keep(cs.cyclic(p, n))))
        ok &= prof.betti == {-1: 1} and prof.is_torsion_free()
    return ok, "H_-1 = Z only"


@criterion(3, "contractible cases have zero reduced homology")
def c03():
    groups = [cs.elementary_abelian(3, 2), cs.elementary_abelian(3, 3),
              cs.direct_product(cs.extraspecial_exponent_p(3, 1), cs.cyclic(3, 1)),
              cs.direct_product(cs.extraspecial_exponent_p(3, 1), cs.cyclic(3, 2)),
              cs.direct_product(cs.cyclic(3, 2), cs.cyclic(3, 1))]
    ok = True
    for G in groups:
        _keep(G)
        assert gr.omega1(G, gr.center(G)).order > G.p
        ok &= _homology(elem_abelian_poset(G)).is_zero()
    return ok, f"{len(groups)} groups"


@criterion(4, "predicted profile from E(P) equals direct homology on the corpus (order <= 5^5)")
def c04():
    n, ok = 0, True
    for f in sorted(CORPUS.glob("*.json")):
        spec, base = cli.parse_spec(str(f))
        if cli.spec_order(spec, base) > 5 ** 5:
            continue
        G = _keep(cli.build_group(spec, base))
        r = V.verify_main1(G)
        PROFILES.append(r.computed)
        ok &= r.match
        n += 1
    return ok and n >= 12, f"{n} groups"


@criterion(5, "order 7^6 split extension: homology exactly in degrees {0,1}, H_1 = Z^2401, H_0 = Z^(7 a_1)")
def c05():
    t0 = time.perf_counter()
    r = V.verify_corollary3(7, 0, 1)
    H = r.computed
    PROFILES.append(H)
    a1 = r.counts.get(1, 0)
    ok = (r.match and H.nonzero_degrees() == [0, 1] and H.rank(1) == 2401
          and H.rank(0) % 7 == 0 and H.rank(0) // 7 == a1 and H.is_torsion_free())
    return ok, f"H0={H.rank(0)} H1={H.rank(1)} a1={a1} a2={r.counts.get(2, 0)} in {time.perf_counter() - t0:.0f}s"


@criterion(6, "phi is symplectic, unipotent of index <= 2m, of order p, fixing exactly <y_1>")
def c06():
    ok = True
    for p, m in [(3, 1), (5, 1), (5, 2), (7, 2), (7, 3), (11, 4)]:
        M, S = phi_matrix(p, m), standard_symplectic_form(p, m)
        fs = fixed_space(M)
        ok &= is_symplectic(M, S)
        ok &= ((M - FpMatrix.identity(2 * m, p)) ** (2 * m)).is_zero()
        ok &= p <= 2 * m or matrix_order(M, p) == p
        ok &= len(fs) == 1 and np.array_equal(fs[0], S.y(1))
    return ok, "6 (p,m) pairs"


@criterion(7, "lifted automorphism has order exactly p and induces phi")
def c07():
    ok, notes = True, []
    for p, m in [(3, 1), (5, 2), (7, 2)]:
        X = _keep(cs.extraspecial_exponent_p(p, m))
        M = phi_matrix(p, m)
        alpha = cs.lift_symplectic(p, m, M, X)
        a = X.elements()
        img, cur = alpha.apply(X, a), a
        hom = np.array_equal(alpha.apply(X, X.mul(a[:300, None], a[None, :])),
                             X.mul(img[:300, None], img[None, :]))
        orbit_ok = True
        for k in range(1, p + 1):
            cur = alpha.apply(X, cur)
            if (k < p) == np.array_equal(cur, a):
                orbit_ok = False
        basis = [X.x(i) for i in range(1, m + 1)] + [X.y(i) for i in range(1, m + 1)]
        v, _ = X.split(alpha.apply(X, np.array(basis)))
        ok &= hom and orbit_ok and np.array_equal(v, M.data) and cs.is_homomorphism(alpha, X)
        notes.append(f"({p},{m}) corr={''.join(map(str, alpha.corr))}")
    return ok, " ".join(notes)


@criterion(8, "M_Z lemmas (maximality, common normal N, intersections, central-product decomposition) at order <= 3^5")
def c08():
    e31 = cs.extraspecial_exponent_p(3, 1)
    groups = [e31, cs.extraspecial_exponent_p(3, 2), cs.central_product(e31, cs.cyclic(3, 2)),
              cs.central_product(e31, cs.cyclic(3, 3)), cs.central_product(e31, e31),
              gr.load_cayley_table(CORPUS / "c9_by_c3.table")]
    ok = True
    for G in groups:
        _keep(G)
        ok &= V.check_lemma_maxex(G) and V.check_lemma_nea(G) and V.check_lemma_mzsint(G)
    pairs = [(e31, e31), (e31, cs.cyclic(3, 2)), (e31, cs.cyclic(3, 3))]
    for G1, G2 in pairs:
        ok &= V.verify_techlem(G1, G2).match
    return ok, f"{len(groups)} groups, {len(pairs)} central products"


@criterion(9, "every computed homology group is torsion-free")
def c09():
    if not PROFILES:
        for f in sorted(CORPUS.glob("*.json")):
            spec, base = cli.parse_spec(str(f))
            _homology(elem_abelian_poset(cli.build_group(spec, base)))
    bad = [p.torsion for p in PROFILES if not p.is_torsion_free()]
    return not bad and bool(PROFILES), f"{len(PROFILES)} profiles, {len(bad)} with torsion"


@criterion(10, "oracles: SNF rank vs rational rank, boundary composites, Euler identity, associativity")
def c10():
    rng = np.random.default_rng(10)
    ok = True
    for _ in range(200):
        r, c = rng.integers(1, 41, size=2)
        a = rng.integers(-3, 4, size=(r, c)) * (rng.random((r, c)) < 0.15)
        ok &= smith_normal_form(a)[1] == rational_rank(a)
    n_cx = 0
    for f in sorted(CORPUS.glob("*.json")):
        spec, base = cli.parse_spec(str(f))
        C = order_complex(elem_abelian_poset(cli.build_group(spec, base)))
        mats = boundary_matrices(C, check=False)
        for lo, hi in zip(mats, mats[1:]):
            ok &= (lo.to_scipy() @ hi.to_scipy()).count_nonzero() == 0
        H = reduced_homology(C)
        ok &= H.euler() == C.euler_reduced()
        n_cx += 1
    for G in GROUPS or [cs.semidirect_example(7, 2)]:
        gr.check_group_axioms(G, samples=1000, seed=99)
    return ok, f"200 matrices, {n_cx} complexes, {len(GROUPS)} groups"


@criterion(11, "Omega sets: empty set, small sets, intervals {n..2n+1}, closure under 1+I+J")
def c11():
    fam = V.omega_sets(7, 8)
    s = set(fam)
    from itertools import combinations
    small = {frozenset(c) for k in range(3) for c in combinations(range(8), k)}
    ok = frozenset() in s and small <= s
    ok &= all(frozenset(range(n, 2 * n + 2)) in s for n in range(4))
    ok &= V.is_closed_under_sum(fam, 7)
    return ok, f"{len(fam)} sets"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    title, fn = CRITERIA[n]
    t0 = time.perf_counter()
    ok, detail = fn()
    line = f"CRITERION {n:2d} {'PASS' if ok else 'FAIL'}  {title}  [{detail}; {time.perf_counter() - t0:.1f}s]"
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        title, fn = CRITERIA[n]
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as e:  # report, keep going
            ok, detail = False, f"{type(e).__name__}: {e}"
        failed += not ok
        print(f"CRITERION {n:2d} {'PASS' if ok else 'FAIL'}  {title}  [{detail}; {time.perf_counter() - t0:.1f}s]",
              flush=True)
    sys.exit(1 if failed else 0)
