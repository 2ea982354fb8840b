import pytest

from quillenkit import constructions as cs
from quillenkit import verify as V
from quillenkit.groups import load_cayley_table
from quillenkit.homology import TooLarge
from quillenkit.posets import espec

from conftest import CORPUS


def test_predicted_profile_examples():
    assert V.predicted_profile({1: 1}, 1, 3).betti == {-1: 0, 0: 3, 1: 0}
    assert V.predicted_profile({2: 1}, 1, 3).betti == {-1: 0, 0: 0, 1: 81}
    assert V.predicted_profile({}, 2, 3).is_zero()
    assert V.predicted_profile({}, 0, 3, poset_empty=True).betti == {-1: 1, 0: 0}


def test_main1_examples(e31, e31_c9):
    r = V.verify_main1(e31)
    assert r.match and r.computed.betti[0] == 3
    r = V.verify_main1(cs.elementary_abelian(3, 3))
    assert r.match and r.computed.is_zero()
    r = V.verify_main1(e31_c9)
    assert r.match and r.computed.betti[0] == 3 and r.counts == {1: 1}
    assert any("homology" in n for n in r.notes)


def test_main1_rejects_cyclic():
    with pytest.raises(ValueError):
        V.verify_main1(cs.cyclic(3, 2))


def test_main1_noncyclic_center_is_zero():
    G = cs.direct_product(cs.extraspecial_exponent_p(3, 1), cs.cyclic(3, 1))
    r = V.verify_main1(G)
    assert r.match and r.computed.is_zero() and r.counts == {}


def test_main1_external_table():
    r = V.verify_main1(load_cayley_table(CORPUS / "c9_by_c3.table"))
    assert r.match and r.computed.is_zero()


@pytest.mark.parametrize("G", [cs.extraspecial_exponent_p(3, 1), cs.extraspecial_exponent_p(3, 2),
                               cs.semidirect_example(5, 1)], ids=lambda G: str(G.label))
def test_a2_az_equivalence(G):
    assert V.verify_equivalence_a2_az(G).match


def test_a2_az_cyclic():
    r = V.verify_equivalence_a2_az(cs.cyclic(3, 2))
    assert r.match and r.predicted.betti == {-1: 1}


@pytest.mark.parametrize("p,m,deg,rank", [(3, 1, 0, 3), (3, 2, 1, 81), (5, 1, 0, 5)])
def test_prop_extra(p, m, deg, rank):
    r = V.verify_prop_extra(p, m)
    assert r.match and r.computed.nonzero_degrees() == [deg] and r.computed.rank(deg) == rank


def test_prop_extra_gate():
    with pytest.raises(TooLarge):
        V.verify_prop_extra(7, 3)


def test_techlem_examples(e31, c9):
    r = V.verify_techlem(e31, e31)
    assert r.match and r.computed == {"orders": [243]}
    assert V.verify_techlem(e31, c9).match
    with pytest.raises(ValueError):
        V.verify_techlem(cs.elementary_abelian(3, 1), e31)
    with pytest.raises(ValueError):
        V.verify_techlem(cs.cyclic(3, 2), cs.cyclic(3, 2))


@pytest.mark.parametrize("left,right", [
    (("e", 3, 1), ("c", 3, 2)), (("e", 3, 1), ("e", 3, 1)), (("e", 3, 1), ("c", 3, 3)),
    (("e", 5, 1), ("c", 5, 2)), (("s", 5, 1), ("e", 5, 1)), (("e", 3, 2), ("c", 3, 2)),
])
def test_factorized_espec_matches_direct(left, right):
    make = {"e": cs.extraspecial_exponent_p, "c": cs.cyclic, "s": cs.semidirect_example}
    P = cs.central_product(make[left[0]](*left[1:]), make[right[0]](*right[1:]))
    assert V.espec_counts_central_product(P) == espec(P).counts


def test_convolve_counts():
    assert V.convolve_counts({1: 294, 2: 1}, {1: 1}) == {2: 294, 3: 1}
    assert V.convolve_counts({1: 1}, {0: 1}) == {1: 1}


def test_corollary3_rejects_small_p():
    with pytest.raises(ValueError):
        V.verify_corollary3(5, 0, 1)


@pytest.mark.slow
def test_corollary3_7_1_1_prediction():
    r = V.verify_corollary3(7, 1, 1)
    assert r.match and r.computed is None
    assert r.predicted.nonzero_degrees() == [1, 2]
    assert r.counts == {2: 294, 3: 1}


@pytest.mark.parametrize("G", [cs.extraspecial_exponent_p(3, 1), cs.extraspecial_exponent_p(3, 2),
                               cs.central_product(cs.extraspecial_exponent_p(3, 1), cs.cyclic(3, 2)),
                               cs.central_product(cs.extraspecial_exponent_p(3, 1), cs.cyclic(3, 3)),
                               load_cayley_table(CORPUS / "c9_by_c3.table")],
                         ids=lambda G: str(G.label)[:50])
def test_lemma_suite(G):
    assert V.check_lemma_maxex(G)
    assert V.check_lemma_nea(G)
    assert V.check_lemma_mzsint(G)


def test_omega_examples():
    fam = V.omega_sets(7, 6)
    assert frozenset() in fam
    assert all(frozenset([n]) in fam for n in range(8))
    assert frozenset({1, 2, 3}) in fam
    for n in range(4):
        assert frozenset(range(n, 2 * n + 2)) in fam
    assert V.is_closed_under_sum(fam, 7)
    assert len(fam) == len(set(fam))


def test_omega_rejects_negative():
    with pytest.raises(ValueError):
        V.omega_sets(-1, 2)


def test_report_json(e31):
    doc = V.verify_main1(e31).as_json()
    assert doc["match"] is True and doc["computed"]["betti"]["0"] == 3
