import numpy as np
import pytest

from quillenkit import constructions as cs
from quillenkit import groups as gr
from quillenkit.groups import CayleyTableGroup, Subgroup, load_cayley_table, write_cayley_table

from conftest import CORPUS, small_groups


def test_element_order_examples(e31, c9):
    assert gr.element_order(e31, 0) == 1
    assert set(gr.element_orders(e31, np.arange(1, 27)).tolist()) == {3}
    assert gr.element_order(c9, 1) == 9


def test_closure_examples(e31):
    assert gr.subgroup_closure(e31, []).order == 1
    assert gr.subgroup_closure(e31, [e31.x(1), e31.y(1)]).order == 27
    Z = gr.subgroup_closure(e31, [e31.z])
    assert Z.order == 3 and Z == gr.center(e31)


def test_center_examples(e32, s72):
    ea = cs.elementary_abelian(3, 2)
    assert gr.center(ea) == ea.whole
    assert gr.center(e32).order == 3
    Z = gr.center(s72)
    assert Z.order == 7
    # elementwise scan oracle on generators
    elems = s72.elements()
    comm = np.ones(s72.order, dtype=bool)
    for g in s72.generators:
        comm &= s72.mul(elems, g) == s72.mul(g, elems)
    assert np.array_equal(np.flatnonzero(comm), Z.members)


def test_centralizer_examples(e31, e31_c9):
    assert gr.centralizer(e31, e31.trivial) == e31.whole
    assert gr.centralizer(e31, e31.whole) == gr.center(e31)
    left = e31_c9.image_left()
    right = e31_c9.image_right()
    assert gr.centralizer(e31_c9, left) == right


def test_omega1_examples(c9, e31_c9):
    ea = cs.elementary_abelian(3, 2)
    assert gr.omega1(ea) == ea.whole
    assert gr.omega1(c9).order == 3
    assert gr.omega1(e31_c9) == e31_c9.image_left()


def test_commutator_subgroup_examples(e32, s72):
    ea = cs.elementary_abelian(3, 3)
    assert gr.commutator_subgroup(ea, ea.whole, ea.whole).order == 1
    assert gr.commutator_subgroup(e32, e32.whole, e32.whole) == gr.center(e32)
    Z = gr.center(s72)
    N = gr.subgroup_closure(s72, [s72.z, s72.X.y(1)])
    assert gr.commutator_subgroup(s72, s72.whole, N) == Z


@pytest.mark.parametrize("G", small_groups()[:10], ids=lambda G: str(G.label))
def test_commutator_generators_vs_all_pairs(G):
    W = G.whole
    assert gr.commutator_subgroup(G, W, W) == gr.commutator_subgroup_allpairs(G, W, W)


def test_nilpotence_class_examples(s72):
    assert gr.nilpotence_class(cs.elementary_abelian(3, 2)) == 1
    assert gr.nilpotence_class(cs.extraspecial_exponent_p(5, 1)) == 2
    assert gr.nilpotence_class(s72) <= 5


def test_exponent_examples(c9, s72):
    ea = cs.elementary_abelian(3, 3)
    assert gr.exponent_is_p(ea)
    assert not gr.exponent_is_p(c9)
    assert gr.exponent_is_p(s72)


def test_hall_check(s72):
    assert gr.hall_check(s72)
    assert gr.hall_check(cs.extraspecial_exponent_p(5, 1))
    assert not gr.hall_check(cs.cyclic(3, 2))


def test_classify_examples(e31, c9):
    ea = cs.elementary_abelian(3, 3)
    assert gr.classify(e31) == "extraspecial"
    S = gr.subgroup_closure(ea, [1, 3])
    assert gr.classify(ea, S) == "elementary_abelian"
    assert gr.classify(c9) == "abelian_other"
    assert gr.classify(cs.direct_product(e31, cs.cyclic(3, 1))) == "other"
    with pytest.raises(ValueError):
        gr.classify(e31, e31.trivial)


@pytest.mark.parametrize("G", small_groups(), ids=lambda G: str(G.label))
def test_commutator_identity_ce1(G):
    rng = np.random.default_rng(7)
    u, v, w = rng.integers(0, G.order, size=(3, 100))
    lhs = G.comm(G.mul(u, v), w)
    rhs = G.mul(G.conj(G.comm(u, w), v), G.comm(v, w))
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("G", small_groups(), ids=lambda G: str(G.label))
def test_closure_matches_exhaustive(G):
    rng = np.random.default_rng(3)
    for _ in range(5):
        gens = rng.integers(0, G.order, size=2).tolist()
        S = gr.subgroup_closure(G, gens)
        assert S.is_closed()
        # smallest closed set: every member is a word in the generators, found by BFS over right multiplication
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = G.mul(np.array(frontier)[:, None], np.array(gens)[None, :]).ravel().tolist()
            frontier = [x for x in set(nxt) if x not in seen]
            seen.update(frontier)
        assert sorted(seen) == S.members.tolist()


def test_extraspecial_subgroup_orders():
    G = cs.extraspecial_exponent_p(3, 2)
    for gens in ([G.x(1), G.y(1)], [G.x(1), G.y(1), G.x(2), G.y(2)], [G.x(1), G.y(1), G.x(2)]):
        S = gr.subgroup_closure(G, gens)
        if gr.is_extraspecial(G, S):
            k = round(np.log(S.order) / np.log(3))
            assert k % 2 == 1 and k >= 3


def test_subgroup_lagrange_enforced(e31):
    with pytest.raises(AssertionError):
        Subgroup(e31, [0, 1, 2, 3])


def test_subgroup_equality_by_members(e31):
    A = gr.subgroup_closure(e31, [e31.x(1), e31.z])
    B = gr.subgroup_closure(e31, [e31.mul(e31.x(1), e31.z), e31.z])
    assert A == B and hash(A) == hash(B)
    assert len({A, B}) == 1


def test_cayley_table_roundtrip(tmp_path, e31):
    path = tmp_path / "e31.table"
    write_cayley_table(e31, path)
    T = load_cayley_table(path)
    assert T.order == 27 and T.p == 3
    assert gr.classify(T) == "extraspecial"
    assert np.array_equal(T._table, e31._table)


def test_cayley_table_fixture():
    T = load_cayley_table(CORPUS / "c9_by_c3.table")
    assert T.order == 27
    assert gr.center(T).order == 3
    assert not gr.exponent_is_p(T)
    assert gr.omega1(T).order == 9
    assert gr.classify(T) == "extraspecial"


def test_cayley_table_rejects_bad_tables():
    with pytest.raises(ValueError):
        CayleyTableGroup(np.array([[0, 1], [1, 1]]))
    with pytest.raises(ValueError):
        CayleyTableGroup(np.array([[1, 0], [0, 1]]))
    # a Latin square with identity 0 that is not associative (order 5 loop)
    loop = np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    with pytest.raises(ValueError):
        CayleyTableGroup(loop)
