import pytest
from hypothesis import given, settings, strategies as st

from conftest import qmax, ring
from oracles import is_dense as dense_oracle, is_essential as essential_oracle, right_ideals
from quotlab.ideals import (GabrielFilter, check_gabriel_axioms, classify_right_ideal, colon,
                            enumerate_right_ideals, filter_of_extension, ideal_generated,
                            lambek_filter, left_annihilator, minimal_dense_ideal, torsion_elements,
                            trivial_filter)
from quotlab.modules import Submodule, is_nonsingular, regular_module
from quotlab.rings import RingEmbedding, identity_embedding

RINGS = ["F_2", "F_3", "Z/4", "Z/6", "Z/8", "F_2 x F_2", "F_2 x F_3", "M2(F_2)", "T2(F_2)",
         "T2(F_3)", "F_2[x]/(x^2)", "F_2[x]/(x^3)", "F_2[C_2]", "F_3[C_3]", "Z/4[x]/(x^2)",
         "Path(F_2; 3; a:1->2, b:2->3; a*b)", "Path(F_2; 3; a:1->2, b:2->3)"]


def z(expr, *coords):
    R = ring(expr)
    return R.index_of(list(coords))


# ---------------------------------------------------------------- lattice

def test_z4_ideals():
    R = ring("Z/4")
    got = [sorted(I.elements) for I in enumerate_right_ideals(R)]
    assert got == [[0], [0, 2], [0, 1, 2, 3]]


def test_f2xf2_ideals():
    assert len(enumerate_right_ideals(ring("F_2 x F_2"))) == 4


def test_t2f2_ideal_count():
    R = ring("T2(F_2)")
    got = {I.elements for I in enumerate_right_ideals(R)}
    assert got == right_ideals(R)
    assert len(got) == 7


@pytest.mark.parametrize("expr", RINGS[:-1])
def test_lattice_matches_closure_search(expr):
    R = ring(expr)
    L = enumerate_right_ideals(R)
    got = {I.elements for I in L}
    assert len(got) == len(L)
    assert got == right_ideals(R)
    M = R.mul_table
    for I in L:
        assert all(M[x, r] in I.elements for x in I.elements for r in range(R.order))


# ---------------------------------------------------------------- colon

def test_colon_in_z4():
    R = ring("Z/4")
    zero = ideal_generated(R, [])
    assert colon(zero, 2).elements == {0, 2}


def test_colon_of_member_is_whole():
    R = ring("T2(F_2)")
    for I in enumerate_right_ideals(R):
        for m in I.elements:
            assert colon(I, m).is_whole


def test_colon_of_submodule_agrees_with_ideal_form():
    R = ring("T2(F_2)")
    RR = regular_module(R)
    for I in enumerate_right_ideals(R):
        N = Submodule(RR, I.elements)
        for m in range(R.order):
            assert colon(N, m).elements == colon(I, m).elements


def test_quotient_colons_in_t2_are_dense():
    qm = qmax("T2(F_2)")
    R = qm.base
    outside = [q for q in range(qm.carrier.order) if q not in qm.base_image]
    assert outside
    for q in outside:
        C = qm.colon(q)
        assert len(C) < R.order
        assert dense_oracle(R, C)


# ---------------------------------------------------------------- dense / essential

def test_classification_z4():
    R = ring("Z/4")
    flags = {len(I): classify_right_ideal(I) for I in enumerate_right_ideals(R)}
    assert flags[4].dense and flags[4].essential
    assert flags[2].essential and not flags[2].dense
    assert not flags[1].dense and not flags[1].essential


@pytest.mark.parametrize("expr", RINGS)
def test_flags_match_oracles(expr):
    R = ring(expr)
    L = enumerate_right_ideals(R)
    lattice = [I.elements for I in L]
    for I in L:
        assert I.dense == dense_oracle(R, I.elements)
        assert I.essential == essential_oracle(R, I.elements, lattice)
        assert not I.dense or I.essential
    if is_nonsingular(regular_module(R)):
        assert all(I.dense == I.essential for I in L)


def test_t2_dense_iff_essential():
    L = enumerate_right_ideals(ring("T2(F_2)"))
    assert all(I.dense == I.essential for I in L)
    assert sum(I.dense for I in L) == 2


@pytest.mark.parametrize("expr", ["Z/4", "F_2 x F_2"])
def test_minimal_dense_is_whole_ring(expr):
    R = ring(expr)
    assert minimal_dense_ideal(R).is_whole


def test_minimal_dense_ideal_of_t2_is_proper():
    R = ring("T2(F_2)")
    D = minimal_dense_ideal(R)
    assert len(D) < 8 and D.dense
    assert all(D <= I for I in enumerate_right_ideals(R) if I.dense)


@pytest.mark.parametrize("expr", RINGS)
def test_minimal_dense_has_zero_left_annihilator(expr):
    R = ring(expr)
    assert left_annihilator(R, minimal_dense_ideal(R).elements) == {0}


# ---------------------------------------------------------------- filters

def _oracle_axioms(R, members):
    """Upward closure, meets, (I : r) stability and gluing, straight from the definitions."""
    lattice = right_ideals(R)
    M = R.mul_table

    def col(I, r):
        return frozenset(s for s in range(R.order) if M[r, s] in I)

    if not members:
        return False
    for I in members:
        if any(I <= J and J not in members for J in lattice):
            return False
        if any(I & J not in members for J in members):
            return False
        if any(col(I, r) not in members for r in range(R.order)):
            return False
    for J in lattice:
        if J in members:
            continue
        for I in members:
            if all(col(J, i) in members for i in I):
                return False
    return True


@pytest.mark.parametrize("expr", RINGS)
def test_lambek_filter_is_gabriel(expr):
    F = lambek_filter(ring(expr))
    assert check_gabriel_axioms(F).ok


def test_zero_and_whole_in_z4_is_not_a_filter():
    R = ring("Z/4")
    F = GabrielFilter(R, frozenset({frozenset({0}), R.all_elements}))
    res = check_gabriel_axioms(F)
    assert not res.ok
    assert res.failed("T1")
    assert not _oracle_axioms(R, F.members)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(["Z/4", "Z/8", "F_2 x F_2", "T2(F_2)", "F_2[x]/(x^3)", "Z/6",
                        "F_2 x F_2 x F_2"]), st.data())
def test_axiom_check_matches_oracle(expr, data):
    R = ring(expr)
    lattice = [I.elements for I in enumerate_right_ideals(R)]
    gens = data.draw(st.lists(st.sampled_from(lattice), min_size=1, max_size=3))
    upward = data.draw(st.booleans())
    if upward:
        members = frozenset(J for J in lattice if any(I <= J for I in gens))
    else:
        members = frozenset(gens)
    F = GabrielFilter(R, members)
    assert check_gabriel_axioms(F).ok == _oracle_axioms(R, members)
    assert check_gabriel_axioms(F, stop_at_first=True).ok == _oracle_axioms(R, members)


def test_trivial_extension_filter():
    for expr in ["F_2", "Z/4"]:
        R = ring(expr)
        assert filter_of_extension(identity_embedding(R)) == trivial_filter(R)


def test_filter_of_t2_in_m2():
    qm = qmax("T2(F_2)")
    F = filter_of_extension(qm.lam)
    assert qm.D.elements in F.members and qm.base.all_elements in F.members
    assert check_gabriel_axioms(F).ok


@pytest.mark.parametrize("expr", ["T2(F_2)", "T2(F_3)", "Path(F_2; 3; a:1->2, b:2->3; a*b)",
                                  "Z/4", "F_2[x]/(x^2)", "M2(F_2)"])
def test_flat_extension_filters_sit_inside_lambek(expr):
    qm = qmax(expr)
    L = lambek_filter(qm.base)
    for T in qm.intermediate_subrings():
        if qm.is_flat_left(T):
            assert qm.filter_of(T) <= L


def test_filter_basis_and_minimum():
    F = lambek_filter(ring("T2(F_2)"))
    assert len(F.basis) == 1
    assert F.minimum == minimal_dense_ideal(ring("T2(F_2)"))


def test_torsion_elements_of_regular_module_under_lambek():
    for expr in RINGS:
        R = ring(expr)
        assert torsion_elements(regular_module(R), lambek_filter(R)) == {0}
