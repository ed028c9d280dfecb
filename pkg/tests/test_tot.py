import pytest

from conftest import CORPUS, qmax, ring
from oracles import subrings_between
from quotlab.errors import FlatnessFailure, PreconditionFailure
from quotlab.quotients import build_qmax, is_perfect_filter
from quotlab.rings import RingEmbedding, identity_embedding, is_subring_set
from quotlab.tot import (brute_force_qtot, condition_report, is_right_semihereditary,
                         morita_chain, morita_prime, perfect_family, qtot_shortcut,
                         simplified_chain)
from quotlab.verify import verify_suite

GAMMA_ONE = "Path(F_2; 3; a:1->2, b:1->2, c:2->3; a*c)"
CHAIN_RINGS = ["F_2", "Z/4", "F_2 x F_2", "M2(F_2)", "T2(F_2)", "T2(F_3)", "F_2[x]/(x^2)",
               "Path(F_2; 3; a:1->2, b:2->3; a*b)", "T2(Z/4)", "T3(F_2)",
               "Path(F_2; 3; a:1->2, b:2->3)"]


# ---------------------------------------------------------------- Morita step

def test_morita_prime_of_identity():
    R = ring("T2(F_2)")
    assert morita_prime(identity_embedding(R)).elements == R.all_elements


def test_morita_prime_fixes_m2_over_t2():
    qm = qmax("T2(F_2)")
    assert morita_prime(qm.lam) == qm.top


def test_morita_prime_of_diagonal_is_the_diagonal():
    S = ring("F_2 x F_2")
    emb = RingEmbedding(ring("F_2"), S, ((1, 1),)).validate()
    assert morita_prime(emb).elements == emb.image


def _brute_morita_prime(qm, T):
    """S' by the literal definition: for all r, the ideal (R : s r) generates T."""
    Q = qm.carrier
    lam = [int(x) for x in qm.lam.map]
    inR = qm.base_image
    out = set()
    for s in T.elements:
        good = True
        for r in lam:
            x = int(Q.mul_table[s, r])
            I = [a for a, la in enumerate(lam) if Q.mul_table[x, la] in inR]
            span = {0}
            prods = {int(Q.mul_table[lam[i], t]) for i in I for t in T.elements}
            while True:
                new = {int(Q.add_table[a, b]) for a in span for b in prods | span}
                if new <= span:
                    break
                span |= new
            if span != set(T.elements):
                good = False
                break
        if good:
            out.add(s)
    return frozenset(out)


@pytest.mark.parametrize("expr", ["T2(F_2)", "F_2[x]/(x^2)", "T2(F_3)",
                                  "Path(F_2; 3; a:1->2, b:2->3; a*b)"])
def test_morita_prime_matches_definition(expr):
    qm = qmax(expr)
    for T in qm.intermediate_subrings():
        assert morita_prime(qm.lam, T).elements == _brute_morita_prime(qm, T)


# ---------------------------------------------------------------- chains

@pytest.mark.parametrize("expr,order,fix", [
    ("F_2 x F_2", 4, 4), ("T2(F_2)", 16, 16), ("Z/4", 4, 4), ("F_2[x]/(x^2)", 4, 4)])
def test_small_chains_stop_immediately(expr, order, fix):
    qm = qmax(expr)
    for ch in (morita_chain(qm), simplified_chain(qm)):
        assert ch.gamma == 0
        assert ch.orders() == [order]
        assert ch.fixpoint.order == fix


def test_regular_ring_fixpoint_is_itself():
    qm = qmax("F_2 x F_2")
    assert morita_chain(qm).fixpoint == qm.bottom


@pytest.mark.parametrize("expr", CHAIN_RINGS)
def test_chain_invariants(expr):
    qm = qmax(expr)
    ch = morita_chain(qm)
    assert ch.steps[0] == qm.top
    for a, b in zip(ch.steps, ch.steps[1:]):
        assert b.elements < a.elements
    assert qm.is_perfect(ch.fixpoint)
    assert is_perfect_filter(qm, qm.filter_of(ch.fixpoint), sample=[])
    oracle = brute_force_qtot(qm)
    assert ch.fixpoint == oracle
    assert all(oracle.elements <= T.elements for T in ch.steps)
    try:
        fc = simplified_chain(qm)
    except FlatnessFailure:
        assert not condition_report(qm, "C").verdict
        return
    assert fc.fixpoint == oracle
    if condition_report(qm, "C").verdict:
        assert fc.steps == ch.steps


@pytest.mark.parametrize("expr", ["T2(F_2)", "F_2[x]/(x^2)", "Z/4", "T2(Z/4)"])
def test_perfect_family_matches_subset_scan(expr):
    qm = qmax(expr)
    if qm.carrier.order > 16:
        subs = [T.elements for T in qm.intermediate_subrings()]
    else:
        subs = subrings_between(qm.carrier, qm.base_image)
        assert set(subs) == {T.elements for T in qm.intermediate_subrings()}
    res = perfect_family(qm)
    assert res.examined == len(subs)
    assert all(is_subring_set(qm.carrier, T.elements) is None for T in res.family)


def test_oracle_examples():
    assert brute_force_qtot(qmax("F_2 x F_2")).order == 4
    assert brute_force_qtot(qmax("T2(F_2)")).order == 16
    assert brute_force_qtot(qmax("Z/4")).order == 4


# ---------------------------------------------------------------- conditions

def test_condition_c_for_t2():
    assert condition_report(qmax("T2(F_2)"), "C").verdict


def test_conditions_hold_when_qmax_is_r():
    for side in ("C", "C'"):
        rep = condition_report(qmax("Z/4"), side)
        assert rep.verdict and rep.examined == 1


def test_condition_c_fails_for_t2_z4_with_a_genuine_witness():
    qm = qmax("T2(Z/4)")
    rep = condition_report(qm, "C")
    assert rep.verdict is False
    W = rep.witness
    assert is_subring_set(qm.carrier, W.elements) is None
    assert qm.base_image <= W.elements
    assert not qm.is_flat_left(W)


def test_condition_report_cap():
    rep = condition_report(build_qmax(ring("T2(Z/4)")), "C", cap=2)
    assert rep.verdict is None and rep.cap_hit


@pytest.mark.parametrize("entry", [e for e in CORPUS if e.ring.is_commutative],
                         ids=lambda e: e.name)
def test_commutative_rings_have_equal_verdicts(entry):
    qm = build_qmax(entry.ring)
    assert condition_report(qm, "C").verdict == condition_report(qm, "C'").verdict


# ---------------------------------------------------------------- semihereditary

@pytest.mark.parametrize("expr,expected", [
    ("M2(F_2)", True), ("T2(F_2)", True), ("Z/4", False), ("F_2 x F_3", True),
    ("F_2[x]/(x^2)", False), ("T3(F_2)", True), ("T2(Z/4)", False)])
def test_semihereditary(expr, expected):
    assert is_right_semihereditary(ring(expr)) == expected


@pytest.mark.parametrize("expr,order", [("T2(F_2)", 16), ("M2(F_2)", 16), ("F_2 x F_2", 4),
                                        ("T3(F_2)", 512)])
def test_shortcut(expr, order):
    qm = qmax(expr)
    T = qtot_shortcut(qm)
    assert T.order == order
    assert T == brute_force_qtot(qm)


def test_shortcut_refuses_non_semihereditary():
    with pytest.raises(PreconditionFailure):
        qtot_shortcut(qmax("Z/4"))


# ---------------------------------------------------------------- a chain of length two

@pytest.mark.slow
def test_path_algebra_with_gamma_one():
    R = ring(GAMMA_ONE)
    assert R.order == 128
    qm = build_qmax(R)
    assert qm.carrier.order == 1024
    mc, fc = morita_chain(qm), simplified_chain(qm)
    assert mc.orders() == fc.orders() == [1024, 128]
    assert mc.gamma == fc.gamma == 1
    assert mc.steps == fc.steps
    assert mc.fixpoint == qm.bottom
    assert not qm.is_epi(qm.top)
    assert qm.is_flat_left(qm.top)
    assert condition_report(qm, "C").verdict
    assert not is_right_semihereditary(R)
    rep = verify_suite(R, qm=qm)
    assert rep.ok, rep.failures()
    assert rep.gamma == 1
