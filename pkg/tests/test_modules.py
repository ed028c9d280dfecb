import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import qmax, ring
from oracles import hom_count, right_ideals, tensor_order_over_field
from quotlab.ideals import enumerate_right_ideals, minimal_dense_ideal
from quotlab.modules import (Submodule, cyclic_module, direct_sum, hom, is_flat_left,
                             is_projective, quotient, regular_module, restrict,
                             singular_submodule, submodule_generated, tensor_with_extension)
from quotlab.rings import RingEmbedding, identity_embedding, opposite

MODULE_RINGS = ["F_2", "Z/4", "Z/6", "F_2 x F_2", "T2(F_2)", "F_2[x]/(x^2)", "M2(F_2)",
                "Path(F_2; 3; a:1->2, b:2->3; a*b)"]


def sample_modules(R, limit=6):
    """R, its ideals, and its cyclic quotients: a small zoo over ``R``."""
    RR = regular_module(R)
    out = [RR]
    for I in enumerate_right_ideals(R):
        if 1 < len(I) < R.order:
            out.append(Submodule(RR, I.elements).as_module()[0])
            out.append(cyclic_module(R, I.elements))
    return out[:limit]


module_pairs = st.sampled_from(MODULE_RINGS).flatmap(
    lambda e: st.tuples(st.sampled_from(sample_modules(ring(e))),
                        st.sampled_from(sample_modules(ring(e)))))


def z2_over_z4():
    R = ring("Z/4")
    return cyclic_module(R, {0, R.index_of([2])})


# ---------------------------------------------------------------- construction

@pytest.mark.parametrize("expr", MODULE_RINGS)
def test_regular_module_matches_multiplication(expr):
    R = ring(expr)
    RR = regular_module(R).validate()
    assert RR.order == R.order
    assert (RR.right_mult_table == R.mul_table).all()


def test_regular_modules_small():
    assert regular_module(ring("F_2")).order == 2
    M = regular_module(ring("Z/4"))
    assert M.order == 4 and (M.act_matrix(ring("Z/4").one) == np.eye(1)).all()
    assert regular_module(ring("T2(F_2)")).order == 8


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(MODULE_RINGS), st.data())
def test_submodule_generated_is_closed(expr, data):
    R = ring(expr)
    M = data.draw(st.sampled_from(sample_modules(R)))
    xs = data.draw(st.lists(st.integers(0, M.order - 1), max_size=2))
    N = submodule_generated(M, xs).check()
    T = M.right_mult_table
    assert set(xs) <= N.elements
    assert all(T[x, r] in N.elements for x in N.elements for r in range(R.order))


@pytest.mark.parametrize("expr", MODULE_RINGS)
def test_quotient_orders(expr):
    R = ring(expr)
    RR = regular_module(R)
    for I in enumerate_right_ideals(R):
        Q, proj = quotient(RR, Submodule(RR, I.elements))
        Q.validate()
        assert Q.order * len(I) == R.order
        assert proj.is_homomorphism()
        assert proj.kernel().elements == I.elements


# ---------------------------------------------------------------- Hom

def test_hom_z4_z4():
    R = ring("Z/4")
    H = hom(regular_module(R), regular_module(R))
    assert H.orders == (4,)


def test_hom_z2_z4():
    R = ring("Z/4")
    H = hom(z2_over_z4(), regular_module(R))
    assert H.order == 2
    images = sorted(f.table[1] for f in H.elements())
    assert images == [0, R.index_of([2])]


def test_end_of_minimal_dense_ideal_of_t2():
    R = ring("T2(F_2)")
    RR = regular_module(R)
    D, _ = Submodule(RR, minimal_dense_ideal(R).elements).as_module()
    assert hom(D, D).order == 16 == qmax("T2(F_2)").carrier.order


@settings(max_examples=40, deadline=None)
@given(module_pairs)
def test_hom_order_matches_brute_force(pair):
    M, N = pair
    H = hom(M, N)
    assert H.order == hom_count(M, N)
    assert (N.order ** M.ngens) % H.order == 0
    for f in H.basis:
        assert f.is_homomorphism()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(MODULE_RINGS), st.data())
def test_hom_from_regular_is_evaluation(expr, data):
    R = ring(expr)
    M = data.draw(st.sampled_from(sample_modules(R)))
    H = hom(regular_module(R), M)
    assert H.order == M.order
    values = {int(f.table[R.one]) for f in H.elements()}
    assert values == set(range(M.order))


# ---------------------------------------------------------------- tensor

def _extensions():
    out = []
    for expr in ["T2(F_2)", "F_2[x]/(x^2)", "Path(F_2; 3; a:1->2, b:2->3; a*b)", "Z/4"]:
        qm = qmax(expr)
        for T in qm.intermediate_subrings():
            out.append((expr, qm.embedding_into(T)))
    S = ring("F_2 x F_2")
    out.append(("F_2", RingEmbedding(ring("F_2"), S, ((1, 1),)).validate()))
    return out


EXTENSIONS = _extensions()


@pytest.mark.parametrize("expr,emb", EXTENSIONS, ids=[f"{e}->{m.target.order}" for e, m in EXTENSIONS])
def test_tensor_with_regular_is_extension(expr, emb):
    R = emb.source
    T = tensor_with_extension(regular_module(R), emb)
    assert T.order == emb.target.order
    # the natural map sends r to lam(r)
    nat = T.natural
    assert nat.is_injective() and nat.is_homomorphism()
    T.module.validate()


FIELD_EXTENSIONS = [(e, m) for e, m in EXTENSIONS
                    if set(m.source.moduli + m.target.moduli) in ({2}, {3})]


@pytest.mark.parametrize("expr,emb", FIELD_EXTENSIONS,
                         ids=[f"{e}->{m.target.order}" for e, m in FIELD_EXTENSIONS])
def test_tensor_order_matches_linear_algebra_oracle(expr, emb):
    R = emb.source
    p = R.moduli[0]
    for M in sample_modules(R, limit=8):
        assert tensor_with_extension(M, emb).order == tensor_order_over_field(M, emb, p)


def test_tensor_identity_extension():
    M = z2_over_z4()
    T = tensor_with_extension(M, identity_embedding(ring("Z/4")))
    assert T.order == 2
    assert T.natural.is_injective()


def test_tensor_diagonal_squares_dimension():
    # over a field the tensor of two algebras multiplies dimensions
    S = ring("F_2 x F_2")
    emb = RingEmbedding(ring("F_2"), S, ((1, 1),)).validate()
    SS = restrict(regular_module(S), emb)
    assert tensor_with_extension(SS, emb).order == 16


# ---------------------------------------------------------------- flatness, projectivity

def test_flat_examples():
    assert is_flat_left(identity_embedding(ring("Z/4")))
    qm = qmax("T2(F_2)")
    assert is_flat_left(qm.lam)


def _left_ideals(R):
    Ro = opposite(R)
    return right_ideals(Ro)


def _product_span(R, I, J):
    from oracles import closure
    prods = {int(R.mul_table[i, j]) for i in I for j in J}
    return closure(R, prods, right_mult=False)


@pytest.mark.parametrize("expr", MODULE_RINGS)
def test_projective_cyclic_modules_are_flat(expr):
    # R/I is flat iff I J = I meet J for every left ideal J
    R = ring(expr)
    lefts = _left_ideals(R)
    for I in enumerate_right_ideals(R):
        if not is_projective(cyclic_module(R, I.elements)):
            continue
        for J in lefts:
            assert _product_span(R, I.elements, J) == I.elements & J


def test_projective_examples():
    assert is_projective(regular_module(ring("Z/4")))
    assert not is_projective(z2_over_z4())
    R = ring("T2(F_2)")
    RR = regular_module(R)
    for I in enumerate_right_ideals(R):
        assert is_projective(Submodule(RR, I.elements).as_module()[0])


def test_direct_sums_of_projectives_are_projective():
    R = ring("T2(F_2)")
    RR = regular_module(R)
    ideals = [Submodule(RR, I.elements).as_module()[0] for I in enumerate_right_ideals(R)
              if 1 < len(I) < R.order]
    assert is_projective(direct_sum(ideals[0], ideals[-1]))
    assert not is_projective(direct_sum(regular_module(ring("Z/4")), z2_over_z4()))


# ---------------------------------------------------------------- singular submodule

def test_singular_examples():
    assert singular_submodule(regular_module(ring("M2(F_2)"))).is_zero()
    M = z2_over_z4()
    assert singular_submodule(M).order == M.order
    assert singular_submodule(regular_module(ring("T2(F_2)"))).is_zero()


@settings(max_examples=30, deadline=None)
@given(module_pairs)
def test_singular_submodule_is_functorial(pair):
    M, N = pair
    ZM, ZN = singular_submodule(M), singular_submodule(N)
    for f in hom(M, N).basis:
        assert all(int(f.table[x]) in ZN.elements for x in ZM.elements)
