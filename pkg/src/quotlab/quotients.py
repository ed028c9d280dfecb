"""Maximal ring of quotients, torsion theories and rings of quotients.

``Q_max(R)`` is realised as ``End_R(D)`` for the smallest dense right ideal
``D``.  The facts that make this legitimate (every map ``D -> R`` lands in
``D``; restriction from larger dense ideals is injective) are checked when the
realisation is built, and a failure raises :class:`RealizationViolation`.

Every other ring in the package that sits between ``R`` and ``Q_max(R)`` is a
:class:`~quotlab.rings.Subring` of the carrier, so inclusions and equalities
are plain set comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from .errors import CapExceeded, InternalViolation, NotASubring, RealizationViolation
from .ideals import (GabrielFilter, RightIdeal, enumerate_right_ideals, filter_of_extension,
                     is_dense_set, lambek_filter, minimal_dense_ideal, torsion_elements,
                     trivial_filter)
from .modules import (FiniteModule, ModuleMap, Submodule, cyclic_module, flatness_witness,
                      hom, quotient, regular_module, restrict, tensor_with_extension)
from .rings import (DEFAULT_SUBRING_CAP, FiniteRing, RingEmbedding, Subring, additive_span,
                    enumerate_intermediate_subrings, is_subring_set, validate_ring)


@dataclass
class _SubringData:
    ring: FiniteRing
    embedding: RingEmbedding  # R -> ring
    flat_left: Optional[bool] = None
    flat_right: Optional[bool] = None
    epi: Optional[bool] = None
    module: Optional[FiniteModule] = None


class QMaxRealization:
    """``End_R(D)`` with the left-multiplication embedding ``lam: R -> End_R(D)``."""

    def __init__(self, R: FiniteRing, D: RightIdeal, carrier: FiniteRing,
                 lam: RingEmbedding, endo_basis: list[ModuleMap]):
        self.base = R
        self.D = D
        self.carrier = carrier
        self.lam = lam
        self.endo_basis = endo_basis
        self._subrings: dict = {}
        self._intermediate: Optional[list] = None

    def __repr__(self):
        return f"QMaxRealization({self.base.name}: |D|={len(self.D)}, |Q|={self.carrier.order})"

    @cached_property
    def base_image(self) -> frozenset:
        return self.lam.image

    @cached_property
    def bottom(self) -> Subring:
        return Subring(self.carrier, self.base_image)

    @cached_property
    def top(self) -> Subring:
        return Subring(self.carrier, self.carrier.all_elements)

    @cached_property
    def colon_table(self) -> np.ndarray:
        """``table[q, r]`` is true iff ``q lam(r)`` lies in ``lam(R)``."""
        Q = self.carrier
        mask = np.zeros(Q.order, dtype=bool)
        mask[list(self.base_image)] = True
        return mask[Q.mul_table[:, self.lam.map]]

    def colon(self, q: int) -> frozenset:
        """``(R : q) = {r in R : q lam(r) in lam(R)}``."""
        return frozenset(np.flatnonzero(self.colon_table[q]).tolist())

    def relative_colon(self, q: int, T: Iterable[int]) -> frozenset:
        """``{r in R : q lam(r) in T}`` for a subset ``T`` of the carrier."""
        Q = self.carrier
        mask = np.zeros(Q.order, dtype=bool)
        mask[list(T)] = True
        return frozenset(np.flatnonzero(mask[Q.mul_table[q, self.lam.map]]).tolist())

    # ---- subrings between lam(R) and the carrier

    def _data(self, T: Subring) -> _SubringData:
        if T.ambient is not self.carrier:
            raise ValueError("subring of a different carrier")
        hit = self._subrings.get(T.elements)
        if hit is None:
            if not self.base_image <= T.elements:
                raise ValueError("subring does not contain lam(R)")
            ring, inc = T.as_ring()
            imgs = tuple(ring.coords(T.local_index(int(self.lam.map[self.base.basis_index(i)])))
                         for i in range(self.base.rank))
            emb = RingEmbedding(self.base, ring, imgs)
            hit = _SubringData(ring, emb)
            self._subrings[T.elements] = hit
        return hit

    def embedding_into(self, T: Subring) -> RingEmbedding:
        return self._data(T).embedding

    def as_module(self, T: Subring) -> FiniteModule:
        """``T`` as a right ``R``-module."""
        d = self._data(T)
        if d.module is None:
            d.module = restrict(regular_module(d.ring), d.embedding)
        return d.module

    def is_flat_left(self, T: Subring) -> bool:
        d = self._data(T)
        if d.flat_left is None:
            d.flat_left = flatness_witness(d.embedding) is None
        return d.flat_left

    def is_flat_right(self, T: Subring) -> bool:
        d = self._data(T)
        if d.flat_right is None:
            d.flat_right = flatness_witness(d.embedding.opposite()) is None
        return d.flat_right

    def is_epi(self, T: Subring) -> bool:
        d = self._data(T)
        if d.epi is None:
            order, image = self.tensor_of(T, T)
            d.epi = order == T.order and image == T.elements
        return d.epi

    def is_perfect(self, T: Subring) -> bool:
        return self.is_flat_left(T) and self.is_epi(T)

    def intermediate_subrings(self, cap: int = DEFAULT_SUBRING_CAP) -> list[Subring]:
        """All subrings between ``lam(R)`` and the carrier (cached once complete)."""
        if self._intermediate is None:
            self._intermediate = enumerate_intermediate_subrings(self.lam, cap)
        elif len(self._intermediate) > cap:
            raise CapExceeded(cap, "intermediate subrings")
        return self._intermediate

    def filter_of(self, T: Subring) -> GabrielFilter:
        """``{I : I T = T}``."""
        return filter_of_extension(self.lam, within=T)

    def tensor_of(self, A: Subring, B: Subring) -> tuple[int, frozenset]:
        """Order of ``A (x)_R B`` and the image of the multiplication map in the carrier."""
        Q = self.carrier
        dA, dB = self._data(A), self._data(B)
        T = tensor_with_extension(self.as_module(A), dB.embedding)
        alpha = [A.ambient.index_of(v) for v in A.as_ring()[1].images]
        beta = [B.ambient.index_of(v) for v in B.as_ring()[1].images]
        P = Q.elements[Q.mul_table[np.ix_(alpha, beta)]]  # (a, b, coords)
        imgs = []
        for j in range(len(T.invariants)):
            w = np.asarray(T.generator_lift(j), dtype=np.int64).reshape(len(alpha), len(beta))
            imgs.append(Q.index_of(np.einsum("ab,abl->l", w, P)))
        return T.order, additive_span(Q, imgs)


def build_qmax(R: FiniteRing) -> QMaxRealization:
    D = minimal_dense_ideal(R)
    RR = regular_module(R)
    sub = Submodule(RR, D.elements)
    Dm, inc = sub.as_module()
    H_DR, H_DD = hom(Dm, RR), hom(Dm, Dm)
    if H_DR.order != H_DD.order:
        raise RealizationViolation(f"{R.name}: some map D -> R leaves D")
    for I in enumerate_right_ideals(R):
        if I.dense and len(I) > len(D):
            Im, _ = Submodule(RR, I.elements).as_module()
            Dsub = Submodule(Im, frozenset(_local_indices(Im, I, D)))
            quo, _ = quotient(Im, Dsub)
            if hom(quo, RR).order != 1:
                raise RealizationViolation(f"{R.name}: restriction to D is not injective")

    basis = H_DD.basis
    k = len(basis)
    orders = H_DD.orders
    m = Dm._m

    def compose(f, g):  # f after g
        return ((g.array @ f.array) % m).tolist() if Dm.ngens else []

    def coords_of(P):
        return H_DD.coords(ModuleMap(Dm, Dm, tuple(map(tuple, P))))

    mul = [[list(coords_of(compose(basis[i], basis[j]))) for j in range(k)] for i in range(k)]
    unit = list(coords_of(np.eye(Dm.ngens, dtype=np.int64).tolist()))
    carrier = validate_ring({"name": f"Qmax({R.name})", "moduli": list(orders),
                             "mul": mul, "unit": unit})

    _, _, sg = sub._realisation
    images = []
    for i in range(R.rank):
        ei = R.basis_index(i)
        rows = []
        for b in sg.basis:
            d = R.index_of(b)
            rows.append(sg.coords(R.coords(R.times(ei, d))))
        images.append(tuple(coords_of(rows)))
    lam = RingEmbedding(R, carrier, tuple(images))
    try:
        lam.validate()
    except ValueError as e:
        raise RealizationViolation(f"{R.name}: left multiplication on D: {e}") from None
    qm = QMaxRealization(R, D, carrier, lam, basis)
    for q in range(carrier.order):
        if not is_dense_set(R, qm.colon(q)):
            raise RealizationViolation(f"{R.name}: (R : q) not dense for q={q}")
    return qm


def _local_indices(Im: FiniteModule, I: RightIdeal, D: RightIdeal) -> list[int]:
    R = I.ring
    inc = Submodule(regular_module(R), I.elements)._realisation[2]
    return [Im.index_of(inc.coords(R.coords(d))) for d in D.elements]


_QMAX: dict = {}


def qmax_cached(R: FiniteRing) -> QMaxRealization:
    hit = _QMAX.get(id(R))
    if hit is None or hit[0] is not R:
        hit = (R, build_qmax(R))
        _QMAX[id(R)] = hit
    return hit[1]


# ---------------------------------------------------------------- torsion theories

@dataclass(frozen=True, eq=False)
class TorsionTheory:
    """A hereditary torsion theory, described by its filter.

    When built from a flat extension, the extension is kept so the torsion
    submodule can also be computed as a tensor kernel.
    """

    ring: FiniteRing
    filter: GabrielFilter
    extension: Optional[RingEmbedding] = None

    @classmethod
    def of_extension(cls, emb: RingEmbedding) -> "TorsionTheory":
        return cls(emb.source, filter_of_extension(emb), emb)

    @classmethod
    def of_filter(cls, F: GabrielFilter) -> "TorsionTheory":
        return cls(F.ring, F)

    @cached_property
    def faithful(self) -> bool:
        return torsion_submodule(regular_module(self.ring), self).is_zero()


def tensor_kernel(M: FiniteModule, emb: RingEmbedding) -> Submodule:
    """Kernel of ``M -> M (x)_R S``."""
    return tensor_with_extension(M, emb).natural.kernel()


def torsion_submodule(M: FiniteModule, tau: TorsionTheory, route: str = "filter") -> Submodule:
    """``tM`` computed from the filter, or from the tensor kernel (``route="tensor"``)."""
    if route == "tensor":
        if tau.extension is None:
            raise ValueError("torsion theory has no extension to tensor with")
        return tensor_kernel(M, tau.extension)
    return Submodule(M, torsion_elements(M, tau.filter))


def closure(M: FiniteModule, K: Submodule, tau: TorsionTheory) -> Submodule:
    """Preimage in ``M`` of the torsion part of ``M / K``."""
    Q, proj = quotient(M, K)
    t = torsion_submodule(Q, tau).elements
    return Submodule(M, frozenset(np.flatnonzero(np.isin(proj.table, list(t))).tolist()))


def is_torsion(M: FiniteModule, F: GabrielFilter) -> bool:
    return len(torsion_elements(M, F)) == M.order


def is_torsion_free(M: FiniteModule, F: GabrielFilter) -> bool:
    return torsion_elements(M, F) == frozenset({0})


# ---------------------------------------------------------------- rings of quotients

@dataclass(frozen=True, eq=False)
class QuotientSubring:
    subring: Subring
    filter: GabrielFilter

    @property
    def elements(self) -> frozenset:
        return self.subring.elements

    @property
    def order(self) -> int:
        return self.subring.order


def membership_set(qm: QMaxRealization, F: GabrielFilter) -> frozenset:
    """``{q : (R : q) in F}``."""
    return frozenset(q for q in range(qm.carrier.order) if qm.colon(q) in F.members)


def ring_of_quotients(qm: QMaxRealization, F: GabrielFilter) -> QuotientSubring:
    elems = membership_set(qm, F)
    w = is_subring_set(qm.carrier, elems)
    if w is not None:
        raise NotASubring(w[1:], w[0])
    if not qm.base_image <= elems:
        raise NotASubring((), "misses lam(R)")
    return QuotientSubring(Subring(qm.carrier, elems), F)


def is_ring_epimorphism(emb: RingEmbedding) -> bool:
    """Is ``S (x)_R S -> S`` bijective?"""
    S = emb.target
    M = restrict(regular_module(S), emb)
    T = tensor_with_extension(M, emb)
    C = S.structure
    imgs = []
    for j in range(len(T.invariants)):
        w = np.asarray(T.generator_lift(j), dtype=np.int64).reshape(S.rank, S.rank)
        imgs.append(S.index_of(np.einsum("ab,abl->l", w, C)))
    return T.order == S.order and additive_span(S, imgs) == S.all_elements


def is_perfect_extension(emb: RingEmbedding) -> bool:
    return flatness_witness(emb) is None and is_ring_epimorphism(emb)


@dataclass
class PerfectFilterEvidence:
    perfect: bool
    subring: Optional[Subring]
    extension_perfect: bool
    filter_recovered: bool
    kernel_checks: list = field(default_factory=list)  # (ideal elements, kernel is torsion)
    note: str = ""

    def __bool__(self):
        return self.perfect


def is_perfect_filter(qm: QMaxRealization, F: GabrielFilter,
                      sample: Optional[list[FiniteModule]] = None) -> PerfectFilterEvidence:
    """Decide perfectness of ``F`` from ``R_F``; sample the kernel criterion on modules."""
    try:
        RF = ring_of_quotients(qm, F).subring
    except NotASubring as e:
        return PerfectFilterEvidence(False, None, False, False, note=str(e))
    ext = qm.is_perfect(RF)
    recovered = qm.filter_of(RF) == F
    checks = []
    if qm.is_flat_left(RF):
        emb = qm.embedding_into(RF)
        R = qm.base
        if sample is None:
            items = [(I.elements, cyclic_module(R, I.elements)) for I in enumerate_right_ideals(R)]
        else:
            items = [(None, M) for M in sample]
        for key, M in items:
            ker = tensor_kernel(M, emb).elements
            checks.append((key, ker <= torsion_elements(M, F)))
    return PerfectFilterEvidence(ext and recovered, RF, ext, recovered, checks)


def is_kasch(qm: QMaxRealization) -> bool:
    """Is the carrier its own only dense right ideal?"""
    return len(lambek_filter(qm.carrier)) == 1


# ---------------------------------------------------------------- modules of quotients

def filter_minimum(F: GabrielFilter) -> RightIdeal:
    D = F.ring.all_elements
    for I in F.members:
        D = D & I
    if D not in F.members:
        raise InternalViolation("filter is not closed under intersections")
    return RightIdeal(F.ring, D)


@dataclass
class QuotientModuleMap:
    """``phi: M -> Hom_R(D_F, M)``, ``m -> (d -> m d)``."""

    hom_module: FiniteModule
    phi: ModuleMap


_TWO_SIDED: dict = {}


def _two_sided_realisation(R: FiniteRing, D: frozenset):
    """``D`` as a right module, its subgroup basis, and left multiplications by ``e_i``."""
    key = (id(R), D)
    hit = _TWO_SIDED.get(key)
    if hit is not None and hit[0] is R:
        return hit[1]
    sub = Submodule(regular_module(R), D)
    Dm, _ = sub.as_module()
    sg = sub._realisation[2]

    def left_mult(r):  # matrix of d -> r d on D
        return np.array([sg.coords(R.coords(R.times(r, R.index_of(b)))) for b in sg.basis],
                        dtype=np.int64).reshape(Dm.ngens, Dm.ngens)

    out = (Dm, sg, [left_mult(R.basis_index(i)) for i in range(R.rank)])
    _TWO_SIDED[key] = (R, out)
    return out


def module_of_quotients_map(M: FiniteModule, F: GabrielFilter) -> QuotientModuleMap:
    """``M_(F) = Hom(D_F, M)`` for the smallest member ``D_F`` (a two-sided ideal)."""
    R = F.ring
    Dm, sg, Ls = _two_sided_realisation(R, filter_minimum(F).elements)
    H = hom(Dm, M)
    action = []
    for L in Ls:
        rows = []
        for f in H.basis:
            P = (L @ f.array) % M._m if M.ngens else f.array
            rows.append(H.coords(ModuleMap(Dm, M, tuple(map(tuple, P.tolist())))))
        action.append(tuple(rows))
    Hm = FiniteModule(R, H.orders, tuple(action), f"Hom(D_F, {M.name})")
    rows = []
    for a in range(M.ngens):
        ga = np.zeros(M.ngens, dtype=np.int64)
        ga[a] = 1
        P = []
        for b in sg.basis:
            # g_a . d  with d written in R-coordinates
            P.append(((ga @ M.ring_actions[R.index_of(b)]) % M._m).tolist())
        rows.append(H.coords(ModuleMap(Dm, M, tuple(map(tuple, P)))))
    return QuotientModuleMap(Hm, ModuleMap(M, Hm, tuple(rows)))
