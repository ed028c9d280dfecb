"""Finite right modules over finite rings.

A module is an additive group ``Z/m_1 + ... + Z/m_t`` together with one
integer matrix per ring basis element; row ``a`` of ``action[i]`` holds the
coordinates of ``g_a e_i``.  Vectors are rows, so ``x . r = x A_r`` and a
module map is ``x -> x Phi``.

Hom groups, tensor products and quotients are computed with the exact
integer machinery in :mod:`quotlab.intlinalg`; nothing is enumerated unless a
caller asks for element lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import lcm, prod
from typing import Iterable, Sequence

import numpy as np

from .errors import ModuleValidationError, PresentationMismatch
from .intlinalg import Cokernel, Congruence, Subgroup, vecmat
from .rings import (FiniteRing, RingEmbedding, Subring, additive_span,
                    identity_embedding)

HOM_LISTING_GUARD = 4096


@dataclass(frozen=True, eq=False)
class FiniteModule:
    ring: FiniteRing
    moduli: tuple[int, ...]
    action: tuple  # action[i][a] = coords of g_a . e_i
    name: str = ""

    def __repr__(self):
        return f"FiniteModule({self.name or '?'} over {self.ring.name or '?'}, order={self.order})"

    @property
    def ngens(self) -> int:
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        return prod(self.moduli)

    @cached_property
    def _m(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    @cached_property
    def strides(self) -> np.ndarray:
        t = self.ngens
        s = [1] * t
        for i in range(t - 2, -1, -1):
            s[i] = s[i + 1] * self.moduli[i + 1]
        return np.array(s, dtype=np.int64)

    @cached_property
    def elements(self) -> np.ndarray:
        if self.ngens == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(list(product(*(range(m) for m in self.moduli))), dtype=np.int64)

    def index_of(self, coords):
        c = np.asarray(coords, dtype=np.int64) % self._m if self.ngens else \
            np.asarray(coords, dtype=np.int64)
        if c.ndim > 1:
            return c @ self.strides if self.ngens else np.zeros(len(c), dtype=np.int64)
        return int(c @ self.strides) if self.ngens else 0

    def coords(self, x: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.elements[x])

    @cached_property
    def basis_actions(self) -> np.ndarray:
        k, t = self.ring.rank, self.ngens
        return np.array(self.action, dtype=np.int64).reshape(k, t, t)

    @cached_property
    def ring_actions(self) -> np.ndarray:
        """``A_r`` for every ring element ``r``: shape ``(|R|, t, t)``."""
        return np.einsum("ri,iab->rab", self.ring.elements, self.basis_actions)

    def act_matrix(self, r: int) -> np.ndarray:
        return self.ring_actions[r]

    @cached_property
    def right_mult_table(self) -> np.ndarray:
        """``table[x, r]`` is the index of ``x . r``."""
        X = self.elements
        if self.ngens == 0:
            return np.zeros((1, self.ring.order), dtype=np.int64)
        prods = np.einsum("xa,rab->xrb", X, self.ring_actions) % self._m
        return prods @ self.strides

    def annihilator(self, x: int) -> frozenset:
        return frozenset(np.flatnonzero(self.right_mult_table[x] == 0).tolist())

    def colon(self, N: Iterable[int], x: int) -> frozenset:
        """``(N : x) = {r : x r in N}`` for a set ``N`` of element indices."""
        mask = np.zeros(self.order, dtype=bool)
        mask[np.fromiter(N, dtype=np.int64)] = True
        return frozenset(np.flatnonzero(mask[self.right_mult_table[x]]).tolist())

    def validate(self) -> "FiniteModule":
        R, A, m = self.ring, self.basis_actions, self._m
        t = self.ngens
        if A.shape != (R.rank, t, t):
            raise ModuleValidationError("action matrices have the wrong shape")
        for i in range(R.rank):
            for a in range(t):
                if ((self.moduli[a] * A[i, a]) % m).any():
                    raise ModuleValidationError(f"g{a} e{i} not killed by the order of g{a}")
        C = R.structure
        for i in range(R.rank):
            for j in range(R.rank):
                lhs = (A[i] @ A[j]) % m if t else A[i]
                rhs = np.einsum("l,lab->ab", C[i, j], A) % m if t else A[i]
                if (lhs != rhs).any():
                    raise ModuleValidationError(f"(x e{i}) e{j} != x (e{i} e{j})")
        U = self.ring_actions[R.one] % m if t else None
        if t and (U != np.eye(t, dtype=np.int64)).any():
            raise ModuleValidationError("unit does not act as the identity")
        return self


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: FiniteModule
    target: FiniteModule
    matrix: tuple  # t_source x t_target

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(self.source.ngens, self.target.ngens)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        v = (np.asarray(x, dtype=np.int64) @ self.array) % self.target._m
        return tuple(int(c) for c in v)

    @cached_property
    def table(self) -> np.ndarray:
        if self.target.ngens == 0:
            return np.zeros(self.source.order, dtype=np.int64)
        return ((self.source.elements @ self.array) % self.target._m) @ self.target.strides

    def kernel(self) -> "Submodule":
        return Submodule(self.source, frozenset(np.flatnonzero(self.table == 0).tolist()))

    def image(self) -> "Submodule":
        return Submodule(self.target, frozenset(self.table.tolist()))

    def is_injective(self) -> bool:
        return len(set(self.table.tolist())) == self.source.order

    def is_homomorphism(self) -> bool:
        P, m = self.array, self.target._m
        A, B = self.source.basis_actions, self.target.basis_actions
        if any(((self.source.moduli[a] * P[a]) % m).any() for a in range(self.source.ngens)):
            return False
        return all((((A[i] @ P) - (P @ B[i])) % m == 0).all() for i in range(len(A)))

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """``other`` after ``self``."""
        P = (self.array @ other.array) % other.target._m if other.target.ngens else \
            np.zeros((self.source.ngens, 0), dtype=np.int64)
        return ModuleMap(self.source, other.target, _tup(P))


def _tup(A) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in np.asarray(A))


@dataclass(frozen=True, eq=False)
class Submodule:
    parent: FiniteModule
    elements: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(int(x) for x in self.elements))

    def __eq__(self, other):
        return isinstance(other, Submodule) and other.parent is self.parent \
            and other.elements == self.elements

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_zero(self) -> bool:
        return self.elements == frozenset({0})

    def check(self) -> "Submodule":
        M = self.parent
        E = np.array(sorted(self.elements), dtype=np.int64)
        if 0 not in self.elements:
            raise ModuleValidationError("submodule misses 0")
        if not set(M.right_mult_table[E].ravel().tolist()) <= self.elements:
            raise ModuleValidationError("not closed under the action")
        X = M.elements[E]
        sums = ((X[:, None, :] + X[None, :, :]) % M._m) @ M.strides if M.ngens else np.zeros(1)
        if not set(np.asarray(sums).ravel().tolist()) <= self.elements:
            raise ModuleValidationError("not closed under addition")
        return self

    @cached_property
    def _realisation(self):
        M = self.parent
        gens = [M.coords(x) for x in sorted(self.elements) if x]
        sg = Subgroup(gens or [[0] * M.ngens], M.moduli)
        k = len(sg.orders)
        A = M.basis_actions
        action = []
        for i in range(M.ring.rank):
            rows = []
            for b in sg.basis:
                img = (np.asarray(b, dtype=np.int64) @ A[i]) % M._m
                rows.append(sg.coords(img.tolist()))
            action.append(tuple(rows))
        sub = FiniteModule(M.ring, sg.orders, tuple(action), f"sub({M.name})")
        inc = ModuleMap(sub, M, tuple(tuple(b) for b in sg.basis) if k else ())
        return sub, inc, sg

    def as_module(self) -> tuple[FiniteModule, ModuleMap]:
        sub, inc, _ = self._realisation
        return sub, inc


def submodule_generated(M: FiniteModule, xs: Iterable[int]) -> Submodule:
    gens = [M.coords(x) for x in xs]
    A = M.basis_actions
    while True:
        sg = Subgroup(gens or [[0] * M.ngens], M.moduli)
        new = []
        for b in sg.basis:
            for i in range(len(A)):
                y = ((np.asarray(b, dtype=np.int64) @ A[i]) % M._m).tolist()
                if not sg.contains(y):
                    new.append(y)
        if not new:
            break
        gens = [list(b) for b in sg.basis] + new
    return Submodule(M, frozenset(M.index_of(e) for e in sg.elements()))


# ---------------------------------------------------------------- constructions

def regular_module(R) -> FiniteModule:
    """``R`` as a right module over itself."""
    if isinstance(R, Subring):
        R = R.as_ring()[0]
    k = R.rank
    action = tuple(tuple(R.mul[a][i] for a in range(k)) for i in range(k))
    return FiniteModule(R, R.moduli, action, f"{R.name}_{R.name}")


def restrict(M: FiniteModule, emb: RingEmbedding) -> FiniteModule:
    """An ``S``-module viewed as an ``R``-module along ``emb: R -> S``."""
    if M.ring is not emb.target:
        raise ValueError("module is not over the target of the embedding")
    I = np.array(emb.images, dtype=np.int64).reshape(emb.source.rank, emb.target.rank)
    A = np.einsum("ij,jab->iab", I, M.basis_actions) % M._m if M.ngens else \
        np.zeros((emb.source.rank, 0, 0), dtype=np.int64)
    action = tuple(_tup(a) for a in A)
    return FiniteModule(emb.source, M.moduli, action, M.name)


def direct_sum(*mods: FiniteModule) -> FiniteModule:
    R = mods[0].ring
    moduli = sum((M.moduli for M in mods), ())
    t = len(moduli)
    action = []
    for i in range(R.rank):
        A = np.zeros((t, t), dtype=np.int64)
        off = 0
        for M in mods:
            n = M.ngens
            A[off:off + n, off:off + n] = M.basis_actions[i]
            off += n
        action.append(_tup(A))
    return FiniteModule(R, moduli, tuple(action), " + ".join(M.name for M in mods))


def free_module(R: FiniteRing, n: int) -> FiniteModule:
    return direct_sum(*([regular_module(R)] * n)) if n else \
        FiniteModule(R, (), tuple(() for _ in range(R.rank)), "0")


def quotient(M: FiniteModule, N: Submodule) -> tuple[FiniteModule, ModuleMap]:
    """``M / N`` and the projection."""
    t = M.ngens
    rels = [[M.moduli[a] if b == a else 0 for b in range(t)] for a in range(t)]
    rels += [list(M.coords(x)) for x in N.elements if x]
    E = lcm(*M.moduli) if t else 1
    ck = Cokernel(rels, t, E)
    k = len(ck.invariants)
    A = M.basis_actions
    action = []
    for i in range(M.ring.rank):
        action.append(tuple(ck.coords(vecmat(ck.lift(j), A[i].tolist(), t)) for j in range(k)))
    Q = FiniteModule(M.ring, ck.invariants, tuple(action), f"{M.name}/N")
    proj = ModuleMap(M, Q, tuple(ck.coords([int(a == b) for b in range(t)]) for a in range(t)))
    return Q, proj


def cyclic_module(R: FiniteRing, ideal_elements: Iterable[int]) -> FiniteModule:
    """``R / I`` for a right ideal ``I`` given by its element indices."""
    RR = regular_module(R)
    Q, _ = quotient(RR, Submodule(RR, frozenset(ideal_elements)))
    return Q


# ---------------------------------------------------------------- Hom

class HomGroup:
    """``Hom_R(M, N)`` as a finite abelian group of :class:`ModuleMap`.

    Maps are ``t x u`` integer matrices; the group lives inside
    ``(Z/n_1 + ... + Z/n_u)^t`` and is described by a direct-sum basis.
    """

    def __init__(self, M: FiniteModule, N: FiniteModule):
        if M.ring is not N.ring:
            raise ValueError("modules over different rings")
        self.source, self.target = M, N
        t, u = M.ngens, N.ngens
        self._amb = tuple(n for _ in range(t) for n in N.moduli)
        p = t * u
        cols: list[list[int]] = []
        mods: list[int] = []
        # unknown (a, b) sits at row a*u + b
        for a in range(t):
            for b in range(u):
                col = [0] * p
                col[a * u + b] = M.moduli[a]
                cols.append(col)
                mods.append(N.moduli[b])
        AM, AN = M.basis_actions, N.basis_actions
        for i in range(M.ring.rank):
            for a in range(t):
                for b in range(u):
                    # (A_i^M Phi - Phi A_i^N)[a, b]
                    col = [0] * p
                    for c in range(t):
                        col[c * u + b] += int(AM[i, a, c])
                    for c in range(u):
                        col[a * u + c] -= int(AN[i, c, b])
                    cols.append(col)
                    mods.append(N.moduli[b])
        A = [[col[r] for col in cols] for r in range(p)]
        K = Congruence(A, p, mods).kernel_basis() if p else []
        self._sg = Subgroup(K or [[0] * p], self._amb)

    @property
    def orders(self) -> tuple[int, ...]:
        return self._sg.orders

    @property
    def order(self) -> int:
        return self._sg.order

    def _as_map(self, flat: Sequence[int]) -> ModuleMap:
        t, u = self.source.ngens, self.target.ngens
        return ModuleMap(self.source, self.target,
                         tuple(tuple(int(flat[a * u + b]) for b in range(u)) for a in range(t)))

    @cached_property
    def basis(self) -> list[ModuleMap]:
        return [self._as_map(b) for b in self._sg.basis]

    def from_coords(self, c: Sequence[int]) -> ModuleMap:
        return self._as_map(self._sg.combine(c))

    def coords(self, f: ModuleMap) -> tuple[int, ...]:
        return self._sg.coords([x for row in f.array.tolist() for x in row])

    def contains(self, f: ModuleMap) -> bool:
        return self._sg.contains([x for row in f.array.tolist() for x in row])

    def elements(self, guard: int = HOM_LISTING_GUARD) -> list[ModuleMap]:
        if self.order > guard:
            raise ValueError(f"Hom group of order {self.order} exceeds listing guard {guard}")
        return [self._as_map(v) for v in self._sg.elements()]


def hom(M: FiniteModule, N: FiniteModule) -> HomGroup:
    return HomGroup(M, N)


# ---------------------------------------------------------------- presentations and tensor

@dataclass(frozen=True, eq=False)
class Presentation:
    """``R^{n0} / (relations) -> M`` sending the ``a``-th free generator to ``g_a``.

    Each relation is a row of ``n0`` ring elements (as coordinate tuples).
    """

    module: FiniteModule
    n0: int
    relations: tuple


def presentation(M: FiniteModule) -> Presentation:
    R, t = M.ring, M.ngens
    rels = []
    for a in range(t):
        rels.append(tuple(tuple(M.moduli[a] * u for u in R.unit) if c == a else (0,) * R.rank
                          for c in range(t)))
    A = M.basis_actions
    for a in range(t):
        for i in range(R.rank):
            row = []
            for c in range(t):
                v = [-int(A[i, a, c]) * u for u in R.unit]
                if c == a:
                    v[i] += 1
                row.append(tuple(v))
            rels.append(tuple(row))
    P = Presentation(M, t, tuple(rels))
    T = _tensor_from_presentation(P, identity_embedding(R))
    if T.order != M.order or not T.natural.is_injective():
        raise PresentationMismatch(f"cokernel of order {T.order} does not match module of order {M.order}")
    return P


_PRES_CACHE: dict = {}


def _cached_presentation(M: FiniteModule) -> Presentation:
    hit = _PRES_CACHE.get(id(M))
    if hit is None or hit.module is not M:
        hit = presentation(M)
        _PRES_CACHE[id(M)] = hit
    return hit


class TensorProduct:
    """``M (x)_R S`` as an abelian group with right ``S``-action."""

    def __init__(self, P: Presentation, emb: RingEmbedding):
        M, S = P.module, emb.target
        self.source, self.emb = M, emb
        t, s = P.n0, S.rank
        self._t, self._s = t, s
        n = t * s
        Cs = S.structure
        I = np.array(emb.images, dtype=np.int64).reshape(emb.source.rank, s)
        # lam(r) f_b  for ring element coords r:  (r @ I) contracted with Cs[:, b, :]
        rows = []
        for a in range(t):
            for b in range(s):
                row = [0] * n
                row[a * s + b] = S.moduli[b]
                rows.append(row)
        for rel in P.relations:
            lam = [np.asarray(r, dtype=np.int64) @ I for r in rel]
            for b in range(s):
                row = [0] * n
                for a in range(t):
                    if lam[a].any():
                        v = lam[a] @ Cs[:, b, :]
                        row[a * s:(a + 1) * s] = [int(x) for x in v]
                rows.append(row)
        E = lcm(*S.moduli) if s else 1
        self._ck = Cokernel(rows, n, E)
        self.invariants = self._ck.invariants

    @property
    def order(self) -> int:
        return self._ck.order

    @cached_property
    def module(self) -> FiniteModule:
        S, t, s = self.emb.target, self._t, self._s
        Cs = S.structure
        action = []
        k = len(self.invariants)
        for c in range(s):
            rows = []
            for j in range(k):
                w = self._ck.lift(j)
                out = [0] * (t * s)
                for a in range(t):
                    wa = np.asarray(w[a * s:(a + 1) * s], dtype=np.int64)
                    if wa.any():
                        out[a * s:(a + 1) * s] = [int(x) for x in wa @ Cs[:, c, :]]
                rows.append(self._ck.coords(out))
            action.append(tuple(rows))
        return FiniteModule(S, self.invariants, tuple(action), f"{self.source.name} (x) {S.name}")

    @cached_property
    def restricted(self) -> FiniteModule:
        return restrict(self.module, self.emb)

    @cached_property
    def natural(self) -> ModuleMap:
        """``m -> m (x) 1`` as a map of ``R``-modules."""
        S, t, s = self.emb.target, self._t, self._s
        rows = []
        for a in range(t):
            x = [0] * (t * s)
            x[a * s:(a + 1) * s] = list(S.unit)
            rows.append(self._ck.coords(x))
        return ModuleMap(self.source, self.restricted, tuple(rows))

    def class_of(self, a: int, s_coords: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of ``g_a (x) s``."""
        x = [0] * (self._t * self._s)
        x[a * self._s:(a + 1) * self._s] = list(s_coords)
        return self._ck.coords(x)

    def generator_lift(self, j: int) -> list[int]:
        return self._ck.lift(j)


def _tensor_from_presentation(P: Presentation, emb: RingEmbedding) -> TensorProduct:
    return TensorProduct(P, emb)


def tensor_with_extension(M: FiniteModule, emb: RingEmbedding) -> TensorProduct:
    """``M (x)_R S`` for ``emb: R -> S``; see :class:`TensorProduct`."""
    if M.ring is not emb.source:
        raise ValueError("module is not over the source of the embedding")
    return TensorProduct(_cached_presentation(M), emb)


# ---------------------------------------------------------------- flatness etc.

def ideal_span_in(emb: RingEmbedding, ideal: Iterable[int], target: Iterable[int] | None = None) -> frozenset:
    """Additive span of ``lam(I) T`` inside ``S`` (``T`` defaults to all of ``S``)."""
    S = emb.target
    I = np.array(sorted(set(emb.map[np.fromiter(ideal, dtype=np.int64)].tolist())), dtype=np.int64)
    T = np.arange(S.order) if target is None else np.array(sorted(target), dtype=np.int64)
    prods = np.unique(S.mul_table[np.ix_(I, T)])
    return additive_span(S, prods.tolist())


def flatness_witness(emb: RingEmbedding):
    """First right ideal ``I`` of ``R`` with ``I (x) S -> S`` not injective, else ``None``."""
    from .ideals import enumerate_right_ideals
    R = emb.source
    RR = regular_module(R)
    for I in enumerate_right_ideals(R):
        if len(I) in (1, R.order):
            continue
        Imod, _ = Submodule(RR, I.elements).as_module()
        T = tensor_with_extension(Imod, emb)
        if T.order != len(ideal_span_in(emb, I.elements)):
            return I
    return None


def is_flat_left(emb: RingEmbedding) -> bool:
    """Is the extension ``S`` flat as a left ``R``-module?"""
    return flatness_witness(emb) is None


def is_flat_right(emb: RingEmbedding) -> bool:
    """Is ``S`` flat as a right ``R``-module?  (Left flatness over the opposite rings.)"""
    return is_flat_left(emb.opposite())


def generating_set(M: FiniteModule) -> list[int]:
    """Greedy small set of elements generating ``M`` as an ``R``-module."""
    gens: list[int] = []
    cur = Submodule(M, frozenset({0}))
    for x in range(M.order):
        if cur.order == M.order:
            break
        if x not in cur.elements:
            gens.append(x)
            cur = submodule_generated(M, gens)
    return gens


def is_projective(M: FiniteModule) -> bool:
    """Does the canonical cover ``R^n -> M`` split?"""
    if M.order == 1:
        return True
    R = M.ring
    gens = generating_set(M)
    F = free_module(R, len(gens))
    k, t = R.rank, M.ngens
    # pi sends slot j, basis e_i to x_j e_i
    rows = []
    for j, x in enumerate(gens):
        xc = np.asarray(M.coords(x), dtype=np.int64)
        for i in range(k):
            rows.append(tuple(int(v) for v in (xc @ M.basis_actions[i]) % M._m))
    pi = ModuleMap(F, M, tuple(rows))
    H = hom(M, F)
    comps = [h.then(pi).array.ravel().tolist() for h in H.basis]
    mods = [M.moduli[b] for _ in range(t) for b in range(t)]
    target = np.eye(t, dtype=np.int64).ravel().tolist()
    if not comps:
        return False
    return Congruence(comps, len(comps), mods).solve(target) is not None


def singular_submodule(M: FiniteModule) -> Submodule:
    """``Z(M)``: elements whose annihilator is an essential right ideal."""
    from .ideals import is_essential_set
    R = M.ring
    out = [x for x in range(M.order) if is_essential_set(R, M.annihilator(x))]
    return Submodule(M, frozenset(out))


def is_nonsingular(M: FiniteModule) -> bool:
    return singular_submodule(M).is_zero()
