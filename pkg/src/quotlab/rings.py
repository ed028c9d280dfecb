"""Finite associative unital rings in structure-constant form.

A ring of rank ``k`` has additive group ``Z/d_1 + ... + Z/d_k`` with basis
``e_1..e_k``; ``mul[i][j]`` holds the coordinates of ``e_i e_j``.  Elements
are addressed by an integer index (mixed radix, first coordinate most
significant), so element sets sort lexicographically by coordinates.
Multiplication and addition tables are derived on demand.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (AssociativityViolation, CapExceeded, CompatibilityViolation,
                     NotASubring, ShapeError, UnitViolation)
from .intlinalg import Subgroup

DEFAULT_SUBRING_CAP = 10_000
_CHUNK = 1 << 22


@dataclass(frozen=True, eq=False)
class FiniteRing:
    moduli: tuple[int, ...]
    mul: tuple[tuple[tuple[int, ...], ...], ...]
    unit: tuple[int, ...]
    name: str = ""

    def __repr__(self):
        return f"FiniteRing({self.name or '?'}, order={self.order})"

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        return prod(self.moduli)

    @cached_property
    def _d(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    @cached_property
    def strides(self) -> np.ndarray:
        s = [1] * self.rank
        for i in range(self.rank - 2, -1, -1):
            s[i] = s[i + 1] * self.moduli[i + 1]
        return np.array(s, dtype=np.int64)

    @cached_property
    def elements(self) -> np.ndarray:
        """``order x rank`` array of coordinates, row ``a`` is element ``a``."""
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(list(product(*(range(d) for d in self.moduli))), dtype=np.int64)

    def index_of(self, coords) -> int | np.ndarray:
        c = np.asarray(coords, dtype=np.int64) % self._d
        return c @ self.strides if c.ndim > 1 else int(c @ self.strides)

    def coords(self, a: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.elements[a])

    @cached_property
    def structure(self) -> np.ndarray:
        return np.array(self.mul, dtype=np.int64).reshape(self.rank, self.rank, self.rank)

    @cached_property
    def zero(self) -> int:
        return 0

    @cached_property
    def one(self) -> int:
        return self.index_of(self.unit)

    def basis_index(self, i: int) -> int:
        return int(self.strides[i]) if self.moduli[i] > 1 else 0

    def element(self, a) -> "RingElement":
        if not isinstance(a, (int, np.integer)):
            a = self.index_of(a)
        return RingElement(self, self.coords(int(a)))

    def _product_coords(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        P = np.einsum("ai,ijl->ajl", X, self.structure)
        return np.einsum("ajl,bj->abl", P, Y) % self._d

    @cached_property
    def mul_table(self) -> np.ndarray:
        N, X = self.order, self.elements
        out = np.empty((N, N), dtype=np.int64)
        step = max(1, _CHUNK // max(1, N * max(1, self.rank)))
        for a in range(0, N, step):
            out[a:a + step] = self._product_coords(X[a:a + step], X) @ self.strides
        return out

    @cached_property
    def add_table(self) -> np.ndarray:
        N, X = self.order, self.elements
        out = np.empty((N, N), dtype=np.int64)
        step = max(1, _CHUNK // max(1, N * max(1, self.rank)))
        for a in range(0, N, step):
            out[a:a + step] = ((X[a:a + step, None, :] + X[None, :, :]) % self._d) @ self.strides
        return out

    @cached_property
    def neg(self) -> np.ndarray:
        return self.index_of((-self.elements) % self._d)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def times(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def scalar(self, n: int) -> int:
        return self.index_of([n * u for u in self.unit])

    @cached_property
    def all_elements(self) -> frozenset:
        return frozenset(range(self.order))

    @cached_property
    def is_commutative(self) -> bool:
        T = self.mul_table
        return bool((T == T.T).all())


@dataclass(frozen=True)
class RingElement:
    ring: FiniteRing
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords",
                           tuple(int(c) % d for c, d in zip(self.coords, self.ring.moduli)))

    @property
    def index(self) -> int:
        return self.ring.index_of(self.coords)

    def __add__(self, other):
        return RingElement(self.ring, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return RingElement(self.ring, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return self.ring.element(self.ring.times(self.index, other.index))


def _as_index(ring: FiniteRing, x) -> int:
    if isinstance(x, RingElement):
        if x.ring is not ring:
            raise ValueError("element belongs to another ring")
        return x.index
    return int(x)


def validate_ring(definition: Union[dict, FiniteRing]) -> FiniteRing:
    """Check the raw structure-constant data and return a :class:`FiniteRing`.

    ``definition`` is either a mapping with keys ``moduli``, ``mul``, ``unit``
    (and optionally ``name``) or an unvalidated ring.
    """
    if isinstance(definition, FiniteRing):
        moduli, mul, unit, name = (definition.moduli, definition.mul,
                                   definition.unit, definition.name)
    else:
        try:
            moduli, mul, unit = definition["moduli"], definition["mul"], definition["unit"]
        except KeyError as e:
            raise ShapeError(f"missing field {e.args[0]!r}") from None
        name = definition.get("name", "")
    moduli = tuple(int(d) for d in moduli)
    k = len(moduli)
    if any(d < 1 for d in moduli):
        raise ShapeError("moduli must be positive")
    if len(unit) != k or len(mul) != k or any(len(row) != k for row in mul) or \
            any(len(v) != k for row in mul for v in row):
        raise ShapeError(f"structure tensor must be {k}x{k} vectors of length {k}")
    mul = tuple(tuple(tuple(int(x) % d for x, d in zip(v, moduli)) for v in row) for row in mul)
    unit = tuple(int(x) % d for x, d in zip(unit, moduli))
    d = np.array(moduli, dtype=np.int64)
    C = np.array(mul, dtype=np.int64).reshape(k, k, k)
    for i in range(k):
        for j in range(k):
            if ((moduli[i] * C[i, j]) % d).any() or ((moduli[j] * C[i, j]) % d).any():
                raise CompatibilityViolation(i, j)
    # (e_i e_j) e_l = sum_m c_ijm c_ml ;  e_i (e_j e_l) = sum_m c_jlm c_im
    left = np.einsum("ijm,mlp->ijlp", C, C) % d
    right = np.einsum("jlm,imp->ijlp", C, C) % d
    bad = np.argwhere((left != right).any(axis=3))
    if len(bad):
        raise AssociativityViolation(*map(int, bad[0]))
    u = np.array(unit, dtype=np.int64)
    eye = np.eye(k, dtype=np.int64)
    ue = np.einsum("m,mip->ip", u, C) % d
    eu = np.einsum("m,imp->ip", u, C) % d
    for i in range(k):
        if (ue[i] != eye[i] % d).any() or (eu[i] != eye[i] % d).any():
            raise UnitViolation(i)
    return FiniteRing(moduli, mul, unit, name)


def opposite(R: FiniteRing) -> FiniteRing:
    k = R.rank
    mul = tuple(tuple(R.mul[j][i] for j in range(k)) for i in range(k))
    return FiniteRing(R.moduli, mul, R.unit, f"{R.name}^op")


# ---------------------------------------------------------------- embeddings

@dataclass(frozen=True, eq=False)
class RingEmbedding:
    """Injective unital ring homomorphism given on the additive basis."""

    source: FiniteRing
    target: FiniteRing
    images: tuple[tuple[int, ...], ...]

    @cached_property
    def map(self) -> np.ndarray:
        """Element index in ``source`` -> element index in ``target``."""
        X = self.source.elements
        I = np.array(self.images, dtype=np.int64).reshape(self.source.rank, self.target.rank)
        return self.target.index_of((X @ I) % self.target._d)

    @cached_property
    def image(self) -> frozenset:
        return frozenset(int(a) for a in self.map)

    def validate(self) -> "RingEmbedding":
        S, T, f = self.source, self.target, self.map
        if len(set(f.tolist())) != S.order:
            raise ValueError("embedding not injective (or not well defined)")
        for i, d in enumerate(S.moduli):
            if T.index_of([d * x for x in self.images[i]]) != 0:
                raise ValueError(f"image of e{i} not killed by {d}")
        if f[S.one] != T.one:
            raise ValueError("unit not preserved")
        if (T.add_table[np.ix_(f, f)] != f[S.add_table]).any():
            raise ValueError("not additive")
        if (T.mul_table[np.ix_(f, f)] != f[S.mul_table]).any():
            raise ValueError("not multiplicative")
        return self

    def compose(self, other: "RingEmbedding") -> "RingEmbedding":
        """``other`` after ``self``."""
        imgs = tuple(other.target.coords(int(other.map[self.target.index_of(v)]))
                     for v in self.images)
        return RingEmbedding(self.source, other.target, imgs)

    def opposite(self) -> "RingEmbedding":
        return RingEmbedding(opposite_cached(self.source), opposite_cached(self.target),
                             self.images)


_OPP: dict = {}


def opposite_cached(R: FiniteRing) -> FiniteRing:
    key = id(R)
    hit = _OPP.get(key)
    if hit is None or hit[0] is not R:
        hit = (R, opposite(R))
        _OPP[key] = hit
    return hit[1]


def identity_embedding(R: FiniteRing) -> RingEmbedding:
    return RingEmbedding(R, R, tuple(tuple(int(i == j) for j in range(R.rank))
                                     for i in range(R.rank)))


# ---------------------------------------------------------------- subsets

def additive_span(R: FiniteRing, gens: Iterable[int], base: Iterable[int] = (0,)) -> frozenset:
    """Additive subgroup generated by ``base`` (assumed a subgroup) and ``gens``."""
    A = R.add_table
    H = np.array(sorted(set(int(b) for b in base)), dtype=np.int64)
    members = set(H.tolist())
    for g in gens:
        g = int(g)
        if g in members:
            continue
        parts = [H]
        cur = H
        while True:
            cur = A[cur, g]
            if int(cur[0]) in members:
                break
            parts.append(cur)
        H = np.concatenate(parts)
        members = set(H.tolist())
    return frozenset(members)


def additive_generators(R: FiniteRing, elems: Iterable[int]) -> list[int]:
    """A small (greedy) additive generating set of the subgroup ``elems``."""
    gens, span = [], frozenset({0})
    for a in sorted(elems):
        if a not in span:
            gens.append(a)
            span = additive_span(R, [a], span)
    return gens


def is_subring_set(R: FiniteRing, elems: frozenset):
    """Return ``None`` if ``elems`` is a unital subring, else a witness tuple."""
    if R.one not in elems:
        return ("missing unit", R.one)
    E = np.array(sorted(elems), dtype=np.int64)
    sums = R.add_table[np.ix_(E, E)]
    prods = R.mul_table[np.ix_(E, E)]
    mask = np.zeros(R.order, dtype=bool)
    mask[E] = True
    for label, tab in (("sum", sums), ("product", prods)):
        bad = np.argwhere(~mask[tab])
        if len(bad):
            i, j = bad[0]
            return (label, int(E[i]), int(E[j]))
    return None


@dataclass(frozen=True, eq=False)
class Subring:
    ambient: FiniteRing
    elements: frozenset
    generators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(int(x) for x in self.elements))

    def __eq__(self, other):
        return isinstance(other, Subring) and other.ambient is self.ambient \
            and other.elements == self.elements

    def __hash__(self):
        return hash((id(self.ambient), self.elements))

    def __le__(self, other):
        return self.elements <= other.elements

    def __lt__(self, other):
        return self.elements < other.elements

    def __contains__(self, x):
        return _as_index(self.ambient, x) in self.elements

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def canonical(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))

    def check(self) -> "Subring":
        w = is_subring_set(self.ambient, self.elements)
        if w is not None:
            raise NotASubring(w[1:], w[0])
        return self

    @cached_property
    def _realisation(self):
        A = self.ambient
        gens = [A.coords(a) for a in additive_generators(A, self.elements)]
        sg = Subgroup(gens or [[0] * A.rank], A.moduli)
        orders = sg.orders
        coords_of = {}
        for c in product(*(range(d) for d in orders)):
            coords_of[A.index_of(sg.combine(c))] = c
        if set(coords_of) != self.elements:
            raise NotASubring((), "not an additive subgroup")
        k = len(orders)
        basis_idx = [A.index_of(b) for b in sg.basis]
        mul = tuple(tuple(coords_of[A.times(basis_idx[i], basis_idx[j])] for j in range(k))
                    for i in range(k))
        ring = FiniteRing(orders, mul, coords_of[A.one], "")
        emb = RingEmbedding(ring, A, tuple(tuple(int(x) for x in b) for b in sg.basis))
        return ring, emb, coords_of

    def as_ring(self) -> tuple[FiniteRing, RingEmbedding]:
        """The subring as a ring in its own right, with its inclusion."""
        ring, emb, _ = self._realisation
        return ring, emb

    def local_index(self, a: int) -> int:
        ring, _, coords_of = self._realisation
        return ring.index_of(coords_of[a])


def subring_generated(ambient: Union[FiniteRing, Subring], seeds: Iterable) -> Subring:
    """Smallest unital subring of ``ambient`` containing ``seeds``."""
    if isinstance(ambient, Subring):
        R = ambient.ambient
        seeds = [_as_index(R, s) for s in seeds]
        if not set(seeds) <= ambient.elements:
            raise ValueError("seed outside ambient subring")
    else:
        R = ambient
        seeds = [_as_index(R, s) for s in seeds]
    gens = sorted(set(seeds) - {0, R.one})
    M = R.mul_table
    monoid = {R.one}
    frontier = [R.one]
    g = np.array(gens, dtype=np.int64)
    while frontier and len(g):
        new = set(M[np.ix_(np.array(frontier), g)].ravel().tolist()) - monoid
        monoid |= new
        frontier = sorted(new)
    elems = additive_span(R, sorted(monoid))
    return Subring(R, elems, tuple(gens))


def enumerate_intermediate_subrings(emb: RingEmbedding, cap: int = DEFAULT_SUBRING_CAP) -> list[Subring]:
    """All subrings ``T`` with ``image(emb) <= T <= target``, smallest first."""
    S = emb.target
    base = subring_generated(S, sorted(emb.image))
    found = {base.elements: base}
    queue = deque([base])
    while queue:
        T = queue.popleft()
        for x in range(S.order):
            if x in T.elements:
                continue
            U = subring_generated(S, list(T.generators) + [x])
            if U.elements not in found:
                if len(found) >= cap:
                    raise CapExceeded(cap, "intermediate subrings")
                found[U.elements] = U
                queue.append(U)
    return sorted(found.values(), key=lambda T: (T.order, T.canonical))


# ---------------------------------------------------------------- predicates

def _ring_of(R) -> FiniteRing:
    return R.as_ring()[0] if isinstance(R, Subring) else R


def is_von_neumann_regular(R: Union[FiniteRing, Subring]) -> bool:
    R = _ring_of(R)
    M = R.mul_table
    for a in range(R.order):
        if not (M[M[a, :], a] == a).any():
            return False
    return True


def jacobson_radical(R: FiniteRing) -> frozenset:
    from .ideals import enumerate_right_ideals
    ideals = enumerate_right_ideals(R)
    proper = [I for I in ideals if len(I) < R.order]
    maximal = [I for I in proper if not any(I.elements < J.elements for J in proper)]
    rad = R.all_elements
    for I in maximal:
        rad = rad & I.elements
    return rad


def is_semisimple(R: Union[FiniteRing, Subring]) -> bool:
    return jacobson_radical(_ring_of(R)) == frozenset({0})


def regular_elements(R: FiniteRing) -> list[tuple[RingElement, bool]]:
    """Two-sided non-zero-divisors, each with its unit flag."""
    M = R.mul_table
    nz = np.arange(1, R.order)
    out = []
    for x in range(R.order):
        if (M[x, nz] == 0).any() or (M[nz, x] == 0).any():
            continue
        unit = bool(((M[x, :] == R.one) & (M[:, x] == R.one)).any())
        out.append((R.element(x), unit))
    return out


def units(R: FiniteRing) -> frozenset:
    M = R.mul_table
    return frozenset(x for x in range(R.order)
                     if ((M[x, :] == R.one) & (M[:, x] == R.one)).any())


# ---------------------------------------------------------------- isomorphism

def ring_generators(R: FiniteRing) -> list[int]:
    gens: list[int] = []
    cur = subring_generated(R, gens)
    while cur.order < R.order:
        # prefer the element that enlarges the generated subring the most
        best = max((x for x in range(R.order) if x not in cur.elements),
                   key=lambda x: (subring_generated(R, gens + [x]).order, -x))
        gens.append(best)
        cur = subring_generated(R, gens)
    return gens


def _signature(R: FiniteRing, x: int):
    A, M = R.add_table, R.mul_table
    k, y = 1, x
    while y != 0:
        y = A[y, x]
        k += 1
    seen, p = [], x
    while p not in seen:
        seen.append(int(p))
        p = M[p, x]
    return k, len(seen), seen.index(int(p)), len(additive_span(R, seen))


def find_isomorphism(A: FiniteRing, B: FiniteRing) -> np.ndarray | None:
    """An isomorphism ``A -> B`` as an index array, or ``None``."""
    if A.order != B.order or sorted(_signature(A, x) for x in range(A.order)) != \
            sorted(_signature(B, x) for x in range(B.order)):
        return None
    gens = ring_generators(A)
    sigB: dict = {}
    for y in range(B.order):
        sigB.setdefault(_signature(B, y), []).append(y)
    cands = [sigB.get(_signature(A, g), []) for g in gens]
    MA, MB, AA, AB = A.mul_table, B.mul_table, A.add_table, B.add_table
    for images in product(*cands):
        f = {A.one: B.one}
        frontier = [A.one]
        ok = True
        while frontier and ok:
            nxt = []
            for m in frontier:
                for g, h in zip(gens, images):
                    x, y = int(MA[m, g]), int(MB[f[m], h])
                    if x in f:
                        if f[x] != y:
                            ok = False
                            break
                    else:
                        f[x] = y
                        nxt.append(x)
                if not ok:
                    break
            frontier = nxt
        if not ok:
            continue
        monoid = list(f.items())
        g = {0: 0}
        frontier = [0]
        while frontier and ok:
            nxt = []
            for a in frontier:
                for m, fm in monoid:
                    x, y = int(AA[a, m]), int(AB[g[a], fm])
                    if x in g:
                        if g[x] != y:
                            ok = False
                            break
                    else:
                        g[x] = y
                        nxt.append(x)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(g) != A.order or len(set(g.values())) != B.order:
            continue
        phi = np.array([g[a] for a in range(A.order)], dtype=np.int64)
        if (MB[np.ix_(phi, phi)] == phi[MA]).all() and (AB[np.ix_(phi, phi)] == phi[AA]).all():
            return phi
    return None
