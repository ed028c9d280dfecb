"""Right ideals, dense and essential ideals, and Gabriel filters.

Ideals are stored as frozen sets of element indices of their ring.  Every
filter is an explicit finite set of ideals, so the axioms can be checked by
exhaustive scans.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import CapExceeded, InternalViolation
from .rings import FiniteRing, RingEmbedding, Subring, additive_span

DEFAULT_IDEAL_CAP = 100_000


@dataclass(frozen=True, eq=False)
class RightIdeal:
    ring: FiniteRing
    elements: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(int(x) for x in self.elements))

    def __eq__(self, other):
        return isinstance(other, RightIdeal) and other.ring is self.ring \
            and other.elements == self.elements

    def __hash__(self):
        return hash((id(self.ring), self.elements))

    def __len__(self):
        return len(self.elements)

    def __le__(self, other):
        return self.elements <= other.elements

    def __lt__(self, other):
        return self.elements < other.elements

    def __and__(self, other):
        return RightIdeal(self.ring, self.elements & other.elements)

    def __repr__(self):
        return f"RightIdeal(order={len(self)} in {self.ring.name or '?'})"

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    @property
    def is_zero(self) -> bool:
        return len(self.elements) == 1

    @property
    def is_whole(self) -> bool:
        return len(self.elements) == self.ring.order

    @cached_property
    def dense(self) -> bool:
        return is_dense(self)

    @cached_property
    def essential(self) -> bool:
        return is_essential(self)

    def label(self) -> str:
        R = self.ring
        if self.is_zero:
            return "0"
        if self.is_whole:
            return "R"
        gens = _small_generating_set(R, self.elements)
        return " + ".join(f"{_fmt(R.coords(g))}R" for g in gens)


def _fmt(c) -> str:
    return "(" + ",".join(map(str, c)) + ")"


def _small_generating_set(R: FiniteRing, elems: frozenset) -> list[int]:
    gens: list[int] = []
    cur = frozenset({0})
    for x in sorted(elems):
        if x not in cur:
            gens.append(x)
            cur = principal_sum(R, cur, x)
    return gens


def principal_sum(R: FiniteRing, I: frozenset, x: int) -> frozenset:
    """``I + xR``."""
    return additive_span(R, R.mul_table[x].tolist(), base=I)


def _ring(R) -> FiniteRing:
    return R.as_ring()[0] if isinstance(R, Subring) else R


_LATTICES: dict = {}


def enumerate_right_ideals(R, cap: int = DEFAULT_IDEAL_CAP) -> list[RightIdeal]:
    """Every right ideal of ``R`` (including 0 and R), smallest first."""
    R = _ring(R)
    hit = _LATTICES.get(id(R))
    if hit is not None and hit[0] is R:
        if len(hit[1]) > cap:
            raise CapExceeded(cap, "right ideals")
        return hit[1]
    zero = frozenset({0})
    found = {zero}
    queue = deque([zero])
    while queue:
        I = queue.popleft()
        for x in range(R.order):
            if x in I:
                continue
            J = principal_sum(R, I, x)
            if J not in found:
                if len(found) >= cap:
                    raise CapExceeded(cap, "right ideals")
                found.add(J)
                queue.append(J)
    out = sorted((RightIdeal(R, I) for I in found), key=lambda I: (len(I), sorted(I.elements)))
    _LATTICES[id(R)] = (R, out)
    return out


def ideal_generated(R: FiniteRing, xs: Iterable[int]) -> RightIdeal:
    I = frozenset({0})
    for x in xs:
        I = principal_sum(R, I, int(x))
    return RightIdeal(R, I)


def colon_in_ring(I: RightIdeal, x: int) -> RightIdeal:
    """``(I : x) = {r : x r in I}``."""
    R = I.ring
    return RightIdeal(R, frozenset(np.flatnonzero(I.mask[R.mul_table[x]]).tolist()))


def colon(N, m: int) -> RightIdeal:
    """``(N : m)`` for a submodule ``N`` of a module and an element ``m``.

    ``N`` may also be a :class:`RightIdeal`, read as a submodule of the
    regular module.
    """
    if isinstance(N, RightIdeal):
        return colon_in_ring(N, m)
    M = N.parent
    return RightIdeal(M.ring, M.colon(N.elements, m))


def is_dense_set(R: FiniteRing, elems: Iterable[int]) -> bool:
    """For every ``x`` and every ``y != 0``, ``y (I : x) != 0``."""
    mask = np.zeros(R.order, dtype=bool)
    mask[list(elems)] = True
    M = R.mul_table
    for x in range(R.order):
        C = np.flatnonzero(mask[M[x]])
        hits = (M[1:][:, C] != 0).any(axis=1)
        if not hits.all():
            return False
    return True


def is_dense(I: RightIdeal) -> bool:
    return is_dense_set(I.ring, I.elements)


def is_essential_set(R: FiniteRing, elems: Iterable[int]) -> bool:
    """Every nonzero principal right ideal ``xR`` meets ``I`` nontrivially."""
    mask = np.zeros(R.order, dtype=bool)
    mask[list(elems)] = True
    M = R.mul_table
    meets = (mask[M] & (M != 0)).any(axis=1)
    return bool(meets[1:].all())


def is_essential(I: RightIdeal) -> bool:
    return is_essential_set(I.ring, I.elements)


@dataclass(frozen=True)
class IdealFlags:
    dense: bool
    essential: bool


def classify_right_ideal(I: RightIdeal) -> IdealFlags:
    return IdealFlags(I.dense, I.essential)


def minimal_dense_ideal(R) -> RightIdeal:
    R = _ring(R)
    dense = [I for I in enumerate_right_ideals(R) if I.dense]
    D = R.all_elements
    for I in dense:
        D = D & I.elements
    out = RightIdeal(R, D)
    if not out.dense:
        raise InternalViolation("intersection of dense right ideals is not dense")
    return out


def left_annihilator(R: FiniteRing, elems: Iterable[int]) -> frozenset:
    E = np.array(sorted(set(elems)), dtype=np.int64)
    return frozenset(np.flatnonzero((R.mul_table[:, E] == 0).all(axis=1)).tolist())


# ---------------------------------------------------------------- filters

@dataclass(frozen=True, eq=False)
class GabrielFilter:
    """An explicit set of right ideals of a finite ring."""

    ring: FiniteRing
    members: frozenset  # of frozensets of element indices
    name: str = field(default="", compare=False)

    def __eq__(self, other):
        return isinstance(other, GabrielFilter) and other.ring is self.ring \
            and other.members == self.members

    def __hash__(self):
        return hash((id(self.ring), self.members))

    def __contains__(self, I) -> bool:
        return (I.elements if isinstance(I, RightIdeal) else frozenset(I)) in self.members

    def __len__(self):
        return len(self.members)

    def __le__(self, other):
        return self.members <= other.members

    @cached_property
    def ideals(self) -> list[RightIdeal]:
        return sorted((RightIdeal(self.ring, I) for I in self.members),
                      key=lambda I: (len(I), sorted(I.elements)))

    @cached_property
    def basis(self) -> list[RightIdeal]:
        """The minimal members."""
        return [I for I in self.ideals if not any(J.elements < I.elements for J in self.ideals)]

    @cached_property
    def minimum(self) -> RightIdeal | None:
        b = self.basis
        return b[0] if len(b) == 1 else None


def lambek_filter(R) -> GabrielFilter:
    R = _ring(R)
    return GabrielFilter(R, frozenset(I.elements for I in enumerate_right_ideals(R) if I.dense),
                         "Lambek")


def trivial_filter(R: FiniteRing) -> GabrielFilter:
    return GabrielFilter(R, frozenset({R.all_elements}), "{R}")


def ideal_span(emb: RingEmbedding, ideal: Iterable[int], within: Iterable[int] | None = None) -> frozenset:
    """Additive span of ``lam(I) T`` inside the target (``T`` = everything by default)."""
    S = emb.target
    I = np.unique(emb.map[np.fromiter(ideal, dtype=np.int64)])
    T = np.arange(S.order) if within is None else np.array(sorted(within), dtype=np.int64)
    return additive_span(S, np.unique(S.mul_table[np.ix_(I, T)]).tolist())


def filter_of_extension(emb: RingEmbedding, within: Subring | None = None) -> GabrielFilter:
    """``{I : I S = S}`` for ``emb: R -> S``.

    With ``within`` given, ``S`` is that subring of the target of ``emb``.
    """
    R = emb.source
    target = emb.target.all_elements if within is None else within.elements
    members = frozenset(I.elements for I in enumerate_right_ideals(R)
                        if ideal_span(emb, I.elements, target) == target)
    return GabrielFilter(R, members, "filter of extension")


@dataclass(frozen=True)
class AxiomCheck:
    ok: bool
    violations: tuple  # (axiom, detail) pairs

    def __bool__(self):
        return self.ok

    @property
    def first(self):
        return self.violations[0] if self.violations else None

    def failed(self, axiom: str) -> bool:
        return any(v[0] == axiom for v in self.violations)


def check_gabriel_axioms(F: GabrielFilter, stop_at_first: bool = False) -> AxiomCheck:
    """Exhaustive scan of upward closure, T1, T2 and closure under intersections."""
    R = F.ring
    lattice = enumerate_right_ideals(R)
    members = F.members
    out: list = []

    def bad(axiom, detail):
        out.append((axiom, detail))
        return stop_at_first

    if not members:
        return AxiomCheck(False, (("nonempty", "filter has no members"),))
    for J in lattice:
        if J.elements not in members and any(I <= J.elements for I in members):
            if bad("upward", (sorted(J.elements),)):
                return AxiomCheck(False, tuple(out))
    for I in F.ideals:
        for r in range(R.order):
            C = colon_in_ring(I, r)
            if C.elements not in members:
                if bad("T1", (sorted(I.elements), r, sorted(C.elements))):
                    return AxiomCheck(False, tuple(out))
    for J in lattice:
        if J.elements in members:
            continue
        colons = {r: colon_in_ring(J, r).elements in members for r in range(R.order)}
        for I in F.ideals:
            if all(colons[r] for r in I.elements):
                if bad("T2", (sorted(J.elements), sorted(I.elements))):
                    return AxiomCheck(False, tuple(out))
                break
    for I in members:
        for J in members:
            if (I & J) not in members:
                if bad("intersection", (sorted(I), sorted(J))):
                    return AxiomCheck(False, tuple(out))
    return AxiomCheck(not out, tuple(out))


def torsion_elements(M, F: GabrielFilter) -> frozenset:
    """``{m : (0 : m) in F}`` for a module ``M`` over the filter's ring."""
    return frozenset(x for x in range(M.order) if M.annihilator(x) in F.members)
