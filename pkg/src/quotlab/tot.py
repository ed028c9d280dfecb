"""The largest perfect ring of quotients, computed four ways.

* ``morita_chain``: iterate ``S -> S'`` from the maximal ring of quotients.
* ``simplified_chain``: iterate ``Q -> {q : (R : q) Q = Q}``; needs every step flat.
* ``qtot_shortcut``: one step of the above, valid for right semihereditary rings.
* ``brute_force_qtot``: enumerate intermediate subrings and keep the perfect ones.

Chains are strictly decreasing subsets of a finite carrier, so they stop after
at most ``|Q| - |R|`` steps and are indexed by natural numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import (CapExceeded, DirectednessViolation, FlatnessFailure, InternalViolation,
                     PreconditionFailure)
from .ideals import enumerate_right_ideals, ideal_span
from .modules import Submodule, is_projective, regular_module
from .quotients import QMaxRealization, is_perfect_filter
from .rings import (DEFAULT_SUBRING_CAP, RingEmbedding, Subring, is_subring_set,
                    subring_generated)


@dataclass(frozen=True)
class StepFlags:
    flat_left: bool
    epi: bool
    perfect_extension: bool
    filter_perfect: bool


@dataclass
class ChainReport:
    ring: str
    method: str
    steps: list  # of Subring, Q_0 first
    flags: list = field(default_factory=list)
    gamma: Optional[int] = None
    note: str = ""

    @property
    def fixpoint(self) -> Subring:
        return self.steps[-1]

    def orders(self) -> list[int]:
        return [T.order for T in self.steps]


def step_flags(qm: QMaxRealization, T: Subring) -> StepFlags:
    flat = qm.is_flat_left(T)
    epi = qm.is_epi(T)
    fp = bool(is_perfect_filter(qm, qm.filter_of(T), sample=[])) if flat else False
    return StepFlags(flat, epi, flat and epi, fp)


def _colon_in(emb: RingEmbedding, x: int) -> frozenset:
    """``(R : x) = {a in R : x lam(a) in lam(R)}`` inside the target of ``emb``."""
    S = emb.target
    mask = np.zeros(S.order, dtype=bool)
    mask[list(emb.image)] = True
    return frozenset(np.flatnonzero(mask[S.mul_table[x, emb.map]]).tolist())


def morita_prime(emb: RingEmbedding, within: Optional[Subring] = None) -> Subring:
    """``S' = {s in S : (R : s lam(r)) S = S for all r in R}``.

    ``S`` is the whole target of ``emb`` or the subring ``within``.
    """
    A = emb.target
    S = A.all_elements if within is None else within.elements
    spans: dict = {}

    def spans_S(x):
        I = _colon_in(emb, x)
        hit = spans.get(I)
        if hit is None:
            hit = spans[I] = ideal_span(emb, I, S) == S
        return hit

    lam = emb.map
    keep = [s for s in sorted(S) if all(spans_S(int(x)) for x in A.mul_table[s, lam])]
    out = frozenset(keep)
    w = is_subring_set(A, out)
    if w is not None or not emb.image <= out:
        raise InternalViolation(f"S' is not a subring containing R: {w}")
    return Subring(A, out)


def _chain_flags(qm, steps):
    return [step_flags(qm, T) for T in steps]


def morita_chain(qm: QMaxRealization) -> ChainReport:
    steps = [qm.top]
    while True:
        nxt = morita_prime(qm.lam, steps[-1])
        if nxt == steps[-1]:
            break
        steps.append(nxt)
    fix = steps[-1]
    if not qm.is_perfect(fix):
        raise InternalViolation("Morita fixpoint is not a perfect extension")
    return ChainReport(qm.base.name, "morita", steps, _chain_flags(qm, steps), len(steps) - 1)


def filter_step(qm: QMaxRealization, T: Subring) -> frozenset:
    """``{q : (R : q) T = T}``."""
    spans: dict = {}
    out = []
    for q in range(qm.carrier.order):
        I = qm.colon(q)
        hit = spans.get(I)
        if hit is None:
            hit = spans[I] = ideal_span(qm.lam, I, T.elements) == T.elements
        if hit:
            out.append(q)
    return frozenset(out)


def simplified_chain(qm: QMaxRealization) -> ChainReport:
    steps = [qm.top]
    while True:
        cur = steps[-1]
        if not qm.is_flat_left(cur):
            raise FlatnessFailure(len(steps) - 1)
        elems = filter_step(qm, cur)
        w = is_subring_set(qm.carrier, elems)
        if w is not None:
            raise InternalViolation(f"Q_{len(steps)} is not a subring: {w}")
        nxt = Subring(qm.carrier, elems)
        if nxt == cur:
            break
        if not nxt.elements < cur.elements:
            raise InternalViolation("filter chain is not decreasing")
        steps.append(nxt)
    fix = steps[-1]
    order, image = qm.tensor_of(fix, fix)
    if order != fix.order or image != fix.elements:
        raise InternalViolation("fixpoint fails Q (x) Q = Q")
    return ChainReport(qm.base.name, "filter", steps, _chain_flags(qm, steps), len(steps) - 1)


# ---------------------------------------------------------------- conditions

@dataclass
class ConditionReport:
    ring: str
    side: str  # "C" (left flatness) or "C'" (right flatness)
    verdict: Optional[bool]  # None when the enumeration hit the cap
    witness: Optional[Subring] = None
    examined: int = 0
    cap_hit: bool = False


def condition_report(qm: QMaxRealization, side: str = "C", cap: int = DEFAULT_SUBRING_CAP) -> ConditionReport:
    if side not in ("C", "C'"):
        raise ValueError(f"side must be C or C', not {side!r}")
    try:
        subs = qm.intermediate_subrings(cap)
    except CapExceeded:
        return ConditionReport(qm.base.name, side, None, cap_hit=True)
    test = qm.is_flat_left if side == "C" else qm.is_flat_right
    for n, T in enumerate(subs, 1):
        if not test(T):
            return ConditionReport(qm.base.name, side, False, T, n)
    return ConditionReport(qm.base.name, side, True, None, len(subs))


def is_right_semihereditary(R) -> bool:
    """Every right ideal projective (all right ideals of a finite ring are finitely generated)."""
    RR = regular_module(R)
    for I in enumerate_right_ideals(R):
        if len(I) in (1, R.order):
            continue
        M, _ = Submodule(RR, I.elements).as_module()
        if not is_projective(M):
            return False
    return True


def qtot_shortcut(qm: QMaxRealization) -> Subring:
    if not is_right_semihereditary(qm.base):
        raise PreconditionFailure(f"{qm.base.name} is not right semihereditary")
    elems = filter_step(qm, qm.top)
    w = is_subring_set(qm.carrier, elems)
    if w is not None:
        raise InternalViolation(f"shortcut set is not a subring: {w}")
    return Subring(qm.carrier, elems)


@dataclass
class OracleResult:
    maximum: Subring
    family: list  # perfect intermediate subrings
    examined: int


def perfect_family(qm: QMaxRealization, cap: int = DEFAULT_SUBRING_CAP) -> OracleResult:
    subs = qm.intermediate_subrings(cap)
    fam = [T for T in subs if qm.is_perfect(T)]
    members = {T.elements for T in fam}
    for A, B in combinations(fam, 2):
        J = subring_generated(qm.carrier, sorted(A.elements | B.elements))
        if J.elements not in members:
            raise DirectednessViolation(f"join of perfect subrings of orders {A.order}, {B.order} is not perfect")
    top = max(fam, key=lambda T: T.order)
    if not all(T.elements <= top.elements for T in fam):
        raise DirectednessViolation("perfect family has no maximum")
    return OracleResult(top, fam, len(subs))


def brute_force_qtot(qm: QMaxRealization, cap: int = DEFAULT_SUBRING_CAP) -> Subring:
    return perfect_family(qm, cap).maximum


def shortcut_chain(qm: QMaxRealization) -> ChainReport:
    T = qtot_shortcut(qm)
    steps = [qm.top] if T == qm.top else [qm.top, T]
    return ChainReport(qm.base.name, "shortcut", steps, _chain_flags(qm, steps), len(steps) - 1)


def oracle_chain(qm: QMaxRealization, cap: int = DEFAULT_SUBRING_CAP) -> ChainReport:
    res = perfect_family(qm, cap)
    return ChainReport(qm.base.name, "oracle", [res.maximum], _chain_flags(qm, [res.maximum]),
                       None, note=f"{len(res.family)} perfect of {res.examined} intermediate subrings")
