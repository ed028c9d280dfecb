"""Machine checks of the structural facts behind the chain constructions.

``verify_suite`` builds everything for one ring and records one
:class:`ClauseResult` per checked statement.  A clause whose hypotheses do not
hold for the ring (for example, a chain step that is not flat) is recorded as
not applicable rather than passed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import CapExceeded, FlatnessFailure, NotASubring
from .ideals import check_gabriel_axioms, enumerate_right_ideals, lambek_filter, torsion_elements
from .modules import Submodule, cyclic_module, quotient, regular_module
from .quotients import (QMaxRealization, build_qmax, filter_minimum, is_perfect_filter,
                        module_of_quotients_map, ring_of_quotients, tensor_kernel)
from .rings import DEFAULT_SUBRING_CAP, FiniteRing, is_von_neumann_regular, regular_elements
from .tot import (condition_report, is_right_semihereditary, morita_chain, perfect_family,
                  qtot_shortcut, simplified_chain)


@dataclass(frozen=True)
class ClauseResult:
    clause: str
    passed: Optional[bool]  # None: hypotheses not met
    detail: str = ""


@dataclass
class VerificationReport:
    ring: str
    gamma: Optional[int] = None
    results: list = field(default_factory=list)

    def add(self, clause: str, passed: Optional[bool], detail: str = ""):
        self.results.append(ClauseResult(clause, passed, detail))

    @property
    def ok(self) -> bool:
        return all(r.passed is not False for r in self.results)

    def failures(self) -> list[ClauseResult]:
        return [r for r in self.results if r.passed is False]

    def matrix(self) -> dict[str, Optional[bool]]:
        """Clause name -> combined verdict (False if any instance failed)."""
        out: dict = {}
        for r in self.results:
            prev = out.get(r.clause, None)
            if r.passed is False or prev is False:
                out[r.clause] = False
            elif r.passed is True or prev is True:
                out[r.clause] = True
            else:
                out[r.clause] = None
        return out


def _quotient_module(qm: QMaxRealization, big, small):
    """``big / small`` as a right ``R``-module (both subrings of the carrier)."""
    M = qm.as_module(big)
    local = frozenset(big.local_index(q) for q in small.elements)
    Q, _ = quotient(M, Submodule(M, local))
    return Q


def verify_suite(R: FiniteRing, cap: int = DEFAULT_SUBRING_CAP,
                 qm: Optional[QMaxRealization] = None) -> VerificationReport:
    rep = VerificationReport(R.name)
    qm = qm or build_qmax(R)
    rep.add("realization", True, f"|D|={len(qm.D)}, |Q_max|={qm.carrier.order}")

    morita = morita_chain(qm)
    try:
        oracle = perfect_family(qm, cap)
    except CapExceeded as e:
        oracle = None
        rep.add("oracle", None, str(e))
    condC = condition_report(qm, "C", cap)
    try:
        chain = simplified_chain(qm)
    except FlatnessFailure as e:
        chain = None
        rep.add("filter chain", None, str(e))

    if oracle is not None:
        rep.add("construction agreement: Morita", morita.fixpoint == oracle.maximum,
                f"orders {morita.fixpoint.order} vs {oracle.maximum.order}")
    if chain is not None:
        rep.gamma = chain.gamma
        if oracle is not None:
            rep.add("construction agreement: filter", chain.fixpoint == oracle.maximum)
        if condC.verdict:
            rep.add("stepwise agreement", chain.steps == morita.steps,
                    f"{chain.orders()} vs {morita.orders()}")
    else:
        rep.gamma = morita.gamma
        if condC.verdict:
            rep.add("stepwise agreement", False, "condition C holds but the filter chain aborted")

    qtot = oracle.maximum if oracle is not None else morita.fixpoint

    if is_right_semihereditary(R):
        sc = qtot_shortcut(qm)
        rep.add("semihereditary shortcut", sc == qtot and (chain is None or chain.gamma <= 1))
    if is_von_neumann_regular(R):
        rep.add("regular collapse", qtot == qm.bottom)
    rep.add("classical quotients", all(u for _, u in regular_elements(R)) and qm.bottom.elements <= qtot.elements)

    fixF = qm.filter_of(qtot)
    rep.add("fixpoint filter perfect", bool(is_perfect_filter(qm, fixF, sample=[])))

    if chain is not None:
        _induction_clauses(qm, chain, qtot, rep)
    _extension_clauses(qm, oracle, rep)
    return rep


def _induction_clauses(qm: QMaxRealization, chain, qtot, rep: VerificationReport):
    g = chain.gamma
    Q = chain.steps + [chain.fixpoint]  # Q_0 .. Q_{g+1}
    F = [lambek_filter(qm.base)]
    for T in Q:
        F.append(qm.filter_of(T))  # F_0 .. F_{g+2}
    perfect_tau = [bool(is_perfect_filter(qm, F[a], sample=[])) for a in range(len(F))]
    perfect_Q = [qm.is_perfect(T) for T in Q]

    for a, T in enumerate(Q):
        try:
            RF = ring_of_quotients(qm, F[a]).subring
            rep.add("chain step is the ring of quotients", RF == T, f"index {a}")
        except NotASubring as e:
            rep.add("chain step is the ring of quotients", False, f"index {a}: {e}")

    n = len(Q)
    for a in range(n):
        for b in range(a):
            Qa, Qb = Q[a], Q[b]
            rep.add("(1) monotone", F[a] <= F[b] and Qa.elements <= Qb.elements, f"{b}<{a}")
            M = _quotient_module(qm, Qb, Qa)
            tors_b = len(torsion_elements(M, F[b])) == M.order
            free_a = torsion_elements(M, F[a]) == frozenset({0})
            rep.add("(2) torsion and torsion-free", tors_b and free_a, f"{b}<{a}")
            order, image = qm.tensor_of(Qa, Qb)
            rep.add("(3) tensor collapse", order == Qb.order and image == Qb.elements, f"{b}<{a}")
            rep.add("(5) equal theories iff perfect", (F[b] == F[a]) == perfect_tau[b], f"{b}<{a}")
    for a in range(n):
        rep.add("(4) Q_tot inside", qtot.elements <= Q[a].elements, f"index {a}")
        rep.add("(6) perfect iff Q_tot", perfect_Q[a] == (Q[a] == qtot), f"index {a}")
        ok = (not perfect_tau[a] or perfect_Q[a]) and (not perfect_Q[a] or perfect_tau[a + 1])
        rep.add("(7) perfectness transfer", ok, f"index {a}")

    # a filter versus the filter of its own ring of quotients
    for a in range(n):
        T = Q[a]
        if not qm.is_flat_left(T):
            continue
        G = F[a + 1]
        rep.add("extension theory is smaller", G <= F[a], f"index {a}")
        rep.add("equal theory iff perfect", (G == F[a]) == perfect_tau[a], f"index {a}")
        if perfect_Q[a]:
            rep.add("perfect extension gives perfect theory", perfect_tau[a + 1], f"index {a}")

    # phi_M : M -> Hom(D_F, M) has torsion kernel and torsion cokernel
    R = qm.base
    modules = [("R", regular_module(R))] + [
        (f"R/I{j}", cyclic_module(R, I.elements))
        for j, I in enumerate(enumerate_right_ideals(R)) if 1 < len(I) < R.order]
    for a in range(len(F)):
        if not check_gabriel_axioms(F[a], stop_at_first=True):
            rep.add("module of quotients", False, f"F_{a} is not a Gabriel filter")
            continue
        filter_minimum(F[a])
        for name, M in modules:
            qmap = module_of_quotients_map(M, F[a])
            ker_ok = qmap.phi.kernel().elements == torsion_elements(M, F[a])
            C, _ = quotient(qmap.hom_module, qmap.phi.image())
            coker_ok = len(torsion_elements(C, F[a])) == C.order
            rep.add("module of quotients", ker_ok and coker_ok, f"F_{a}, {name}")


def _extension_clauses(qm: QMaxRealization, oracle, rep: VerificationReport):
    """Checks quantified over all flat intermediate subrings."""
    if oracle is None:
        return
    R = qm.base
    for T in oracle.family:
        G = qm.filter_of(T)
        ax = check_gabriel_axioms(G, stop_at_first=True)
        rep.add("filter of perfect extension", ax.ok, f"|S|={T.order}")
        try:
            back = ring_of_quotients(qm, G).subring
            rep.add("ring of quotients round trip", back == T, f"|S|={T.order}")
        except NotASubring as e:
            rep.add("ring of quotients round trip", False, str(e))
    for T in qm.intermediate_subrings():
        if not qm.is_flat_left(T):
            continue
        G = qm.filter_of(T)
        emb = qm.embedding_into(T)
        for I in enumerate_right_ideals(R):
            M = cyclic_module(R, I.elements)
            same = tensor_kernel(M, emb).elements == torsion_elements(M, G)
            rep.add("torsion kernel identity", same, f"|S|={T.order}, |I|={len(I)}")
