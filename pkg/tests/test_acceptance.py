"""The eleven acceptance criteria over the built-in corpus, exact.

Each test prints one ``PASS``/``FAIL`` line (visible in ``pytest -v`` output)
before asserting.
"""

import json

import pytest

from quotlab.constructors import parse_ring
from quotlab.corpus import load_corpus
from quotlab.errors import FlatnessFailure, NotASubring, RealizationViolation
from quotlab.ideals import check_gabriel_axioms, enumerate_right_ideals, lambek_filter, torsion_elements
from quotlab.modules import cyclic_module
from quotlab.quotients import build_qmax, is_perfect_filter, ring_of_quotients, tensor_kernel
from quotlab.report import RunConfig, run_corpus, strip_volatile
from quotlab.rings import find_isomorphism, is_semisimple, is_von_neumann_regular, regular_elements
from quotlab.tot import (brute_force_qtot, condition_report, is_right_semihereditary,
                         morita_chain, perfect_family, qtot_shortcut, simplified_chain)
from quotlab.verify import verify_suite


class Built:
    def __init__(self, entry):
        self.name = entry.name
        self.R = entry.ring
        self.qm = build_qmax(self.R)
        self.morita = morita_chain(self.qm)
        self.oracle = brute_force_qtot(self.qm)
        self.C = condition_report(self.qm, "C").verdict
        try:
            self.filter = simplified_chain(self.qm)
        except FlatnessFailure:
            self.filter = None


@pytest.fixture(scope="module")
def corpus():
    return [Built(e) for e in load_corpus()]


def report(n, title, problems, capsys):
    line = f"{'PASS' if not problems else 'FAIL'} criterion {n:>2}: {title}"
    if problems:
        line += " -- " + "; ".join(problems[:5])
    with capsys.disabled():
        print("\n" + line)
    assert not problems, line


def test_01_construction_agreement(corpus, capsys):
    bad = []
    for b in corpus:
        if b.morita.fixpoint != b.oracle:
            bad.append(f"{b.name}: Morita {b.morita.fixpoint.order} vs oracle {b.oracle.order}")
        if b.C:
            if b.filter is None or b.filter.fixpoint != b.oracle:
                bad.append(f"{b.name}: filter chain disagrees under (C)")
    report(1, "Morita fixpoint = oracle = filter fixpoint under (C)", bad, capsys)


def test_02_stepwise_equality(corpus, capsys):
    bad = []
    checked = 0
    for b in corpus:
        if not b.C:
            continue
        checked += 1
        if b.filter is None or b.filter.steps != b.morita.steps:
            bad.append(f"{b.name}: {b.filter and b.filter.orders()} vs {b.morita.orders()}")
    if not checked:
        bad.append("no corpus ring verified (C)")
    report(2, f"filter chain = Morita chain at every index ({checked} rings with (C))", bad, capsys)


def test_03_semihereditary_shortcut(corpus, capsys):
    bad = []
    for b in corpus:
        if not is_right_semihereditary(b.R):
            continue
        sc = qtot_shortcut(b.qm)
        if sc != b.oracle:
            bad.append(f"{b.name}: shortcut {sc.order} vs oracle {b.oracle.order}")
        if b.morita.gamma > 1:
            bad.append(f"{b.name}: gamma {b.morita.gamma}")
    t2 = next(b for b in corpus if b.name == "T2(F_2)")
    sc = qtot_shortcut(t2.qm)
    if sc != t2.qm.top or sc.order != 16 or find_isomorphism(sc.as_ring()[0], parse_ring("M2(F_2)")) is None:
        bad.append("T2(F_2): shortcut is not the order-16 carrier isomorphic to M2(F_2)")
    report(3, "semihereditary shortcut = oracle, gamma <= 1", bad, capsys)


def test_04_regular_collapse(corpus, capsys):
    bad = []
    for b in corpus:
        if is_von_neumann_regular(b.R) and b.oracle != b.qm.bottom:
            bad.append(f"{b.name}: Q_tot order {b.oracle.order} != {b.R.order}")
    report(4, "regular rings are their own Q_tot", bad, capsys)


def test_05_hereditary_noetherian_collapse(corpus, capsys):
    bad = []
    for name in ("T2(F_2)", "T2(F_3)"):
        b = next(x for x in corpus if x.name == name)
        if b.oracle != b.qm.top:
            bad.append(f"{name}: Q_tot != Q_max")
        if not is_perfect_filter(b.qm, lambek_filter(b.R)):
            bad.append(f"{name}: Lambek filter not perfect")
        if not is_semisimple(b.qm.carrier):
            bad.append(f"{name}: Q_max not semisimple")
    report(5, "T2(F_2), T2(F_3): Q_max = Q_tot, Lambek perfect, Q_max semisimple", bad, capsys)


def test_06_chain_clauses(corpus, capsys):
    bad = []
    clauses = ["(1) monotone", "(2) torsion and torsion-free", "(3) tensor collapse",
               "(4) Q_tot inside", "(5) equal theories iff perfect", "(6) perfect iff Q_tot",
               "(7) perfectness transfer"]
    total = 0
    for b in corpus:
        rep = verify_suite(b.R, qm=b.qm)
        m = rep.matrix()
        for c in clauses:
            if m.get(c) is not True:
                bad.append(f"{b.name}: {c} -> {m.get(c)}")
        bad += [f"{b.name}: {r.clause} [{r.detail}]" for r in rep.failures()]
        total += len(rep.results)
    report(6, f"clauses (1)-(7) on every chain, {total} checks, zero failures", bad, capsys)


def test_07_filter_round_trip(corpus, capsys):
    bad = []
    n = 0
    for b in corpus:
        for S in perfect_family(b.qm).family:
            n += 1
            F = b.qm.filter_of(S)
            if not check_gabriel_axioms(F).ok:
                bad.append(f"{b.name}: filter of |S|={S.order} fails the axioms")
            try:
                if ring_of_quotients(b.qm, F).subring != S:
                    bad.append(f"{b.name}: round trip of |S|={S.order} differs")
            except NotASubring as e:
                bad.append(f"{b.name}: {e}")
    report(7, f"perfect extension -> Gabriel filter -> same ring ({n} extensions)", bad, capsys)


def test_08_torsion_kernel_identity(corpus, capsys):
    bad = []
    n = 0
    for b in corpus:
        for S in b.qm.intermediate_subrings():
            if not b.qm.is_flat_left(S):
                continue
            F = b.qm.filter_of(S)
            emb = b.qm.embedding_into(S)
            for I in enumerate_right_ideals(b.R):
                M = cyclic_module(b.R, I.elements)
                n += 1
                if tensor_kernel(M, emb).elements != torsion_elements(M, F):
                    bad.append(f"{b.name}: |S|={S.order}, |I|={len(I)}")
    report(8, f"tensor kernel = filter torsion ({n} module/extension pairs)", bad, capsys)


def test_09_classical_quotients(corpus, capsys):
    bad = []
    for b in corpus:
        if not all(u for _, u in regular_elements(b.R)):
            bad.append(f"{b.name}: a regular element is not a unit")
        if not b.qm.bottom.elements <= b.oracle.elements:
            bad.append(f"{b.name}: R not inside Q_tot")
    report(9, "regular elements are units, R inside Q_tot", bad, capsys)


def test_10_realization(capsys):
    bad = []
    for e in load_corpus():
        try:
            build_qmax(e.ring)
        except RealizationViolation as err:
            bad.append(f"{e.name}: {err}")
    qm = build_qmax(parse_ring("T2(F_2)"))
    if qm.carrier.order != 16:
        bad.append(f"|Q_max(T2(F_2))| = {qm.carrier.order}")
    if find_isomorphism(qm.carrier, parse_ring("M2(F_2)")) is None:
        bad.append("Q_max(T2(F_2)) not isomorphic to M2(F_2)")
    report(10, "End(D) realization holds on the corpus; Q_max(T2(F_2)) = M2(F_2)", bad, capsys)


def test_11_determinism(capsys):
    cfg = RunConfig()
    a = run_corpus(load_corpus(), cfg).to_dict()
    b = run_corpus(load_corpus(), cfg).to_dict()
    ja = json.dumps(strip_volatile(a), sort_keys=True, indent=2)
    jb = json.dumps(strip_volatile(b), sort_keys=True, indent=2)
    bad = [] if ja.encode() == jb.encode() else ["reports differ"]
    if not a["summary"]["ok"]:
        bad.append("corpus report not ok")
    report(11, "two corpus runs give byte-identical reports", bad, capsys)
