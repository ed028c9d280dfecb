"""Run the engines over a corpus and render the results."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from .corpus import CorpusEntry
from .errors import QuotlabError
from .ideals import enumerate_right_ideals
from .modules import is_nonsingular, regular_module
from .quotients import build_qmax, is_kasch
from .rings import DEFAULT_SUBRING_CAP, FiniteRing, is_semisimple, is_von_neumann_regular
from .tot import (condition_report, is_right_semihereditary, morita_chain, oracle_chain,
                  shortcut_chain, simplified_chain)
from .verify import verify_suite

METHODS = ("morita", "filter", "shortcut", "oracle")
VOLATILE_KEYS = ("generated_at",)


@dataclass(frozen=True)
class RunConfig:
    cap: int = DEFAULT_SUBRING_CAP
    methods: tuple = METHODS
    verify: bool = True

    @classmethod
    def from_env(cls, cap: Optional[int] = None, **kw) -> "RunConfig":
        if cap is None:
            env = os.environ.get("QL_CAP")
            cap = int(env) if env else DEFAULT_SUBRING_CAP
        return cls(cap=cap, **kw)


def ideal_summary(R: FiniteRing) -> dict:
    L = enumerate_right_ideals(R)
    return {
        "count": len(L),
        "dense": sum(I.dense for I in L),
        "essential": sum(I.essential for I in L),
        "lattice": [{"order": len(I), "label": I.label(), "dense": I.dense,
                     "essential": I.essential} for I in L],
    }


def run_chain(qm, method: str, cap: int):
    if method == "morita":
        return morita_chain(qm)
    if method == "filter":
        return simplified_chain(qm)
    if method == "shortcut":
        return shortcut_chain(qm)
    if method == "oracle":
        return oracle_chain(qm, cap)
    raise ValueError(f"unknown method {method!r}")


def chain_record(ch) -> dict:
    return {"orders": ch.orders(), "gamma": ch.gamma, "fixpoint_order": ch.fixpoint.order,
            "fixpoint": sorted(ch.fixpoint.elements),
            "flags": [{"flat_left": f.flat_left, "epi": f.epi,
                       "perfect_extension": f.perfect_extension,
                       "filter_perfect": f.filter_perfect} for f in ch.flags],
            "note": ch.note}


def analyze(entry: CorpusEntry, cfg: RunConfig = RunConfig()) -> dict:
    R = entry.ring
    rec: dict = {"name": entry.name, "definition": entry.definition, "order": R.order,
                 "moduli": list(R.moduli)}
    rec["ideals"] = ideal_summary(R)
    rec["flags"] = {
        "commutative": bool(R.is_commutative),
        "regular": is_von_neumann_regular(R),
        "semisimple": is_semisimple(R),
        "semihereditary": is_right_semihereditary(R),
        "nonsingular": is_nonsingular(regular_module(R)),
    }
    try:
        qm = build_qmax(R)
    except QuotlabError as e:
        rec["error"] = f"qmax: {type(e).__name__}: {e}"
        return rec
    rec["flags"]["kasch"] = is_kasch(qm)
    rec["qmax"] = {"dense_minimum_order": len(qm.D), "order": qm.carrier.order,
                   "moduli": list(qm.carrier.moduli), "equals_R": qm.bottom == qm.top,
                   "semisimple": is_semisimple(qm.carrier)}
    chains: dict = {}
    for m in cfg.methods:
        try:
            chains[m] = chain_record(run_chain(qm, m, cfg.cap))
        except QuotlabError as e:
            chains[m] = {"error": f"{type(e).__name__}: {e}"}
    rec["chains"] = chains
    fix = {tuple(c["fixpoint"]) for c in chains.values() if "fixpoint" in c}
    rec["methods_agree"] = len(fix) <= 1
    for side, key in (("C", "condition_C"), ("C'", "condition_C_prime")):
        cr = condition_report(qm, side, cfg.cap)
        rec[key] = {"verdict": cr.verdict, "examined": cr.examined, "cap_hit": cr.cap_hit,
                    "witness_order": cr.witness.order if cr.witness is not None else None}
    if cfg.verify:
        vr = verify_suite(R, cfg.cap, qm)
        rec["verify"] = {"ok": vr.ok, "gamma": vr.gamma,
                         "matrix": {k: v for k, v in sorted(vr.matrix().items())},
                         "checks": len(vr.results),
                         "failures": [f"{r.clause} [{r.detail}]" for r in vr.failures()]}
    rec["pins"] = check_pins(entry, rec)
    return rec


def computed_values(rec: dict) -> dict:
    """The values expectation pins are compared against."""
    out = {"order": rec["order"], "ideals": rec["ideals"]["count"],
           "dense": rec["ideals"]["dense"], "essential": rec["ideals"]["essential"]}
    for k in ("regular", "semisimple", "semihereditary", "kasch"):
        if k in rec["flags"]:
            out[k] = rec["flags"][k]
    if "qmax" in rec:
        out["qmax_order"] = rec["qmax"]["order"]
    m = rec.get("chains", {}).get("morita", {})
    if "gamma" in m:
        out["gamma"] = m["gamma"]
        out["qtot_order"] = m["fixpoint_order"]
    for k in ("condition_C", "condition_C_prime"):
        if k in rec:
            out[k] = rec[k]["verdict"]
    return out


def check_pins(entry: CorpusEntry, rec: dict) -> list[str]:
    got = computed_values(rec)
    return [f"{k}: expected {v!r}, computed {got.get(k)!r}"
            for k, v in sorted(entry.expect.items()) if got.get(k) != v]


@dataclass
class RunReport:
    records: list
    config: RunConfig = field(default_factory=RunConfig)
    generated_at: str = ""

    @property
    def ok(self) -> bool:
        return all(rec_ok(r) for r in self.records)

    def to_dict(self) -> dict:
        gammas: dict = {}
        for r in self.records:
            g = r.get("verify", {}).get("gamma")
            gammas[str(g)] = gammas.get(str(g), 0) + 1
        return {"generated_at": self.generated_at,
                "config": {"cap": self.config.cap, "methods": list(self.config.methods)},
                "summary": {"rings": len(self.records), "ok": self.ok, "gamma_histogram": gammas},
                "rings": self.records}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_markdown(self) -> str:
        return render_markdown(self.to_dict())


def rec_ok(r: dict) -> bool:
    return "error" not in r and not r.get("pins") and r.get("verify", {}).get("ok", True) \
        and r.get("methods_agree", True)


def run_corpus(entries: list[CorpusEntry], cfg: RunConfig = RunConfig(),
               timestamp: bool = True) -> RunReport:
    recs = [analyze(e, cfg) for e in entries]
    ts = datetime.now(timezone.utc).isoformat(timespec="seconds") if timestamp else ""
    return RunReport(recs, cfg, ts)


def strip_volatile(d: dict) -> dict:
    return {k: v for k, v in d.items() if k not in VOLATILE_KEYS}


def _yn(v) -> str:
    return {True: "yes", False: "no", None: "n/a"}.get(v, str(v))


def render_markdown(d: dict) -> str:
    lines = ["# Quotient ring report", ""]
    if d.get("generated_at"):
        lines += [f"Generated {d['generated_at']}.", ""]
    s = d["summary"]
    lines += [f"{s['rings']} rings, overall {'PASS' if s['ok'] else 'FAIL'}.", "",
              "| ring | order | ideals | dense | essential | Q_max | Q_tot | gamma | C | C' | semiher. | regular | Kasch | suite |",
              "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|"]
    for r in d["rings"]:
        if "error" in r:
            lines.append(f"| {r['name']} | {r['order']} | error: {r['error']} |")
            continue
        m = r["chains"].get("morita", {})
        lines.append("| " + " | ".join(str(x) for x in [
            r["name"], r["order"], r["ideals"]["count"], r["ideals"]["dense"],
            r["ideals"]["essential"], r["qmax"]["order"], m.get("fixpoint_order", "-"),
            m.get("gamma", "-"), _yn(r["condition_C"]["verdict"]),
            _yn(r["condition_C_prime"]["verdict"]), _yn(r["flags"]["semihereditary"]),
            _yn(r["flags"]["regular"]), _yn(r["flags"]["kasch"]),
            "PASS" if rec_ok(r) else "FAIL"]) + " |")
    for r in d["rings"]:
        if "error" in r:
            continue
        lines += ["", f"## {r['name']}", ""]
        for meth, c in sorted(r["chains"].items()):
            if "error" in c:
                lines.append(f"- {meth}: {c['error']}")
            else:
                lines.append(f"- {meth}: orders {c['orders']}, gamma {c['gamma'] if c['gamma'] is not None else '-'}")
        if "verify" in r:
            bad = r["verify"]["failures"]
            lines.append(f"- suite: {r['verify']['checks']} checks, "
                         + ("all passed" if not bad else f"failures: {'; '.join(bad)}"))
        if r["pins"]:
            lines.append(f"- pin mismatches: {'; '.join(r['pins'])}")
    return "\n".join(lines) + "\n"
