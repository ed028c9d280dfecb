"""Command line entry point ``ql``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructors import parse_ring
from .corpus import load_corpus
from .errors import ParseError, QuotlabError, ValidationError
from .ideals import enumerate_right_ideals, lambek_filter
from .quotients import build_qmax, is_kasch
from .report import METHODS, RunConfig, analyze, run_chain, run_corpus
from .rings import is_semisimple
from .verify import verify_suite


def _ring(text: str):
    """A constructor expression, or the name of a built-in corpus entry."""
    for e in load_corpus():
        if e.name == text:
            return e.ring
    return parse_ring(text)


def cmd_validate(args) -> int:
    entries = load_corpus(args.file)
    for e in entries:
        print(f"ok  {e.name:<28} order {e.ring.order}")
    print(f"{len(entries)} entries")
    return 0


def cmd_ideals(args) -> int:
    R = _ring(args.ring)
    L = enumerate_right_ideals(R)
    for I in L:
        tags = ",".join(t for t, v in (("dense", I.dense), ("essential", I.essential)) if v)
        print(f"{len(I):>6}  {I.label():<40} {tags}")
    print(f"{len(L)} ideals, {sum(I.dense for I in L)} dense, {sum(I.essential for I in L)} essential")
    return 0


def cmd_qmax(args) -> int:
    R = _ring(args.ring)
    qm = build_qmax(R)
    print(f"ring           {R.name} (order {R.order})")
    print(f"minimal dense  order {len(qm.D)}")
    print(f"Q_max          order {qm.carrier.order}, moduli {list(qm.carrier.moduli)}")
    print(f"equals R       {qm.bottom == qm.top}")
    print(f"semisimple     {is_semisimple(qm.carrier)}")
    print(f"Kasch          {is_kasch(qm)}")
    print(f"Lambek filter  {len(lambek_filter(R))} dense ideals")
    return 0


def cmd_qtot(args) -> int:
    cfg = RunConfig.from_env(args.cap)
    R = _ring(args.ring)
    qm = build_qmax(R)
    methods = METHODS if args.method == "all" else (args.method,)
    fixpoints = {}
    status = 0
    for m in methods:
        try:
            ch = run_chain(qm, m, cfg.cap)
        except QuotlabError as e:
            print(f"{m:<9} {type(e).__name__}: {e}")
            if args.method != "all":
                status = 1
            continue
        fixpoints[m] = ch.fixpoint.elements
        g = "-" if ch.gamma is None else ch.gamma
        print(f"{m:<9} orders {ch.orders()}  gamma {g}  Q_tot order {ch.fixpoint.order}"
              + (f"  ({ch.note})" if ch.note else ""))
    if len(set(fixpoints.values())) > 1:
        print("methods DISAGREE")
        status = 1
    elif len(fixpoints) > 1:
        print(f"{len(fixpoints)} methods agree")
    return status


def cmd_verify(args) -> int:
    cfg = RunConfig.from_env(args.cap)
    entries = load_corpus(args.corpus)
    status = 0
    for e in entries:
        rec = analyze(e, cfg)
        if "error" in rec:
            print(f"FAIL {e.name}: {rec['error']}")
            status = 1
            continue
        v = rec["verify"]
        bad = v["failures"] + [f"pin {p}" for p in rec["pins"]]
        if not rec["methods_agree"]:
            bad.append("chain methods disagree")
        print(f"{'PASS' if not bad else 'FAIL'} {e.name:<28} gamma {v['gamma']}  {v['checks']} checks")
        if args.verbose:
            for k, val in v["matrix"].items():
                print(f"       {k:<42} {'pass' if val else 'n/a' if val is None else 'FAIL'}")
        for b in bad:
            print(f"       {b}")
        status |= bool(bad)
    return status


def cmd_report(args) -> int:
    cfg = RunConfig.from_env(args.cap)
    rep = run_corpus(load_corpus(args.corpus), cfg, timestamp=not args.no_timestamp)
    text = rep.to_json() if args.format == "json" else rep.to_markdown()
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ql", description="Rings of quotients of finite rings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse and validate a corpus file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("ideals", help="right ideal lattice with dense/essential flags")
    s.add_argument("ring", help='constructor expression such as "T2(F_2)" or a built-in entry name')
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("qmax", help="maximal right ring of quotients")
    s.add_argument("ring")
    s.set_defaults(func=cmd_qmax)

    s = sub.add_parser("qtot", help="total right ring of quotients")
    s.add_argument("ring")
    s.add_argument("--method", choices=METHODS + ("all",), default="morita")
    s.add_argument("--cap", type=int, default=None, help="subring enumeration cap (default: $QL_CAP or 10000)")
    s.set_defaults(func=cmd_qtot)

    s = sub.add_parser("verify", help="run the verification suite over a corpus")
    s.add_argument("--corpus", default=None, help="corpus JSON (default: built-in)")
    s.add_argument("--cap", type=int, default=None)
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("report", help="write a corpus report")
    s.add_argument("--corpus", default=None)
    s.add_argument("--out", default=None)
    s.add_argument("--format", choices=("json", "md"), default="json")
    s.add_argument("--cap", type=int, default=None)
    s.add_argument("--no-timestamp", action="store_true")
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except QuotlabError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
