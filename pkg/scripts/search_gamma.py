"""Search small path algebras over F_2 for chains that take more than one step.

Rings whose maximal ring of quotients is too large to tabulate are skipped.
Finds are written as a corpus file that ``ql verify --corpus`` accepts.

    python3 scripts/search_gamma.py --out corpus/found.json
"""

import argparse
import json
import time
from itertools import combinations, product

from quotlab.constructors import parse_ring
from quotlab.ideals import minimal_dense_ideal
from quotlab.modules import Submodule, hom, regular_module
from quotlab.quotients import build_qmax
from quotlab.tot import condition_report, morita_chain


def quivers(vertices, max_arrows):
    pairs = [(s, t) for s in range(1, vertices + 1) for t in range(s + 1, vertices + 1)]
    for n in range(1, max_arrows + 1):
        for arrows in combinations(pairs * 2, n):
            if len(set(arrows)) < len(arrows) and arrows != tuple(sorted(arrows)):
                continue
            named = [(chr(ord("a") + i), s, t) for i, (s, t) in enumerate(sorted(arrows))]
            yield named


def relations(arrows):
    """No relation, or one zero relation on a path of length two."""
    yield ()
    for (a, _, t), (b, s, _) in product(arrows, repeat=2):
        if t == s:
            yield ((a, b),)


def expression(vertices, arrows, rels):
    arr = ", ".join(f"{a}:{s}->{t}" for a, s, t in arrows)
    rel = ", ".join("*".join(r) for r in rels)
    return f"Path(F_2; {vertices}; {arr}" + (f"; {rel})" if rel else ")")


def qmax_order(R):
    D, _ = Submodule(regular_module(R), minimal_dense_ideal(R).elements).as_module()
    return hom(D, D).order


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vertices", type=int, default=3)
    ap.add_argument("--max-arrows", type=int, default=3)
    ap.add_argument("--max-order", type=int, default=128)
    ap.add_argument("--max-qmax", type=int, default=1024)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    seen, found = set(), []
    for arrows in quivers(args.vertices, args.max_arrows):
        for rels in relations(arrows):
            expr = expression(args.vertices, arrows, rels)
            try:
                R = parse_ring(expr)
            except ValueError:
                continue
            if R.order > args.max_order or expr in seen:
                continue
            seen.add(expr)
            q = qmax_order(R)
            if q > args.max_qmax:
                print(f"skip  {expr}  |Q_max|={q}")
                continue
            t0 = time.time()
            qm = build_qmax(R)
            ch = morita_chain(qm)
            c = condition_report(qm, "C").verdict
            print(f"gamma {ch.gamma}  {expr}  orders {ch.orders()}  C={c}  {time.time() - t0:.1f}s")
            if ch.gamma >= 1:
                found.append({"name": expr, "ring": expr,
                              "expect": {"order": R.order, "qmax_order": q, "gamma": ch.gamma,
                                         "qtot_order": ch.fixpoint.order}})
    print(f"{len(seen)} rings examined, {len(found)} with gamma >= 1")
    if args.out:
        with open(args.out, "w") as f:
            json.dump({"entries": found}, f, indent=2)
            f.write("\n")


if __name__ == "__main__":
    main()
