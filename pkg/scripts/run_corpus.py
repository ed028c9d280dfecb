"""Run every engine over a corpus and write JSON and Markdown reports.

    python3 scripts/run_corpus.py                       # built-in corpus
    python3 scripts/run_corpus.py corpus/extended.json --outdir reports
"""

import argparse
import time
from pathlib import Path

from quotlab.corpus import load_corpus
from quotlab.report import RunConfig, analyze, RunReport, rec_ok


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", nargs="?", default=None)
    ap.add_argument("--outdir", default="reports")
    ap.add_argument("--cap", type=int, default=None)
    args = ap.parse_args()

    cfg = RunConfig.from_env(args.cap)
    entries = load_corpus(args.corpus)
    records = []
    for e in entries:
        t0 = time.time()
        rec = analyze(e, cfg)
        records.append(rec)
        g = rec.get("verify", {}).get("gamma")
        print(f"{'ok ' if rec_ok(rec) else 'BAD'} {e.name:<30} gamma {g}  {time.time() - t0:6.1f}s")
    rep = RunReport(records, cfg)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(args.corpus).stem if args.corpus else "builtin"
    (out / f"{stem}.json").write_text(rep.to_json())
    (out / f"{stem}.md").write_text(rep.to_markdown())
    print(f"wrote {out / stem}.json and .md; overall {'PASS' if rep.ok else 'FAIL'}")


if __name__ == "__main__":
    main()
