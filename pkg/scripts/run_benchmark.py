#!/usr/bin/env python3
"""Full retrieval benchmark: build all descriptor indexes, score, export.

One pass over the dataset extracts every requested descriptor (the contour
work is shared), indexes land next to the reports, and the summary table
prints low/high-recall precision averages per descriptor.

    python3 scripts/run_benchmark.py --dataset data/synth --out bench
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from shapesig import ExtractConfig, ShapeSigError, build_many, evaluate, export_report, save
from shapesig.evaluation import KIND_ORDER
from shapesig.signatures import KINDS


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", required=True, help="flat directory of shape images")
    ap.add_argument("--out", default="bench", help="output directory")
    ap.add_argument("--samples", type=int, default=128)
    ap.add_argument("--kinds", nargs="+", default=list(KINDS), choices=KINDS)
    ap.add_argument("--workers", type=int, default=None,
                    help="process count (default: SHAPESIG_THREADS or all cores)")
    ap.add_argument("--allow-unbalanced", action="store_true",
                    help="accept uniform class sizes other than 20")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    config = ExtractConfig(kind=args.kinds[0], samples=args.samples)

    t0 = time.perf_counter()
    indexes, skips = build_many(args.dataset, config, tuple(args.kinds), args.workers)
    t_build = time.perf_counter() - t0
    for kind in args.kinds:
        n_skip = len(skips[kind])
        note = f" ({n_skip} skipped)" if n_skip else ""
        print(f"built {kind:>4}: {len(indexes[kind])} records{note}", file=sys.stderr)
        for stem, reason in skips[kind][:5]:
            print(f"  skip {stem}: {reason}", file=sys.stderr)
        save(indexes[kind], out / f"{kind}.idx")

    t1 = time.perf_counter()
    reports = {k: evaluate(indexes[k], allow_unbalanced=args.allow_unbalanced)
               for k in args.kinds}
    t_eval = time.perf_counter() - t1
    export_report(list(reports.values()), out)

    print(f"{'kind':>5} {'avg_low':>8} {'avg_high':>9}")
    for kind in KIND_ORDER:
        if kind in reports:
            rep = reports[kind]
            print(f"{kind:>5} {rep.avg_low:8.2f} {rep.avg_high:9.2f}")
    total = time.perf_counter() - t0
    print(f"build {t_build:.1f}s  evaluate {t_eval:.1f}s  total {total:.1f}s",
          file=sys.stderr)
    print(f"indexes and CSV reports in {out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    try:
        raise SystemExit(main())
    except ShapeSigError as exc:
        print(f"benchmark: {exc}", file=sys.stderr)
        raise SystemExit(1)
