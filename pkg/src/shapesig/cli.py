"""Command-line surface: extract, query, evaluate.

Exit codes: 0 success, 1 user/data error, 2 internal failure.  Skip
reports go to stderr as ``id,reason`` lines; results go to stdout or the
requested files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ShapeSigError
from .evaluation import evaluate, export_report
from .index import build_index, load, query, save
from .pipeline import ExtractConfig, extract_from_image
from .signatures import KINDS


class _Parser(argparse.ArgumentParser):
    # bad flags and values are user errors -> exit code 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _unit_float(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shapesig", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ext = sub.add_parser("extract", help="extract a descriptor index from a dataset")
    ext.add_argument("--dataset", required=True, help="flat directory of shape images")
    ext.add_argument("--descriptor", choices=KINDS, default="fsd")
    ext.add_argument("--samples", type=_positive_int, default=128,
                     help="boundary sample count N (default 128)")
    ext.add_argument("--af-step", type=_positive_int, default=5)
    ext.add_argument("--tar-step", type=_positive_int, default=1)
    ext.add_argument("--coeffs", type=_nonnegative_int, default=0,
                     help="keep only this many leading coefficients (0 = all)")
    ext.add_argument("--threshold", type=_unit_float, default=0.5)
    ext.add_argument("--orientation-normalize", action="store_true",
                     help="rotate the contour so its principal axis is horizontal")
    ext.add_argument("--out", required=True, help="index file to write")

    qry = sub.add_parser("query", help="rank index records against one image")
    qry.add_argument("index", help="index file written by extract")
    qry.add_argument("image", help="query shape image")
    qry.add_argument("--top", type=_positive_int, default=10)

    evl = sub.add_parser("evaluate", help="precision-recall benchmark over indexes")
    evl.add_argument("indexes", nargs="+", help="index files, one per descriptor")
    evl.add_argument("--out", default=".", help="directory for summary.csv and curves")
    evl.add_argument("--allow-unbalanced", action="store_true",
                     help="accept uniform class sizes other than 20")
    return parser


def _cmd_extract(args) -> int:
    try:
        config = ExtractConfig(
            kind=args.descriptor,
            samples=args.samples,
            af_step=args.af_step,
            tar_step=args.tar_step,
            coeffs=args.coeffs,
            threshold=args.threshold,
            orientation_normalize=args.orientation_normalize,
        )
    except ValueError as exc:
        # limits the argparse types cannot express (e.g. samples >= 4)
        # are still user errors, not invariant violations
        print(f"shapesig: {exc}", file=sys.stderr)
        return 1
    index, skips = build_index(args.dataset, config)
    for stem, reason in skips:
        print(f"{stem},{reason}", file=sys.stderr)
    if len(index) == 0:
        first = skips[0] if skips else ("?", "no records")
        print(f"shapesig: no image produced a record; first failure: "
              f"{first[0]}: {first[1]}", file=sys.stderr)
        return 1
    save(index, args.out)
    print(f"wrote {len(index)} records to {args.out}")
    return 0


def _cmd_query(args) -> int:
    index = load(args.index)
    # header parameters win over anything else so the query image is
    # processed exactly like the indexed ones
    values = extract_from_image(args.image, index.config)
    result = query(index, values, args.top, kind=index.kind,
                   query_id=Path(args.image).stem)
    for rank, (hit_id, cls, dist) in enumerate(result.hits, start=1):
        print(f"{rank},{hit_id},{cls},{dist:.9g}")
    return 0


def _cmd_evaluate(args) -> int:
    indexes = [load(p) for p in args.indexes]
    base = {(ix.config.samples, ix.config.threshold, ix.config.orientation_normalize)
            for ix in indexes}
    if len(base) > 1:
        print("shapesig: indexes were extracted with different samples/threshold/"
              "orientation settings; results would not be comparable", file=sys.stderr)
        return 1
    reports = [evaluate(ix, allow_unbalanced=args.allow_unbalanced) for ix in indexes]
    written = export_report(reports, args.out)
    for rep in sorted(reports, key=lambda r: -r.avg_low):
        print(f"{rep.kind},{rep.avg_low:.6f},{rep.avg_high:.6f}")
    print(f"wrote {', '.join(str(p) for p in written)}", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "extract":
            return _cmd_extract(args)
        if args.command == "query":
            return _cmd_query(args)
        return _cmd_evaluate(args)
    except SystemExit:
        raise
    except (ShapeSigError, OSError) as exc:
        print(f"shapesig: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # invariant violation, not a user error
        print(f"shapesig: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
