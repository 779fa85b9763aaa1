"""Command-line front end.

    trajmine anonymize --input raw.jsonl --k-anon 3 --l-div 3 --region 0,0,4,8 --cell-width 1
    trajmine encode    --input anon.jsonl --region 0,0,4,8 --cell-width 1 --id-base 1
    trajmine mine      --input db.jsonl --format wlas-jsonl --k 5 --variant full

``mine`` prints one JSON report on stdout. The ``duration_s`` field is the only
part that changes between identical runs.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from .anonymize import toy_anonymize, validate_anonymization
from .errors import SizeLimitError, TrajmineError
from .formats import (FORMATS, dump_anon, export_wlas, ingest, read_anon, read_raw,
                      render_pattern, write_lines)
from .grid import Region, build_grid, encode_database
from .miner import VARIANTS, MiningConfig, mine_topk
from .oracle import DEFAULT_CAP, brute_topk

log = logging.getLogger("trajmine")


class CheckFailed(TrajmineError):
    pass


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def int_list(text: str) -> list[int]:
    return [positive_int(t) for t in text.split(",") if t.strip()]


def region_arg(text: str) -> Region:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("region must be xmin,ymin,xmax,ymax")
    try:
        return Region(*(p.strip() for p in parts))
    except TrajmineError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid(args):
    if args.region is None or args.cell_width is None:
        return None
    return build_grid(args.region, args.cell_width, args.cell_height or args.cell_width)


def _add_grid_opts(p, required=False):
    p.add_argument("--region", type=region_arg, required=required, help="xmin,ymin,xmax,ymax")
    p.add_argument("--cell-width", required=required)
    p.add_argument("--cell-height", help="defaults to --cell-width")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trajmine", description="Top-k trajectory pattern mining.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("anonymize", help="toy k-anonymity/l-diversity over raw-jsonl points")
    an.add_argument("--input", default="-")
    an.add_argument("--output", default="-")
    an.add_argument("--k-anon", type=positive_int, default=1)
    an.add_argument("--l-div", type=positive_int, default=1)
    an.add_argument("--seed", type=int, default=0)
    _add_grid_opts(an)

    enc = sub.add_parser("encode", help="anon-jsonl to wlas-jsonl")
    enc.add_argument("--input", default="-")
    enc.add_argument("--output", default="-")
    enc.add_argument("--id-base", type=int, choices=(0, 1), default=0)
    _add_grid_opts(enc, required=True)

    mine = sub.add_parser("mine", help="mine the top-k patterns and print a JSON report")
    mine.add_argument("--input", default="-")
    mine.add_argument("--format", choices=FORMATS, default="wlas-jsonl")
    mine.add_argument("--k", type=positive_int, default=10)
    mine.add_argument("--variant", choices=sorted(VARIANTS), default="full")
    for flag in ("ti", "tu", "width-prune", "depth-prune"):
        mine.add_argument(f"--{flag}", action=argparse.BooleanOptionalAction, default=None,
                          help="override the variant's setting")
    mine.add_argument("--no-prune", action="store_true", help="disable width and depth pruning")
    mine.add_argument("--depth-bound", choices=("sound", "pivot"), default="sound")
    mine.add_argument("--id-base", type=int, choices=(0, 1), default=0)
    mine.add_argument("--strict-weights", action="store_true",
                      help="fail on wlas-jsonl terms whose weights do not sum to 1")
    mine.add_argument("--seed", type=int, default=0, help="recorded in the report")
    mine.add_argument("--metrics-out", help="also write the metrics document here")
    mine.add_argument("--oracle-check", action="store_true",
                      help="compare with brute force when the database is small enough")
    mine.add_argument("--oracle-cap", type=positive_int, default=DEFAULT_CAP)
    mine.add_argument("--sweep", type=int_list, metavar="K1,K2,...",
                      help="run every k in the list against every variant, concurrently")
    mine.add_argument("--sweep-variants", default=",".join(VARIANTS),
                      help="comma-separated variants for --sweep")
    mine.add_argument("--jobs", type=positive_int, default=4)
    _add_grid_opts(mine)
    return parser


def config_from_args(args, k: Optional[int] = None, variant: Optional[str] = None) -> MiningConfig:
    overrides = {"depth_bound": args.depth_bound}
    for flag, name in (("ti", "ti_enabled"), ("tu", "tu_enabled"),
                       ("width_prune", "width_prune_enabled"), ("depth_prune", "depth_prune_enabled")):
        value = getattr(args, flag)
        if value is not None:
            overrides[name] = value
    return MiningConfig.preset(variant or args.variant, k or args.k,
                               prune=not args.no_prune, **overrides)


def run_one(db, config: MiningConfig, variant: str, args) -> dict:
    start = time.perf_counter()
    results, metrics = mine_topk(db, config)
    report = {
        "config": {"variant": variant, **config.as_dict(), "seed": args.seed,
                   "format": args.format, "id_base": args.id_base},
        "results": [render_pattern(p, s, args.id_base) for p, s in results],
        "metrics": metrics.report(),
    }
    if args.oracle_check:
        try:
            expected = brute_topk(db, config.k, args.oracle_cap)
        except SizeLimitError as exc:
            report["oracle_check"] = f"skipped: {exc}"
        else:
            if expected != results:
                raise CheckFailed(f"oracle mismatch for k={config.k}, variant {variant}")
            report["oracle_check"] = "match"
    report["duration_s"] = round(time.perf_counter() - start, 6)
    return report


def cmd_mine(args) -> dict:
    db = ingest(args.input, args.format, _grid(args), args.id_base, args.strict_weights)
    log.info("loaded %d sequences", len(db))
    if not args.sweep:
        return run_one(db, config_from_args(args), args.variant, args)
    variants = [v.strip() for v in args.sweep_variants.split(",") if v.strip()]
    plan = [(k, v, config_from_args(args, k, v)) for k in args.sweep for v in variants]
    # the database is immutable, so runs share it freely
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        reports = list(pool.map(lambda kvc: run_one(db, kvc[2], kvc[1], args), plan))
    return {"runs": reports}


def cmd_anonymize(args):
    raws = read_raw(args.input)
    grid = _grid(args)
    anon = toy_anonymize(raws, args.k_anon, args.l_div, args.seed, grid)
    validate_anonymization(raws, anon, args.k_anon, args.l_div)
    write_lines((dump_anon(t) for t in anon), args.output)


def cmd_encode(args):
    db = encode_database(read_anon(args.input), _grid(args))
    export_wlas(db, args.output, args.id_base)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "mine":
            report = cmd_mine(args)
            if args.metrics_out:
                metrics = ([r["metrics"] for r in report["runs"]] if "runs" in report
                           else report["metrics"])
                with open(args.metrics_out, "w", encoding="utf-8") as fh:
                    json.dump(metrics, fh, indent=2)
            json.dump(report, sys.stdout, indent=2)
            sys.stdout.write("\n")
        elif args.command == "anonymize":
            cmd_anonymize(args)
        else:
            cmd_encode(args)
    except (TrajmineError, OSError) as exc:
        print(f"trajmine: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
