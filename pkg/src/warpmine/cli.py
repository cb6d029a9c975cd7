"""Command-line front end: run applications, build dictionaries, compare modes.

Exit codes: 0 success, 1 usage/input errors (bad flags, missing files,
capacity), 2 internal invariant violations (results that should be
impossible, e.g. mode disagreement).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import apps, engine, metrics
from .aggregate import StoreBuffer, format_record
from .balance import BalanceConfig, CLIQUE_THRESHOLD, MOTIF_THRESHOLD
from .canon import CanonicalDictionary, build_dictionary
from .errors import CapacityError, DictionaryFormatError, GraphParseError, \
    InternalInvariantError
from .graph import load_edge_list


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the contract here is exit 1
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="warpmine",
                     description="Subgraph enumeration engine: clique "
                                 "counting, motif counting and listing "
                                 "under a modeled lockstep cost model.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one application on a graph")
    run_p.add_argument("--app", required=True,
                       choices=("clique", "motifs", "list"))
    run_p.add_argument("--k", type=int, required=True)
    run_p.add_argument("--graph", required=True, help="edge-list file")
    run_p.add_argument("--mode", choices=engine.MODES, default="opt")
    run_p.add_argument("--warps", type=int, default=None,
                       help="default: available parallelism")
    run_p.add_argument("--lane-width", type=int, default=32)
    run_p.add_argument("--threshold", type=float, default=None,
                       help="rebalance when active fraction drops below "
                            "this (default 0.40 clique, 0.10 otherwise)")
    run_p.add_argument("--poll-ms", type=int, default=10,
                       help="coordinator poll cadence in scheduler ticks")
    run_p.add_argument("--dict", dest="dict_path", default=None,
                       help="dictionary file (required for motifs)")
    run_p.add_argument("--metrics", default=None,
                       help="write a metrics report to this path")
    run_p.add_argument("--metrics-format", choices=("text", "json"),
                       default="text")
    run_p.add_argument("--output", default=None,
                       help="listing records go here (default stdout)")
    run_p.add_argument("--seed", type=int, default=0,
                       help="reserved for synthetic-input tooling; engine "
                            "results do not depend on it")

    dict_p = sub.add_parser("dict", help="build a canonical dictionary")
    dict_p.add_argument("--k", type=int, required=True)
    dict_p.add_argument("--out", default=None,
                        help="write the dictionary file here")
    dict_p.add_argument("--allow-large", action="store_true",
                        help="permit the k=8 build (large table)")

    cmp_p = sub.add_parser("compare",
                           help="run dfs/wc/opt on one input and compare")
    cmp_p.add_argument("--app", required=True, choices=("clique", "motifs"))
    cmp_p.add_argument("--k", type=int, required=True)
    cmp_p.add_argument("--graph", required=True)
    cmp_p.add_argument("--dict", dest="dict_path", default=None)
    cmp_p.add_argument("--warps", type=int, default=None)
    cmp_p.add_argument("--lane-width", type=int, default=32)
    cmp_p.add_argument("--threshold", type=float, default=None)
    cmp_p.add_argument("--poll-ms", type=int, default=10)
    cmp_p.add_argument("--inject-fault", action="store_true",
                       help=argparse.SUPPRESS)
    return parser


def _default_warps(value: Optional[int]) -> int:
    if value is not None:
        if value < 1:
            raise _UsageError("--warps must be >= 1")
        return value
    return os.cpu_count() or engine.DEFAULT_WARPS


def _load_dictionary(args, k: int) -> CanonicalDictionary:
    if not args.dict_path:
        raise _UsageError("--dict is required for motif counting")
    d = CanonicalDictionary.load(args.dict_path)
    if d.k != k:
        raise _UsageError("dictionary %s is for k=%d, requested k=%d"
                          % (args.dict_path, d.k, k))
    return d


def _balance_config(args, app_name: str, mode: str) -> Optional[BalanceConfig]:
    if mode != "opt":
        if args.threshold is not None:
            raise _UsageError("--threshold only applies to opt mode")
        return None
    threshold = args.threshold
    if threshold is None:
        threshold = (CLIQUE_THRESHOLD if app_name == "clique"
                     else MOTIF_THRESHOLD)
    return BalanceConfig(threshold=threshold, poll_interval=args.poll_ms)


def _write_metrics(args, result, baseline=None) -> None:
    if not args.metrics:
        return
    rep = metrics.report(result, baseline)
    text = (metrics.render_json(rep) if args.metrics_format == "json"
            else metrics.render_text(rep))
    with open(args.metrics, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_run(args) -> int:
    g = load_edge_list(args.graph)
    warps = _default_warps(args.warps)
    mode = args.mode
    cfg = _balance_config(args, args.app, mode)
    common = dict(mode=mode, warps=warps, lane_width=args.lane_width,
                  balance_config=cfg)
    if args.app == "clique":
        result = apps.run_clique(g, args.k, **common)
        print(result.clique_count)
    elif args.app == "motifs":
        d = _load_dictionary(args, args.k)
        result = apps.run_motifs(g, args.k, d, **common)
        for pid, count in enumerate(result.pattern_counts):
            print("%d %d" % (pid, count))
    else:
        store = StoreBuffer()
        records: list = []
        consumer = store.start_consumer(records.append)
        try:
            result = engine.run(g, apps.listing_app(args.k, store),
                                **common)
        finally:
            store.close()
            consumer.join(timeout=30.0)
        lines = sorted(format_record(v, b) for v, b in records)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.writelines(line + "\n" for line in lines)
        else:
            for line in lines:
                print(line)
    _write_metrics(args, result)
    return 0


def cmd_dict(args) -> int:
    d = build_dictionary(args.k, allow_large=args.allow_large)
    if args.out:
        d.save(args.out)
    print(d.pattern_count)
    return 0


def cmd_compare(args) -> int:
    g = load_edge_list(args.graph)
    warps = _default_warps(args.warps)
    dictionary = None
    if args.app == "motifs":
        dictionary = _load_dictionary(args, args.k)
    results = {}
    for mode in engine.MODES:
        cfg = None
        if mode == "opt":
            threshold = args.threshold
            if threshold is None:
                threshold = (CLIQUE_THRESHOLD if args.app == "clique"
                             else MOTIF_THRESHOLD)
            cfg = BalanceConfig(threshold=threshold,
                                poll_interval=args.poll_ms)
        if args.app == "clique":
            results[mode] = apps.run_clique(
                g, args.k, mode=mode, warps=warps,
                lane_width=args.lane_width, balance_config=cfg)
        else:
            results[mode] = apps.run_motifs(
                g, args.k, dictionary, mode=mode, warps=warps,
                lane_width=args.lane_width, balance_config=cfg)
    if args.inject_fault:
        results["wc"].clique_count = (results["wc"].clique_count or 0) + 1
    baseline = results["dfs"]
    agree = all(_same_counts(baseline, results[m]) for m in ("wc", "opt"))
    header = ("mode", "wall_s", "ticks", "instructions", "inst_per_warp",
              "transactions", "rebalances")
    rows = [header]
    for mode in engine.MODES:
        r = results[mode]
        rows.append((mode, "%.4f" % r.wall_seconds, str(r.makespan_ticks),
                     str(r.total_instructions),
                     "%.1f" % r.instructions_per_warp,
                     str(r.total_transactions), str(r.rebalance_count)))
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    for row in rows:
        print("  ".join(cell.ljust(widths[i])
                        for i, cell in enumerate(row)).rstrip())
    wc = results["wc"]
    print("wc_vs_dfs_load_transactions %.4f"
          % _safe_ratio(baseline.total_transactions, wc.total_transactions))
    print("wc_vs_dfs_instructions_per_warp %.4f"
          % _safe_ratio(baseline.instructions_per_warp,
                        wc.instructions_per_warp))
    if not agree:
        print("error: modes disagree on final counts", file=sys.stderr)
        return 2
    print("counts agree across modes")
    return 0


def _same_counts(a, b) -> bool:
    return (a.clique_count == b.clique_count
            and a.pattern_counts == b.pattern_counts)


def _safe_ratio(num: float, den: float) -> float:
    return num / den if den else float("inf")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return cmd_run(args)
        if args.command == "dict":
            return cmd_dict(args)
        return cmd_compare(args)
    except _UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (GraphParseError, DictionaryFormatError, CapacityError,
            ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
