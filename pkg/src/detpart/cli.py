"""Command-line front end: partition, evaluate, check-determinism, sweep."""

from __future__ import annotations

import argparse
import csv
import itertools
import sys
import time
from fractions import Fraction

from .core import Params, Policy, as_fraction
from .hgr import HgrParseError, format_partition, read_hgr, read_partition
from .kway import RunStats, TooManyParts, kway_partition
from .metrics import cut, imbalance
from .parallel import default_threads

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3

CSV_HEADER = ["policy", "coarse_to", "refine_iters", "k", "cut", "max_part_weight", "balanced", "time_ms"]


def run_partition(g, params: Params, threads: int, stats: RunStats | None = None):
    # single indirection point so tests can swap the pipeline out
    return kway_partition(g, params, threads=threads, stats=stats)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text}")
    return value


def _epsilon(text: str) -> Fraction:
    try:
        value = as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a decimal: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("epsilon must be >= 0")
    return value


def _policy(text: str) -> Policy:
    try:
        return Policy(text.upper())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown policy {text!r}") from None


def _list_of(convert):
    def parse(text: str):
        return [convert(tok.strip()) for tok in text.split(",") if tok.strip()]

    return parse


def _add_partition_flags(p: argparse.ArgumentParser, with_policy: bool = True) -> None:
    p.add_argument("--input", required=True, help="hypergraph in .hgr format")
    p.add_argument("--k", type=_positive_int, default=2)
    p.add_argument("--epsilon", type=_epsilon, default=Fraction(1, 10))
    if with_policy:
        p.add_argument("--policy", type=_policy, default=Policy.LDH)
        p.add_argument("--coarse-to", type=_positive_int, default=25)
        p.add_argument("--refine-iters", type=_nonneg_int, default=2)
    p.add_argument("--threads", type=_positive_int, default=default_threads())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="detpart", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="partition a hypergraph into k parts")
    _add_partition_flags(p)
    p.add_argument("--output", help="partition file (default: <input>.part.<k>)")

    p = sub.add_parser("evaluate", help="report cut and balance of a partition file")
    p.add_argument("--input", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--k", type=_positive_int, default=2)
    p.add_argument("--epsilon", type=_epsilon, default=Fraction(1, 10))

    p = sub.add_parser("check-determinism", help="rerun across thread counts and compare outputs")
    _add_partition_flags(p)
    p.add_argument("--thread-list", type=_list_of(_positive_int), default=[1, 2, 4, 8])
    p.add_argument("--repeats", type=_positive_int, default=3)

    p = sub.add_parser("sweep", help="run a parameter grid and write CSV")
    _add_partition_flags(p, with_policy=False)
    p.add_argument("--policies", type=_list_of(_policy), default=list(Policy))
    p.add_argument("--coarse-to-list", type=_list_of(_positive_int), default=[25])
    p.add_argument("--refine-iters-list", type=_list_of(_nonneg_int), default=[2])
    p.add_argument("--csv", default="-", help="output path, '-' for stdout")
    return parser


def _params(args) -> Params:
    return Params(
        policy=args.policy,
        coarse_to=args.coarse_to,
        refine_iters=args.refine_iters,
        epsilon=args.epsilon,
        k=args.k,
    )


def _load(args):
    try:
        g = read_hgr(args.input)
    except (OSError, HgrParseError, UnicodeDecodeError) as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return None, EXIT_PARSE
    if args.k > g.num_nodes:
        print(f"error: more parts than nodes ({args.k} > {g.num_nodes})", file=sys.stderr)
        return None, EXIT_USAGE
    return g, EXIT_OK


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_partition(args) -> int:
    g, status = _load(args)
    if g is None:
        return status
    params = _params(args)
    stats = RunStats()
    start = time.perf_counter()
    try:
        p = run_partition(g, params, args.threads, stats)
    except TooManyParts as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = int((time.perf_counter() - start) * 1000)
    output = args.output or f"{args.input}.part.{args.k}"
    with open(output, "wb") as fh:
        fh.write(format_partition(p))
    report = imbalance(p, [params.epsilon])
    print(
        f"cut={cut(g, p)} maxpart={report.max_part_weight} "
        f"balanced={_yes(report.balanced[params.epsilon])} "
        f"levels={stats.coarsening_levels} time_ms={elapsed}"
    )
    return EXIT_OK


def cmd_evaluate(args) -> int:
    try:
        g = read_hgr(args.input)
        p = read_partition(args.partition, g.num_nodes, args.k, g.node_weight)
    except (OSError, HgrParseError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = imbalance(p, [args.epsilon])
    bound = report.bounds[args.epsilon]
    print(f"cut={cut(g, p)}")
    print("part_weights=" + ",".join(str(int(w)) for w in p.part_weight))
    print(f"max_part_weight={report.max_part_weight}")
    print(f"bound={float(bound):g} ({bound})")
    print(f"balanced={_yes(report.balanced[args.epsilon])}")
    return EXIT_OK


def cmd_check_determinism(args) -> int:
    g, status = _load(args)
    if g is None:
        return status
    params = _params(args)
    reference = None
    ref_label = None
    runs = 0
    for threads in args.thread_list:
        for rep in range(args.repeats):
            out = format_partition(run_partition(g, params, threads))
            runs += 1
            label = f"threads={threads} repeat={rep}"
            if reference is None:
                reference, ref_label = out, label
                continue
            if out != reference:
                a, b = reference.split(b"\n"), out.split(b"\n")
                line = next((i for i, (x, y) in enumerate(zip(a, b)) if x != y), min(len(a), len(b)))
                x = a[line].decode() if line < len(a) else "<eof>"
                y = b[line].decode() if line < len(b) else "<eof>"
                print(f"MISMATCH {label} vs {ref_label}: first difference at node {line} ({y} vs {x})")
                return EXIT_MISMATCH
    threads_text = ",".join(map(str, args.thread_list))
    print(f"deterministic runs={runs} threads={threads_text} repeats={args.repeats}")
    return EXIT_OK


def sweep_rows(g, args):
    grid = sorted(
        itertools.product(
            sorted({p.value for p in args.policies}),
            sorted(set(args.coarse_to_list)),
            sorted(set(args.refine_iters_list)),
        )
    )
    for policy, coarse_to, iters in grid:
        params = Params(policy=policy, coarse_to=coarse_to, refine_iters=iters, epsilon=args.epsilon, k=args.k)
        start = time.perf_counter()
        p = run_partition(g, params, args.threads)
        elapsed = int((time.perf_counter() - start) * 1000)
        report = imbalance(p, [params.epsilon])
        yield [
            policy,
            coarse_to,
            iters,
            args.k,
            cut(g, p),
            report.max_part_weight,
            _yes(report.balanced[params.epsilon]),
            elapsed,
        ]


def cmd_sweep(args) -> int:
    g, status = _load(args)
    if g is None:
        return status
    try:
        fh = sys.stdout if args.csv == "-" else open(args.csv, "w", newline="")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in sweep_rows(g, args):
            writer.writerow(row)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


COMMANDS = {
    "partition": cmd_partition,
    "evaluate": cmd_evaluate,
    "check-determinism": cmd_check_determinism,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
