"""Command-line entry point.

Exit codes: 0 when every checked property holds, 1 when one is violated
(the counterexample is in the output), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .bitseq import MAX_ORDER, CircularBitSeq, parse_sequence, random_sequence
from .counting import BoundaryContext, count_windows, count_windows_rolling, delta_from_context
from .discovery import DEFAULT_BUDGET as DISCOVERY_BUDGET
from .discovery import constructive_basis, empirical_basis, reversal_pair_report
from .errors import BudgetExceeded, SequenceError
from .tablegen import all_tables, validate_tables, write_tables
from .theorem import DEFAULT_BUDGET as SWEEP_BUDGET
from .theorem import exhaustive_verify, verify_theorem1

PROG = "window-lab"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_workers() -> int:
    env = os.environ.get("WINDOW_LAB_WORKERS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"WINDOW_LAB_WORKERS must be a positive integer, got {env!r}")
        if value < 1:
            raise UsageError("WINDOW_LAB_WORKERS must be a positive integer")
        return value
    return os.cpu_count() or 1


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _order(text: str) -> int:
    value = _positive(text)
    if value > MAX_ORDER:
        raise argparse.ArgumentTypeError(f"k must be at most {MAX_ORDER}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}")
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _bit(text: str) -> int:
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError("bit must be 0 or 1")
    return int(text)


def read_sequence(arg: str) -> CircularBitSeq:
    if arg.startswith("@"):
        text = Path(arg[1:]).read_text(encoding="ascii", errors="replace")
        return parse_sequence("".join(text.split()))
    return parse_sequence(arg)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--workers", type=_positive, default=None, help="worker threads (default: $WINDOW_LAB_WORKERS or CPU count)")

    parser = _Parser(prog=PROG, description="Circular window counting and the equal-differences property.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="count order-k windows")
    p.add_argument("--seq", required=True, help="digits, or @file")
    p.add_argument("--k", type=_order, required=True)
    p.add_argument("--format", choices=("json", "tsv"), default="json")

    p = sub.add_parser("verify", parents=[common], help="check the equal pair differences")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--seq", help="digits, or @file")
    mode.add_argument("--random", action="store_true")
    mode.add_argument("--exhaustive", action="store_true")
    p.add_argument("--len", type=_positive, dest="length")
    p.add_argument("--seed", type=_seed)
    p.add_argument("--min-n", type=_positive)
    p.add_argument("--max-n", type=_positive)
    p.add_argument("--budget", type=_positive, default=SWEEP_BUDGET)

    p = sub.add_parser("delta", parents=[common], help="window change for one boundary context")
    p.add_argument("--context", required=True, help="d_{n-3} d_{n-2} d_{n-1} d_0 d_1 d_2 as six digits")
    p.add_argument("--bit", type=_bit, required=True)

    p = sub.add_parser("tables", parents=[common], help="regenerate the six induction tables")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("tsv", "md"), default="tsv")

    p = sub.add_parser("discover", parents=[common], help="basis of vanishing count functionals")
    p.add_argument("--k", type=_order, required=True)
    p.add_argument("--method", choices=("constructive", "empirical", "both"), default="constructive")
    p.add_argument("--max-len", type=_positive)
    p.add_argument("--budget", type=_positive, default=DISCOVERY_BUDGET)

    p = sub.add_parser("reversal-report", parents=[common], help="classify reversal-pair differences")
    p.add_argument("--k", type=_order, required=True)
    p.add_argument("--search-len", type=_positive, default=12)
    p.add_argument("--budget", type=_positive, default=DISCOVERY_BUDGET)

    p = sub.add_parser("bench", parents=[common], help="naive vs rolling counter throughput")
    p.add_argument("--len", type=_positive, dest="length", required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--k", type=_order, required=True)
    return parser


def _emit(out, obj) -> None:
    out.write(json.dumps(obj) + "\n")


def _cmd_count(args, out) -> int:
    cv = count_windows_rolling(read_sequence(args.seq), args.k, workers=args.workers)
    out.write(cv.to_tsv() if args.format == "tsv" else cv.to_json() + "\n")
    return 0


def _cmd_verify(args, out) -> int:
    if args.exhaustive:
        if args.min_n is None or args.max_n is None:
            raise UsageError("--exhaustive needs --min-n and --max-n")
        if args.min_n > args.max_n:
            raise UsageError("--min-n must not exceed --max-n")
        report = exhaustive_verify(args.min_n, args.max_n, workers=args.workers, budget=args.budget)
        _emit(out, report.to_dict())
        return 1 if report.violations else 0
    if args.random:
        if args.length is None or args.seed is None:
            raise UsageError("--random needs --len and an explicit --seed")
        seq = random_sequence(args.length, args.seed)
    else:
        seq = read_sequence(args.seq)
    report = verify_theorem1(seq)
    _emit(out, report.to_dict())
    return 0 if report.holds else 1


def _cmd_delta(args, out) -> int:
    d = delta_from_context(BoundaryContext.parse(args.context, args.bit))
    _emit(out, d.to_dict())
    return 0 if d.delta_difference is not None else 1


def _cmd_tables(args, out) -> int:
    tables = all_tables()
    paths = write_tables(args.out, args.format, tables)
    report = validate_tables(tables)
    report["files"] = [p.name for p in paths]
    _emit(out, report)
    return 1 if report["oracle_mismatches"] or report["consistency_mismatches"] else 0


def _cmd_discover(args, out) -> int:
    if args.method == "constructive":
        _emit(out, constructive_basis(args.k).to_dict())
        return 0
    emp = empirical_basis(args.k, args.max_len, budget=args.budget)
    if args.method == "empirical":
        _emit(out, emp.to_dict())
        return 0
    con = constructive_basis(args.k)
    agree = con.same_span(emp) and con.rank == emp.rank
    merged = con.to_dict()
    merged.update(method="both", agree=agree, empirical_rank=emp.rank,
                  empirical_functionals=[f.to_dict() for f in emp.functionals])
    _emit(out, merged)
    return 0 if agree else 1


def _cmd_reversal(args, out) -> int:
    if not 2 <= args.k <= 8:
        raise UsageError("reversal-report supports 2 <= k <= 8")
    report = reversal_pair_report(args.k, args.search_len, budget=args.budget)
    obj = report.to_dict()
    _emit(out, obj)
    return 0 if obj["consistent"] else 1


def _cmd_bench(args, out) -> int:
    seq = random_sequence(args.length, args.seed)
    t0 = time.perf_counter()
    naive = count_windows(seq, args.k)
    t1 = time.perf_counter()
    rolling = count_windows_rolling(seq, args.k, workers=args.workers)
    t2 = time.perf_counter()
    naive_s, rolling_s = t1 - t0, t2 - t1
    _emit(out, {
        "len": args.length,
        "seed": args.seed,
        "k": args.k,
        "workers": args.workers,
        "naive_seconds": round(naive_s, 6),
        "rolling_seconds": round(rolling_s, 6),
        "speedup": round(naive_s / rolling_s, 3) if rolling_s > 0 else None,
        "rolling_digits_per_second": round(args.length / rolling_s) if rolling_s > 0 else None,
        "equal": naive == rolling,
    })
    return 0 if naive == rolling else 1


_COMMANDS = {
    "count": _cmd_count,
    "verify": _cmd_verify,
    "delta": _cmd_delta,
    "tables": _cmd_tables,
    "discover": _cmd_discover,
    "reversal-report": _cmd_reversal,
    "bench": _cmd_bench,
}


def run(argv: list[str], stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.workers is None:
            args.workers = default_workers()
        return _COMMANDS[args.command](args, out)
    except (UsageError, SequenceError, BudgetExceeded, ValueError, OSError) as exc:
        err.write(f"{PROG}: error: {exc}\n")
        return 2


def main() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8", newline="\n")
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
