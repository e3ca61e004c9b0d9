"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 iteration budget exhausted,
3 composite (``prime`` only).
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from typing import Optional, Sequence, TextIO

from . import bench, engine, factorizer
from .engine import Status
from .errors import DomainError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_COMPOSITE = 3

# rows 1-7 of the ladder finish in seconds; rows 8, 9 and the wide-gap pair
# need 1e8+ iterations each
DEFAULT_TABLE_ROWS = 7
TABLE_COLUMNS = ("n", "a", "b", "c", "p", "q", "n_check", "i")

_DEC = re.compile(r"[0-9]+")
_HEX = re.compile(r"(0[xX])?[0-9a-fA-F]+")
_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class InputError(Exception):
    pass


def parse_number(text: str, hex_input: bool = False) -> int:
    text = text.strip()
    if hex_input:
        if not _HEX.fullmatch(text):
            raise InputError(f"not a hexadecimal integer: {text!r}")
        return int(text, 16)
    if not _DEC.fullmatch(text):
        raise InputError(f"not a decimal integer: {text!r}")
    return int(text)


def parse_list(text: str, kind=float) -> list:
    items = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return [kind(t) for t in items]
    except ValueError:
        raise InputError(f"bad list: {text!r}") from None


def _budget(value: int) -> Optional[int]:
    return None if value == 0 else value


def format_factors(factors: Sequence[tuple[int, int]]) -> str:
    parts = []
    for p, e in factors:
        parts.append(str(p) if e == 1 else f"{p}{str(e).translate(_SUPERSCRIPT)}")
    return " · ".join(parts)


def _iterations_note(splits: Sequence[factorizer.Split]) -> str:
    counts = [str(s.iterations) for s in splits if s.status is Status.FACTORED]
    return f" (i = {', '.join(counts)})" if counts else ""


def cmd_factor(args, out: TextIO, err: TextIO) -> int:
    n = parse_number(args.n, args.hex)
    if n < 1:
        raise InputError("n must be a positive integer")
    fac = factorizer.full_factorization(n, _budget(args.budget))
    if args.verbose:
        for s in fac.splits:
            err.write(f"run {s.n}: p = {s.p}, q = {s.q}, i = {s.iterations}, {s.status.value}\n")
    if args.json:
        doc = {
            "n": n,
            "factors": [[p, e] for p, e in fac.factors],
            "complete": fac.complete,
            "unresolved": fac.unresolved,
            "splits": [{"n": s.n, "p": s.p, "q": s.q, "iterations": s.iterations,
                        "status": s.status.value} for s in fac.splits],
        }
        out.write(json.dumps(doc) + "\n")
        return EXIT_OK if fac.complete else EXIT_BUDGET

    if not fac.complete:
        known = format_factors(fac.factors)
        rest = " · ".join(f"[{m}?]" for m in fac.unresolved)
        out.write(f"{n} = {' · '.join(x for x in (known, rest) if x)}\n")
        err.write("budget exhausted on " + ", ".join(map(str, fac.unresolved)) + "\n")
        return EXIT_BUDGET
    if n == 1:
        out.write("1 = 1\n")
    elif fac.is_prime:
        note = "".join(f" (i = {s.iterations})" for s in fac.splits[:1])
        out.write(f"{n} is prime{note}\n")
    else:
        out.write(f"{n} = {format_factors(fac.factors)}{_iterations_note(fac.splits)}\n")
    return EXIT_OK


def cmd_prime(args, out: TextIO, err: TextIO) -> int:
    n = parse_number(args.n, args.hex)
    if n < 3 or not n & 1:
        raise InputError(f"prime expects an odd integer >= 3, got {n}")
    result = engine.run(n, _budget(args.budget))
    if not result.complete:
        err.write(f"budget exhausted after {result.iterations} iterations\n")
        return EXIT_BUDGET
    if result.p == 1:
        out.write(f"{n} is prime (i = {result.iterations})\n")
        return EXIT_OK
    out.write(f"{n} is composite: {result.p} · {result.q} (i = {result.iterations})\n")
    return EXIT_COMPOSITE


def cmd_trace(args, out: TextIO, err: TextIO) -> int:
    n = parse_number(args.n, args.hex)
    if not n & 1:
        raise InputError(f"trace expects an odd integer, got {n}")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("k", "b", "c", "y", "branch"))
    for row in engine.trace(n, args.limit):
        writer.writerow((row.k, row.b, row.c, row.y, row.branch.value))
    return EXIT_OK


def table_rows(rows: int, extra: bool, budget: Optional[int]):
    """Yield ``(csv fields, complete)`` per ladder pair."""
    for p, q in bench.ladder_pairs(rows, extra):
        n = p * q
        r = engine.run(n, budget)
        state = r.state.plain()
        i = str(r.iterations) if r.complete else f">{r.iterations}"
        yield (str(n), str(state.a), str(state.b), str(state.c), str(r.p), str(r.q),
               str(r.p * r.q), i), r.complete


def cmd_table(args, out: TextIO, err: TextIO) -> int:
    rows, extra = args.rows, args.extra
    if args.all:
        rows, extra = len(bench.LADDER_PRIMES) - 1, True
    if not 0 <= rows <= len(bench.LADDER_PRIMES) - 1:
        raise InputError(f"--rows must be between 0 and {len(bench.LADDER_PRIMES) - 1}")
    out.write(",".join(TABLE_COLUMNS) + "\n")
    status = EXIT_OK
    for fields_, complete in table_rows(rows, extra, _budget(args.budget)):
        out.write(",".join(fields_) + "\n")
        out.flush()
        if not complete:
            status = EXIT_BUDGET
    return status


def cmd_bench(args, out: TextIO, err: TextIO) -> int:
    budget = _budget(args.budget)
    if args.preset == "ladder":
        records = bench.ladder(args.rows, args.extra, budget)
    else:
        bits = parse_list(args.bits)
        gaps = parse_list(args.gaps)
        if any(g < 0 for g in gaps):
            raise InputError("gaps must be non-negative")
        records = bench.sweep(bits, gaps, args.samples, budget, args.seed, args.workers)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            bench.write_csv(records, fh)
    else:
        bench.write_csv(records, out)
    if args.summary:
        err.write(bench.format_summary(bench.summarize(records)) + "\n")
    return EXIT_BUDGET if any(r.exceeded for r in records) else EXIT_OK


def cmd_audit(args, out: TextIO, err: TextIO) -> int:
    n = parse_number(args.n, args.hex)
    if not n & 1:
        raise InputError(f"audit expects an odd integer, got {n}")
    result, init_report, loop_report = engine.audited_run(n, _budget(args.budget))
    out.write(f"n = {n}: p = {result.p}, q = {result.q}, i = {result.iterations}, "
              f"{result.status.value}\n")
    for phase, rep in (("init", init_report), ("loop", loop_report),
                       ("total", init_report + loop_report)):
        counts = " ".join(f"{k}={v}" for k, v in rep.as_dict().items())
        out.write(f"{phase}: {counts}\n")
    return EXIT_OK if result.complete else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oddfactor",
        description="Factor odd integers with an addition-only Diophantine walk.")
    sub = parser.add_subparsers(dest="command", required=True)

    def number_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("n")
        p.add_argument("--hex", action="store_true", help="read n as hexadecimal")
        p.set_defaults(func=func)
        return p

    def add_budget(p):
        p.add_argument("--budget", type=int, default=bench.DEFAULT_BUDGET,
                       help="max iterations per engine run, 0 for no limit "
                            "(default %(default)s)")

    p = number_cmd("factor", cmd_factor, "print the prime factorization")
    add_budget(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verbose", action="store_true", help="report every engine run on stderr")

    p = number_cmd("prime", cmd_prime, "primality test (exit 0 prime, 3 composite)")
    add_budget(p)

    p = number_cmd("trace", cmd_trace, "CSV of every iteration")
    p.add_argument("--limit", type=int, default=None)

    p = number_cmd("audit", cmd_audit, "count arithmetic operations of a run")
    add_budget(p)

    p = sub.add_parser("table", help="reproduce the reference table as CSV")
    p.add_argument("--rows", type=int, default=DEFAULT_TABLE_ROWS)
    p.add_argument("--extra", action="store_true", help="append the 13 * 256410241 row")
    p.add_argument("--all", action="store_true", help="all rows including the long ones")
    add_budget(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("bench", help="iteration-count sweep over prime pairs, CSV")
    p.add_argument("--bits", default="", help="comma-separated target sizes of n in bits")
    p.add_argument("--gaps", default="0", help="comma-separated log2(q/p) targets")
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--preset", choices=("ladder",), default=None,
                   help="measure the reference ladder pairs instead of sampling")
    p.add_argument("--rows", type=int, default=DEFAULT_TABLE_ROWS, help="ladder rows")
    p.add_argument("--extra", action="store_true", help="add the wide-gap ladder pair")
    p.add_argument("--out", default=None)
    p.add_argument("--summary", action="store_true", help="per-gap h_est summary on stderr")
    add_budget(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    # inputs and outputs may have any number of digits
    limit = sys.get_int_max_str_digits() if hasattr(sys, "get_int_max_str_digits") else None
    if limit is not None:
        sys.set_int_max_str_digits(0)
    try:
        return _dispatch(argv, out, err)
    finally:
        if limit is not None:
            sys.set_int_max_str_digits(limit)


def _dispatch(argv, out: TextIO, err: TextIO) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "budget", 0) < 0:
        err.write("error: --budget must be non-negative\n")
        return EXIT_USAGE
    try:
        return args.func(args, out, err)
    except (InputError, DomainError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
