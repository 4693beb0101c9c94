"""Command-line surface: compute terms, reproduce first-terms tables,
print certified root enclosures, run the law checker, extract series
coefficients, and benchmark the term strategies.

Exit codes: 0 success / all laws pass, 1 verification failure or
inconclusive, 2 usage or domain error.  Identical invocations produce
byte-identical stdout (bench timings excepted).
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import QkError
from .lawcheck import Grid, run_laws
from .numerics import dominant_root, reconstruct_detailed
from .sequences import (
    SequenceParams,
    series_coefficients,
    term_definition,
    term_fast,
    term_shortcut,
    term_table,
    theorem3_term,
)

# the widely circulated first-terms table misprints this one entry; the
# recurrence value is emitted and the discrepancy is flagged on stderr
_ERRATUM_CELL = (4, 5, 9)
_ERRATUM_PUBLISHED = 132565

_ERRATUM_NOTE = (
    "note: entry (q=4, k=5, n=9) is 107562 by the defining recurrence; "
    f"a widely circulated table prints {_ERRATUM_PUBLISHED}, which does not "
    "satisfy the recurrence."
)


def _digits_for_bits(bits: int) -> int:
    # 2^-bits resolved in decimal
    return max(1, int(bits * 0.30103) + 1)


def _cmd_term(args) -> int:
    params = SequenceParams(args.q, args.k)
    if args.method == "def":
        print(term_definition(params, args.n))
    elif args.method == "shortcut":
        print(term_shortcut(params, args.n))
    elif args.method == "fast":
        print(term_fast(params, args.n))
    elif args.method == "theorem3":
        print(theorem3_term(params, args.n))
    else:  # binet
        rec = reconstruct_detailed(params, args.n, args.bits)
        print(f"{rec.value} residual={float(rec.residual):.3e}")
    if (args.q, args.k, args.n) == _ERRATUM_CELL:
        print(_ERRATUM_NOTE, file=sys.stderr)
    return 0


def _table_rows(q: int, k_min: int, k_max: int, n_max: int):
    rows = []
    for k in range(k_min, k_max + 1):
        params = SequenceParams(q, k)
        table = term_table(params, n_max)
        for n in range(1, n_max + 1):
            rows.append((q, k, n, table[n - params.min_index]))
    return rows


def _emit_table(rows, fmt: str, stream) -> None:
    if fmt == "csv":
        stream.write("q,k,n,value\n")
        for q, k, n, value in rows:
            stream.write(f"{q},{k},{n},{value}\n")
    elif fmt == "json":
        payload = [
            {"q": q, "k": k, "n": n, "value": value} for q, k, n, value in rows
        ]
        stream.write(json.dumps(payload, indent=2))
        stream.write("\n")
    else:  # markdown
        stream.write("| q | k | n | value |\n")
        stream.write("| --- | --- | --- | --- |\n")
        for q, k, n, value in rows:
            stream.write(f"| {q} | {k} | {n} | {value} |\n")


def _cmd_table(args) -> int:
    if args.k_min < 2 or args.k_max < args.k_min or args.n_max < 1:
        raise QkError(
            "invalid table range: need k-min >= 2, k-max >= k-min, n-max >= 1"
        )
    rows = _table_rows(args.q, args.k_min, args.k_max, args.n_max)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            _emit_table(rows, args.format, handle)
    else:
        _emit_table(rows, args.format, sys.stdout)
    eq, ek, en = _ERRATUM_CELL
    if args.q == eq and args.k_min <= ek <= args.k_max and args.n_max >= en:
        print(_ERRATUM_NOTE, file=sys.stderr)
    return 0


def _cmd_root(args) -> int:
    enclosure = dominant_root(SequenceParams(args.q, args.k), args.bits)
    lo, hi = enclosure.interval.decimal_bounds(_digits_for_bits(args.bits))
    print(f"[{lo}, {hi}]")
    return 0


def _cmd_series(args) -> int:
    for c in series_coefficients(SequenceParams(args.q, args.k), args.count):
        print(c)
    return 0


def _cmd_verify(args) -> int:
    q_values = tuple(args.q) if args.q else (3, 4, 5)
    grid = Grid(q_values, tuple(range(args.k_min, args.k_max + 1)), args.n_max)
    reports = run_laws(args.law, grid, args.bits)
    print(json.dumps([r.to_json() for r in reports], indent=2))
    return 0 if all(r.verdict == "pass" for r in reports) else 1


def _cmd_bench(args) -> int:
    params = SequenceParams(args.q, args.k)
    strategies = [
        ("def", lambda: term_definition(params, args.n)),
        ("shortcut", lambda: term_shortcut(params, args.n)),
        ("fast", lambda: term_fast(params, args.n)),
    ]
    print("strategy,q,k,n,reps,best_seconds")
    reference = None
    for name, runner in strategies:
        best = None
        for _ in range(args.reps):
            start = time.perf_counter()
            value = runner()
            elapsed = time.perf_counter() - start
            best = elapsed if best is None else min(best, elapsed)
        if reference is None:
            reference = value
        elif value != reference:
            raise QkError(f"strategy {name} disagrees at n={args.n}")
        print(f"{name},{args.q},{args.k},{args.n},{args.reps},{best:.6f}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qkbonacci",
        description="Exact and certified computation for weighted k-step "
        "Fibonacci sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    term = sub.add_parser("term", help="print one term")
    term.add_argument("--q", type=int, required=True)
    term.add_argument("--k", type=int, required=True)
    term.add_argument("--n", type=int, required=True)
    term.add_argument(
        "--method",
        choices=("def", "shortcut", "fast", "theorem3", "binet"),
        default="def",
    )
    term.add_argument("--bits", type=int, default=256,
                      help="working precision for --method binet")
    term.set_defaults(func=_cmd_term)

    table = sub.add_parser("table", help="emit a (q, k, n, value) grid")
    table.add_argument("--q", type=int, required=True)
    table.add_argument("--k-min", type=int, required=True)
    table.add_argument("--k-max", type=int, required=True)
    table.add_argument("--n-max", type=int, required=True)
    table.add_argument("--format", choices=("csv", "json", "markdown"),
                       default="csv")
    table.add_argument("--output", help="write to a file instead of stdout")
    table.set_defaults(func=_cmd_table)

    root = sub.add_parser("root", help="certified dominant-root enclosure")
    root.add_argument("--q", type=int, required=True)
    root.add_argument("--k", type=int, required=True)
    root.add_argument("--bits", type=int, default=128)
    root.set_defaults(func=_cmd_root)

    series = sub.add_parser("series", help="generating-function coefficients")
    series.add_argument("--q", type=int, required=True)
    series.add_argument("--k", type=int, required=True)
    series.add_argument("--count", type=int, required=True)
    series.set_defaults(func=_cmd_series)

    verify = sub.add_parser("verify", help="run the law checker")
    verify.add_argument(
        "--law",
        choices=("identities", "lemma1", "lemma2", "error-bound", "growth",
                 "reconstruction", "all"),
        default="all",
    )
    verify.add_argument("--q", type=int, action="append",
                        help="grid q value (repeatable; default 3 4 5)")
    verify.add_argument("--k-min", type=int, default=2)
    verify.add_argument("--k-max", type=int, default=8)
    verify.add_argument("--n-max", type=int, default=300)
    verify.add_argument("--bits", type=int, default=192)
    verify.set_defaults(func=_cmd_verify)

    bench = sub.add_parser("bench", help="time the term strategies")
    bench.add_argument("--q", type=int, required=True)
    bench.add_argument("--k", type=int, required=True)
    bench.add_argument("--n", type=int, required=True)
    bench.add_argument("--reps", type=int, default=3)
    bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
