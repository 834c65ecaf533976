"""Command-line front end: ingest a transition matrix, print passage-time
PGFs, series, moments and r-th passage laws, or self-verify the solver
against the step-recurrence oracle.

Exit codes:
    0  success
    1  internal mismatch found by `check`
    2  matrix parse / validation error
    3  state index out of range
    4  success, but the requested target is defective from the source
       (result still printed; the warning goes to stderr)
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .exact import format_rational
from .markov import StochasticMatrix, first_passage_table, parse_matrix
from .moments import moment_report, rth_passage_pgf, rth_passage_pmf
from .solver import solve_all_for_target, solve_pgf

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_INDEX_ERROR = 3
EXIT_DEFECTIVE = 4


def _add_common(sub, matrix_required=True):
    sub.add_argument("--matrix", required=matrix_required,
                     help="path to the transition matrix file")
    sub.add_argument("--format", choices=["auto", "csv", "json", "whitespace"],
                     default="auto", help="matrix file format (default: sniffed)")
    sub.add_argument("--normalize-rows", action="store_true",
                     help="rescale each row by its sum instead of requiring exact row sums")
    mode = sub.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="decimal", action="store_false",
                      help="print values as exact fractions")
    mode.add_argument("--decimal", dest="decimal", action="store_true",
                      help="print values as decimals (default); non-terminating "
                           "values fall back to fractions with a rounded hint")
    sub.set_defaults(decimal=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fpt",
        description="Exact first-passage-time analysis for finite discrete-time "
                    "Markov chains.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_pgf = subs.add_parser("pgf", help="closed-form first-passage PGF")
    _add_common(p_pgf)
    p_pgf.add_argument("--from", dest="source", type=int, required=True)
    p_pgf.add_argument("--to", dest="target", type=int, required=True)

    p_series = subs.add_parser("series", help="pmf prefix: lines '<k> <value>'")
    _add_common(p_series)
    p_series.add_argument("--from", dest="source", type=int, required=True)
    p_series.add_argument("--to", dest="target", type=int, required=True)
    p_series.add_argument("--terms", type=int, default=10)

    p_mom = subs.add_parser("moments", help="mean, second factorial moment and "
                                            "variance per source for one target")
    _add_common(p_mom)
    p_mom.add_argument("--to", dest="target", type=int, required=True)

    p_pass = subs.add_parser("passage", help="order-r passage PGF and pmf prefix")
    _add_common(p_pass)
    p_pass.add_argument("--from", dest="source", type=int, required=True)
    p_pass.add_argument("--to", dest="target", type=int, required=True)
    p_pass.add_argument("--order", type=int, default=2)
    p_pass.add_argument("--terms", type=int, default=10)

    p_check = subs.add_parser(
        "check", help="compare solver series against the step-recurrence oracle")
    _add_common(p_check, matrix_required=False)
    p_check.add_argument("--terms", type=int, default=25)
    p_check.add_argument("--seed", type=int, default=0,
                         help="seed for generated random matrices")
    p_check.add_argument("--count", type=int, default=20,
                         help="number of random matrices when no --matrix is given")
    p_check.add_argument("--max-states", type=int, default=6)
    return parser


def _load_matrix(args) -> StochasticMatrix:
    with open(args.matrix, "r", encoding="utf-8") as fh:
        text = fh.read()
    m = parse_matrix(text, fmt=args.format, normalize_rows=args.normalize_rows)
    if m.row_normalized:
        print("note: rows were rescaled to sum to 1", file=sys.stderr)
    return m


def _warn_defective(source: int, target: int, mass: Fraction) -> None:
    print(f"warning: target {target} is reached from {source} with "
          f"probability {mass} < 1; the law is defective", file=sys.stderr)


def _fmt(x: Fraction, decimal: bool) -> str:
    return format_rational(x, decimal)


def cmd_pgf(args) -> int:
    P = _load_matrix(args)
    res = solve_pgf(P, args.source, args.target)
    print(res.pgf.render(decimal=args.decimal))
    if res.defective:
        _warn_defective(args.source, args.target, res.reach_mass)
        return EXIT_DEFECTIVE
    return EXIT_OK


def cmd_series(args) -> int:
    if args.terms < 1:
        raise ValueError("--terms must be >= 1")
    P = _load_matrix(args)
    res = solve_pgf(P, args.source, args.target)
    coeffs = res.pgf.series(args.terms + 1)
    for k in range(1, args.terms + 1):
        print(f"{k} {_fmt(coeffs[k], args.decimal)}")
    if res.defective:
        _warn_defective(args.source, args.target, res.reach_mass)
        return EXIT_DEFECTIVE
    return EXIT_OK


def cmd_moments(args) -> int:
    P = _load_matrix(args)
    rep = moment_report(P, args.target)
    defective = False
    print("# source mean second_factorial variance")
    for k in range(1, P.n + 1):
        if rep.finite[k - 1]:
            print(f"{k} {_fmt(rep.means[k - 1], args.decimal)} "
                  f"{_fmt(rep.second_factorial[k - 1], args.decimal)} "
                  f"{_fmt(rep.variances[k - 1], args.decimal)}")
        else:
            defective = True
            print(f"{k} inf inf inf")
    if defective:
        print(f"warning: some sources do not reach target {args.target} "
              f"with certainty; their moments are infinite", file=sys.stderr)
        return EXIT_DEFECTIVE
    return EXIT_OK


def cmd_passage(args) -> int:
    if args.order < 1:
        raise ValueError("--order must be >= 1")
    if args.terms < 1:
        raise ValueError("--terms must be >= 1")
    P = _load_matrix(args)
    rp = rth_passage_pgf(P, args.source, args.target, args.order)
    pmf = rth_passage_pmf(P, args.source, args.target, args.order, args.terms)
    print(rp.pgf.render(decimal=args.decimal))
    for k, v in enumerate(pmf.values, start=1):
        print(f"{k} {_fmt(v, args.decimal)}")
    first = solve_pgf(P, args.source, args.target)
    if first.defective:
        _warn_defective(args.source, args.target, first.reach_mass)
        return EXIT_DEFECTIVE
    return EXIT_OK


def random_stochastic_matrix(rng: random.Random, n: int) -> StochasticMatrix:
    """Random exact stochastic matrix; zero entries are common so reducible
    shapes show up in the corpus."""
    rows = []
    for _ in range(n):
        weights = [rng.randint(0, 6) for _ in range(n)]
        if sum(weights) == 0:
            weights[rng.randrange(n)] = 1
        total = sum(weights)
        rows.append([Fraction(w, total) for w in weights])
    return StochasticMatrix(rows)


def check_matrix(P: StochasticMatrix, depth: int) -> Optional[str]:
    """Compare solver series with the oracle for all ordered pairs.

    Returns None on agreement, else a description of the first mismatch.
    """
    for j in range(1, P.n + 1):
        pgfs = solve_all_for_target(P, j)
        table = first_passage_table(P, j, depth)
        for i in range(1, P.n + 1):
            series = pgfs[i].pgf.series(depth + 1)
            for k in range(1, depth + 1):
                if series[k] != table[k - 1][i - 1]:
                    return (f"pair ({i},{j}) step {k}: solver {series[k]} "
                            f"!= oracle {table[k - 1][i - 1]}")
    return None


def cmd_check(args) -> int:
    if args.terms < 1:
        raise ValueError("--terms must be >= 1")
    if args.matrix:
        matrices = [(None, _load_matrix(args))]
    else:
        rng = random.Random(args.seed)
        matrices = []
        for idx in range(args.count):
            n = rng.randint(2, args.max_states)
            matrices.append((idx, random_stochastic_matrix(rng, n)))
    for idx, P in matrices:
        mismatch = check_matrix(P, args.terms)
        if mismatch is not None:
            where = "given matrix" if idx is None else f"generated matrix #{idx}"
            print(f"FAIL {where}: {mismatch}")
            return EXIT_CHECK_FAILED
    print(f"PASS {len(matrices)} matrix(es), depth {args.terms}")
    return EXIT_OK


_COMMANDS = {
    "pgf": cmd_pgf,
    "series": cmd_series,
    "moments": cmd_moments,
    "passage": cmd_passage,
    "check": cmd_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except IndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INDEX_ERROR
    except (ValueError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
