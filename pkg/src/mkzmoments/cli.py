"""Command-line front end.

Subcommands: ``eval`` (one moment value), ``expr`` (closed-form expression),
``compare`` (cross-representation CSV grid), ``bench`` (timing and stability
characterization). Data goes to stdout, diagnostics to stderr. Exit codes:
0 success, 1 numerical disagreement found by ``compare``, 2 usage or domain
error.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import List, Optional

from .backend import backend_name
from .config import EvalConfig
from .errors import ConvergenceError, DomainError, PoleError
from .moments import (
    MomentSpec,
    compare_representations,
    moment_eval,
    moment_series_oracle,
    moment_theorem_expr,
    second_moment_alkemade,
    second_moment_corollary,
)
from .polylog import expr_eval, expr_eval_exact

CSV_HEADER = "r,n,x,oracle,theorem,corollary,alkemade,max_dev,tail_bound"

# Deviation of the double-precision closed form above which a bench row is
# flagged as being in the documented cancellation regime.
CANCELLATION_FLAG_LEVEL = 1e-6


def _csv_num(v: Optional[float]) -> str:
    return "" if v is None else "%.17g" % v


def _parse_x(text: str):
    """Decimal or exact p/q; fraction input keeps the exact rational point."""
    if "/" in text:
        return Fraction(text)
    return float(text)


def _parse_range(text: str):
    lo, _, hi = text.partition(":")
    lo, hi = int(lo), int(hi)
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _parse_grid(text: str) -> List[Fraction]:
    """Either comma-separated points or start:stop:step, all exact."""
    if ":" in text:
        start_s, stop_s, step_s = text.split(":")
        start, stop, step = Fraction(start_s), Fraction(stop_s), Fraction(step_s)
        if step <= 0:
            raise ValueError("grid step must be positive")
        grid = []
        value = start
        while value <= stop:
            grid.append(value)
            value += step
        return grid
    return [Fraction(part) for part in text.split(",")]


def _add_common_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--tol", type=float, default=1e-13,
                        help="absolute series tolerance (default 1e-13)")
    parser.add_argument("--max-terms", type=int, default=10**7,
                        help="series truncation cap (default 1e7)")
    parser.add_argument("--branch-threshold", type=float, default=0.05,
                        help="|x| below which the series oracle is used (default 0.05)")


def _config(args) -> EvalConfig:
    return EvalConfig(
        tol=args.tol,
        max_terms=args.max_terms,
        series_branch_threshold=args.branch_threshold,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mkz-moments",
        description="Moments of the Meyer-Konig and Zeller operators: "
                    "evaluation, closed forms, cross-validation, benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one moment value")
    p_eval.add_argument("--r", type=int, required=True, help="moment order")
    p_eval.add_argument("--n", type=int, required=True, help="operator index")
    p_eval.add_argument("--x", type=str, required=True,
                        help="evaluation point, decimal or exact fraction p/q")
    p_eval.add_argument("--allow-negative-x", action="store_true",
                        help="expert: evaluate the symbolic form on (-1, 0)")
    p_eval.add_argument("-v", "--verbose", action="store_true",
                        help="report the branch taken and tail bounds on stderr")
    _add_common_flags(p_eval)

    p_expr = sub.add_parser("expr", help="print the closed-form expression")
    p_expr.add_argument("--r", type=int, required=True)
    p_expr.add_argument("--n", type=int, required=True)
    p_expr.add_argument("--format", choices=("plain", "latex"), default="plain")

    p_cmp = sub.add_parser("compare", help="cross-representation comparison grid")
    p_cmp.add_argument("--r-range", type=str, default="0:6", help="inclusive LO:HI")
    p_cmp.add_argument("--n-range", type=str, default="1:20", help="inclusive LO:HI")
    p_cmp.add_argument("--x-grid", type=str, default="0.05:0.95:0.05",
                       help="start:stop:step or comma-separated points")
    p_cmp.add_argument("--format", choices=("csv",), default="csv")
    p_cmp.add_argument("--fail-threshold", type=float, default=1e-9,
                       help="exit 1 if any max_dev exceeds this (default 1e-9)")
    _add_common_flags(p_cmp)

    p_bench = sub.add_parser(
        "bench", help="timing and stability characterization of representations"
    )
    p_bench.add_argument("--n-max", type=int, default=20)
    p_bench.add_argument("--x-near-one", type=float, default=0.999)
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument("--x-grid", type=str, default=None,
                         help="override the stress points (comma-separated)")
    _add_common_flags(p_bench)

    return parser


def cmd_eval(args) -> int:
    cfg = _config(args)
    spec = MomentSpec(args.r, args.n)
    x = _parse_x(args.x)
    xf = float(x)
    if args.verbose:
        if spec.r == 0:
            branch = "constant"
        elif xf < 0:
            branch = "symbolic (negative-x expert range)"
        elif xf < cfg.series_branch_threshold:
            branch = "series-oracle"
        else:
            branch = "closed-form (rational-assisted)"
        print(f"backend: {backend_name()}", file=sys.stderr)
        print(f"branch: {branch}", file=sys.stderr)
        if branch == "series-oracle":
            oracle = moment_series_oracle(spec, xf, cfg)
            print(
                f"tail_bound: {oracle.tail_bound:.3e} after {oracle.terms_used} terms",
                file=sys.stderr,
            )
    value = moment_eval(spec, x, cfg, allow_negative_x=args.allow_negative_x)
    print("%.12g" % value)
    return 0


def cmd_expr(args) -> int:
    expr = moment_theorem_expr(MomentSpec(args.r, args.n))
    if args.format == "latex":
        print(expr.render_latex())
    else:
        print(expr.render_plain())
    return 0


def cmd_compare(args) -> int:
    cfg = _config(args)
    r_range = _parse_range(args.r_range)
    n_range = _parse_range(args.n_range)
    grid = _parse_grid(args.x_grid)
    worst = 0.0
    print(CSV_HEADER)
    for r in r_range:
        for n in n_range:
            for xq in sorted(grid):
                report = compare_representations(MomentSpec(r, n), xq, cfg)
                worst = max(worst, report.max_pairwise_dev)
                row = [
                    str(r),
                    str(n),
                    _csv_num(report.x),
                    _csv_num(report.oracle),
                    _csv_num(report.theorem),
                    _csv_num(report.corollary),
                    _csv_num(report.alkemade),
                    _csv_num(report.max_pairwise_dev),
                    _csv_num(report.oracle_tail_bound),
                ]
                print(",".join(row))
    if worst > args.fail_threshold:
        print(
            f"disagreement: max_dev {worst:.3e} exceeds {args.fail_threshold:.3e}",
            file=sys.stderr,
        )
        return 1
    return 0


BENCH_HEADER = (
    "n,x,oracle_time,oracle_dev,theorem_double_time,theorem_double_dev,"
    "corollary_time,corollary_dev,alkemade_time,alkemade_dev,"
    "moment_eval_time,moment_eval_dev,flag"
)


def _timed(fn, repeats: int):
    """Mean wall time and value; exceptions become a missing value."""
    best_value = None
    start = time.perf_counter()
    for _ in range(repeats):
        try:
            best_value = fn()
        except (PoleError, DomainError, ConvergenceError, OverflowError):
            best_value = None
    elapsed = (time.perf_counter() - start) / max(repeats, 1)
    return elapsed, best_value


def bench_rows(n_max: int, x_points, repeats: int, cfg: EvalConfig):
    """One row per (n, x): times and deviations from the rational-assisted
    reference value of the second moment, for every representation."""
    rows = []
    spec_cache = {}
    for n in range(1, n_max + 1):
        spec = spec_cache.setdefault(n, MomentSpec(2, n))
        expr = moment_theorem_expr(spec)
        for x in x_points:
            reference = expr_eval_exact(expr, x, cfg)

            def dev(v):
                return None if v is None else abs(v - reference)

            t_oracle, v_oracle = _timed(
                lambda: moment_series_oracle(spec, float(x), cfg).value, repeats
            )
            t_double, v_double = _timed(lambda: expr_eval(expr, float(x), cfg), repeats)
            t_cor, v_cor = _timed(lambda: second_moment_corollary(n, x), repeats)
            t_alk, v_alk = _timed(
                lambda: second_moment_alkemade(n, float(x), cfg), repeats
            )
            t_me, v_me = _timed(lambda: moment_eval(spec, x, cfg), repeats)
            d_double = dev(v_double)
            flagged = d_double is None or d_double > CANCELLATION_FLAG_LEVEL
            rows.append(
                {
                    "n": n,
                    "x": float(x),
                    "oracle_time": t_oracle,
                    "oracle_dev": dev(v_oracle),
                    "theorem_double_time": t_double,
                    "theorem_double_dev": d_double,
                    "corollary_time": t_cor,
                    "corollary_dev": dev(v_cor),
                    "alkemade_time": t_alk,
                    "alkemade_dev": dev(v_alk),
                    "moment_eval_time": t_me,
                    "moment_eval_dev": dev(v_me),
                    "flag": "cancellation" if flagged else "",
                }
            )
    return rows


def cmd_bench(args) -> int:
    cfg = _config(args)
    if args.x_grid is not None:
        x_points = _parse_grid(args.x_grid)
    else:
        x_points = [Fraction(x) for x in (0.9, 0.99, args.x_near_one)]
    print(BENCH_HEADER)
    print(f"backend: {backend_name()}", file=sys.stderr)
    for row in bench_rows(args.n_max, x_points, args.repeats, cfg):
        cells = [str(row["n"]), _csv_num(row["x"])]
        for key in (
            "oracle", "theorem_double", "corollary", "alkemade", "moment_eval"
        ):
            cells.append("%.3e" % row[f"{key}_time"])
            cells.append(_csv_num(row[f"{key}_dev"]))
        cells.append(row["flag"])
        print(",".join(cells))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "eval": cmd_eval,
        "expr": cmd_expr,
        "compare": cmd_compare,
        "bench": cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except (DomainError, PoleError, ConvergenceError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
