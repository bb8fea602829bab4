"""
nestex - nested expectations from joint samples.

Subcommands:
  sample     draw joint samples of a named problem into a CSV file
  estimate   estimate E_Y f(E[X|Y]) from a joint-sample CSV file
  benchmark  MSE convergence study over a grid of m
  reference  list the reference value of every problem

Exit codes: 0 success, 1 runtime/domain error, 2 usage/format error.
"""
import argparse
import sys
from pathlib import Path

import pandas as pd
from rich.table import Table

import config
from bench import BenchConfig, fit_loglog_slope, run_benchmark
from dataset import Dataset, format_float, read_csv, write_csv, write_frame
from emit import emit_outputs
from errors import InsufficientDataError, NestexError, UsageError
from estimators import (
    Method,
    OuterFunction,
    OuterKind,
    estimate_plain_mc,
    estimate_post_strat,
    estimate_post_strat_reg,
)
from logs import err_console, log, out_console
from problems import PROBLEMS, get_problem, sample_conditional, sample_joint

METHOD_FLAGS = ["post-strat", "post-strat-reg", "nmc"]


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from None


def _method_list(text: str) -> list[Method]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    bad = [p for p in parts if p not in METHOD_FLAGS]
    if bad or not parts:
        raise argparse.ArgumentTypeError(f"methods must be a comma list of {', '.join(METHOD_FLAGS)}; got {text!r}")
    return [Method.parse(p) for p in parts]


def _outer_function(kind: str, weights: list[float] | None) -> OuterFunction:
    if kind == OuterKind.LINEAR:
        if not weights:
            raise UsageError("--f linear needs --weights")
        return OuterFunction.linear(weights)
    if weights:
        raise UsageError("--weights only applies to --f linear")
    return OuterFunction(OuterKind(kind))


def cmd_sample(args) -> int:
    problem = get_problem(args.problem)
    if args.conditional_at is not None:
        x = sample_conditional(problem, args.conditional_at, args.n, args.seed)
        write_frame(pd.DataFrame(x, columns=[f"x{j}" for j in range(1, problem.j_dim + 1)]), args.out)
        log(f"wrote {args.n} conditional draws of {problem.name} to {args.out}")
        return 0
    dataset = sample_joint(problem, args.n, args.seed)
    write_csv(dataset, args.out)
    log(f"wrote {dataset.n_total} joint samples of {problem.name} (J={dataset.j_dim}, K={dataset.k_dim}) to {args.out}")
    return 0


def cmd_estimate(args) -> int:
    method = Method.parse(args.method)
    if method is Method.NMC:
        raise UsageError("nmc needs a conditional sampler, hence a named problem; use `benchmark` for it")
    dataset: Dataset = read_csv(args.input)
    f = _outer_function(args.f, args.weights)
    f.check_dim(dataset.j_dim)

    estimator = estimate_post_strat if method is Method.POST_STRAT else estimate_post_strat_reg
    result = estimator(dataset, f, args.m)

    out_console.print(f"method    {result.method}")
    out_console.print(f"N         {result.n_total}")
    out_console.print(f"m         {result.m}")
    out_console.print(f"strata    {result.n_outer} x {result.n_inner}")
    if result.ridge_fits:
        out_console.print(f"ridge     {result.ridge_fits} fits")
    out_console.print(f"estimate  {format_float(result.value)}")
    if args.evsi:
        baseline = estimate_plain_mc(dataset, OuterFunction.max_coordinate())
        out_console.print(f"baseline  {format_float(baseline)}")
        out_console.print(f"evsi      {format_float(result.value - baseline)}")
    return 0


def cmd_benchmark(args) -> int:
    bench = BenchConfig(
        problem=args.problem,
        methods=args.methods,
        m_grid=args.m_grid,
        replications=args.reps,
        base_seed=args.seed,
        output_dir=args.out,
    )
    table = run_benchmark(bench, threads=args.threads)
    emit_outputs(table, bench.output_dir)

    summary = Table(title=f"{table.problem} (reference {format_float(table.reference)})")
    for column in ("method", "m", "N", "MSE", "stderr", "ok", "failed"):
        summary.add_column(column, justify="left" if column == "method" else "right")
    for s in table.summary:
        summary.add_row(
            str(s.method), str(s.m), str(s.n_total),
            f"{s.mse:.4e}", f"{s.stderr:.2e}", str(s.count),
            str(s.failures) + ("" if s.valid else " (invalid)"),
        )
    out_console.print(summary)

    for method in table.methods:
        try:
            slope = fit_loglog_slope(table, method)
        except InsufficientDataError:
            continue
        out_console.print(f"slope {method}: {slope:.3f}")
    return 0


def cmd_reference(args) -> int:
    table = Table(title="reference values")
    for column in ("problem", "J", "K", "reference", "source", "conditional sampler"):
        table.add_column(column)
    for problem in PROBLEMS.values():
        table.add_row(
            problem.name, str(problem.j_dim), str(problem.k_dim),
            f"{problem.reference:.6g}", problem.reference_note,
            "yes" if problem.has_conditional else "no",
        )
    out_console.print(table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nestex", description="Nested expectations from joint samples")
    subparsers = parser.add_subparsers(dest="command", required=True)

    sp = subparsers.add_parser("sample", help="write joint samples of a problem to CSV")
    sp.add_argument("problem", choices=list(PROBLEMS))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    sp.add_argument("--out", type=Path, required=True)
    sp.add_argument("--conditional-at", type=_float_list, default=None,
                    help="draw X given Y=y1,...,yK instead of joint samples")
    sp.set_defaults(handler=cmd_sample)

    ep = subparsers.add_parser("estimate", help="estimate a nested expectation from a CSV of joint samples")
    ep.add_argument("input", type=Path)
    ep.add_argument("--method", choices=METHOD_FLAGS, default="post-strat")
    ep.add_argument("--m", type=int, required=True)
    ep.add_argument("--f", choices=[k.value for k in OuterKind], default=OuterKind.MAX.value)
    ep.add_argument("--weights", type=_float_list, default=None)
    ep.add_argument("--evsi", action="store_true",
                    help="also subtract max of the grand column means (expected value of sample information)")
    ep.add_argument("--seed", type=int, default=None, help="accepted for symmetry; stratified estimators are deterministic")
    ep.set_defaults(handler=cmd_estimate)

    bp = subparsers.add_parser("benchmark", help="MSE convergence study")
    bp.add_argument("--problem", choices=list(PROBLEMS), required=True)
    bp.add_argument("--methods", type=_method_list, default=[Method.POST_STRAT])
    bp.add_argument("--m-grid", type=_int_list, required=True)
    bp.add_argument("--reps", type=int, default=config.DEFAULT_REPS)
    bp.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    bp.add_argument("--out", type=Path, default=Path(config.OUTPUT_DIR))
    bp.add_argument("--threads", type=int, default=None, help="worker cap, 0 = one per CPU (overrides NESTEX_THREADS)")
    bp.set_defaults(handler=cmd_benchmark)

    rp = subparsers.add_parser("reference", help="list problems and reference values")
    rp.set_defaults(handler=cmd_reference)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except NestexError as e:
        err_console.print(f"nestex {args.command}: {e}", markup=False)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
