"""Batch command-line driver.

Every subcommand maps onto one library operation, reads/writes the
documented text formats, and is deterministic given its flags: identical
command lines and seeds produce byte-identical outputs. Exit codes:
0 success, 2 validation/parse error, 3 assertion or verification failure.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import formats
from .adversarial import build_stepwise_adversary, verify_stepwise_adversary
from .config import (
    DEFAULT_MARGIN_CAP,
    DEFAULT_SUBSET_CAP,
    DEFAULT_TOLS,
    Tolerances,
    row_cap_from_env,
)
from .errors import CapExceededError, FormatError, RankDeficiencyError
from .linalg import SparseSolution, ordinary_least_squares
from .mip import (
    MipDescription,
    ProverStrategy,
    best_strategy,
    build_matrix,
    completeness_certificate,
    extract_strategies,
    mip_to_projection_game,
    projection_game_value,
    sparsity_cost_report,
    strategy_value,
    toy_equality_mip,
    toy_xor_mip,
    validate_canonical,
)
from .noisy import empirical_risk, make_noisy_target, noisy_reduction
from .setsystem import generate_set_system, montecarlo_projection, usefulness_margin
from .solvers import (
    certificate_check,
    exhaustive_sparse_solve,
    forward_stepwise,
    lasso_coordinate_descent,
)
from .stacking import stack_error_gap, stack_rows, stack_unit_error

fmt = formats.fmt

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="base RNG seed (default 0)")
    parser.add_argument(
        "--workers", type=int, default=1,
        help="parallelism budget; affects speed only, never results (currently serial)",
    )
    parser.add_argument(
        "--max-rows", type=int, default=None,
        help="row budget for reductions/stacking (default: SPARSEHARD_MAX_ROWS or 10^7)",
    )
    parser.add_argument("--tol-abs", type=float, default=None)
    parser.add_argument("--tol-rel", type=float, default=None)
    parser.add_argument("--nonzero-threshold", type=float, default=None)
    parser.add_argument("--pivot-threshold", type=float, default=None)


def _tols(args) -> Tolerances:
    base = DEFAULT_TOLS
    return Tolerances(
        tol_abs=base.tol_abs if args.tol_abs is None else args.tol_abs,
        tol_rel=base.tol_rel if args.tol_rel is None else args.tol_rel,
        nonzero_threshold=(
            base.nonzero_threshold
            if args.nonzero_threshold is None
            else args.nonzero_threshold
        ),
        pivot_threshold=(
            base.pivot_threshold if args.pivot_threshold is None else args.pivot_threshold
        ),
        stepwise_skip_threshold=base.stepwise_skip_threshold,
    )


def _row_cap(args) -> int:
    if args.max_rows is not None:
        if args.max_rows < 1:
            raise ValueError(f"--max-rows must be positive, got {args.max_rows}")
        return args.max_rows
    return row_cap_from_env()


def _mip_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mip", help="proof-system file (.mip)")
    parser.add_argument(
        "--toy", choices=("equality", "xor"), help="built-in fixture instead of --mip"
    )
    parser.add_argument("--nq", type=int, default=2, help="queries per prover (equality toy)")
    parser.add_argument("--na", type=int, default=2, help="answers per prover (equality toy)")


def _load_mip(args) -> MipDescription:
    if args.mip and args.toy:
        raise ValueError("give either --mip or --toy, not both")
    if args.mip:
        return formats.read_mip(args.mip)
    if args.toy == "equality":
        return toy_equality_mip(args.nq, args.na)
    if args.toy == "xor":
        return toy_xor_mip()
    raise ValueError("a proof system is required: --mip FILE or --toy equality|xor")


def _parse_assignment(text: str, size: int, what: str) -> tuple[int, ...]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != size:
        raise ValueError(f"{what} needs {size} comma-separated answers, got {len(parts)}")
    return tuple(int(p) for p in parts)


def _solution_from_dense(x: np.ndarray, B: np.ndarray, tols: Tolerances) -> SparseSolution:
    support = tuple(int(j) for j in np.flatnonzero(np.abs(x) > tols.nonzero_threshold))
    coeffs = x[list(support)] if support else np.zeros(0)
    fit = B[:, list(support)] @ coeffs if support else np.zeros(B.shape[0])
    residual_sq = float(np.sum((fit - 1.0) ** 2))
    return SparseSolution(support, coeffs, residual_sq)


def _out_stream(path: str | None):
    return open(path, "w", encoding="utf-8") if path else sys.stdout


def _maybe_close(stream) -> None:
    if stream is not sys.stdout:
        stream.close()


# ----------------------------------------------------------------- commands


def cmd_gen_setsystem(args) -> int:
    system = generate_set_system(args.M, args.ell, args.seed, args.universe_override)
    out = _out_stream(args.output)
    try:
        formats.write_setsystem(system, out)
    finally:
        _maybe_close(out)
    return EXIT_OK


def cmd_check_setsystem(args) -> int:
    source = args.input if args.input else sys.stdin
    system = formats.read_setsystem(source)
    ell = args.ell if args.ell is not None else system.ell
    margin = usefulness_margin(system, ell, enumeration_cap=args.cap, tols=_tols(args))
    print(f"margin={fmt(margin)}")
    print(f"delta={fmt(system.delta)}")
    print(f"useful_at_delta={'true' if margin > system.delta else 'false'}")
    return EXIT_OK


def cmd_montecarlo(args) -> int:
    stats = montecarlo_projection(
        args.M,
        args.ell,
        args.trials,
        args.seed,
        use_fixed_target=(args.target == "fixed"),
        tols=_tols(args),
    )
    out = _out_stream(args.output)
    try:
        writer = csv.writer(out)
        writer.writerow(["trials", "max_proj_sq", "mean_proj_sq", "bound", "violations"])
        writer.writerow(
            [stats.trials, fmt(stats.max_proj_sq), fmt(stats.mean_proj_sq),
             fmt(stats.bound), stats.violations]
        )
    finally:
        _maybe_close(out)
    return EXIT_OK


def cmd_build_reduction(args) -> int:
    tols = _tols(args)
    mip = _load_mip(args)
    report = validate_canonical(mip)
    for line in report.details:
        print(f"canonical-warning: {line}", file=sys.stderr)
    if args.ssys:
        system = formats.read_setsystem(args.ssys)
    else:
        system = generate_set_system(
            mip.a2_size, args.ell, args.seed, args.universe_override
        )
    if args.emit_mip:
        formats.write_mip(mip, args.emit_mip)
    B = build_matrix(mip, system, row_cap=_row_cap(args))
    out = _out_stream(args.output)
    try:
        formats.write_matrix(B, out)
    finally:
        _maybe_close(out)
    print(f"rows={B.shape[0]} cols={B.shape[1]}", file=sys.stderr)
    if not args.certify:
        return EXIT_OK
    if args.p1 or args.p2:
        if not (args.p1 and args.p2):
            raise ValueError("--certify with explicit strategy needs both --p1 and --p2")
        strategy = ProverStrategy(
            _parse_assignment(args.p1, mip.q1_size, "--p1"),
            _parse_assignment(args.p2, mip.q2_size, "--p2"),
        )
        if strategy_value(mip, strategy) < 1.0:
            print("certify: supplied strategy is not perfect", file=sys.stderr)
            return EXIT_VERIFICATION
    else:
        value, strategy = best_strategy(mip)
        if value < 1.0:
            print(
                f"certify: no perfect strategy exists (best value {fmt(value)})",
                file=sys.stderr,
            )
            return EXIT_VERIFICATION
    certificate = completeness_certificate(mip, strategy, B)
    if args.cert_out:
        formats.write_vector(certificate.to_dense(B.shape[1]), args.cert_out)
    print(
        f"certificate_sparsity={certificate.sparsity(tols.nonzero_threshold)} "
        f"residual_sq={fmt(certificate.residual_sq)}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_diagnose(args) -> int:
    tols = _tols(args)
    mip = _load_mip(args)
    x = formats.read_vector(args.x)
    report = sparsity_cost_report(x, mip, args.ell, tols)
    value, strategy = extract_strategies(x, mip, args.ell, tols)
    out = _out_stream(args.output)
    try:
        writer = csv.writer(out)
        writer.writerow(["prover", "query", "cost"])
        for q, c in enumerate(report.cost_q1):
            writer.writerow([1, q, c])
        for q, c in enumerate(report.cost_q2):
            writer.writerow([2, q, c])
    finally:
        _maybe_close(out)
    print(f"gamma={fmt(report.gamma)}")
    print(f"sparsity={report.sparsity}")
    print(f"sparsity_lower_bound={fmt(report.sparsity_lower_bound)}")
    print(f"extracted_value={fmt(value)}")
    print(f"extracted_p1={','.join(map(str, strategy.p1))}")
    print(f"extracted_p2={','.join(map(str, strategy.p2))}")
    return EXIT_OK


def cmd_stack(args) -> int:
    B = formats.read_matrix(args.input if args.input else sys.stdin)
    cap = _row_cap(args)
    if args.mode == "rows":
        if args.r is None:
            raise ValueError("--mode rows needs -r/--r COPIES")
        out_matrix = stack_rows(B, args.r, cap)
    elif args.mode == "gap":
        if args.delta is None:
            raise ValueError("--mode gap needs --delta in (0, 1)")
        out_matrix = stack_error_gap(B, args.delta, cap)
    else:  # unit
        if args.c1 is None or args.c2 is None:
            raise ValueError("--mode unit needs --c1 and --c2")
        out_matrix = stack_unit_error(B, args.c1, args.c2, cap)
    out = _out_stream(args.output)
    try:
        formats.write_matrix(out_matrix, out)
    finally:
        _maybe_close(out)
    print(
        f"copies={out_matrix.shape[0] // B.shape[0]} rows={out_matrix.shape[0]}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_solve(args) -> int:
    tols = _tols(args)
    B = formats.read_matrix(args.input)
    y = formats.read_vector(args.y)

    if args.method == "ols":
        theta = ordinary_least_squares(B, y, tols)
        out = _out_stream(args.output)
        try:
            formats.write_vector(theta, out)
        finally:
            _maybe_close(out)
        return EXIT_OK

    if args.method == "exhaustive":
        if args.k is None:
            raise ValueError("--method exhaustive needs --k")
        result = exhaustive_sparse_solve(
            B, y, args.k, args.eps, subset_cap=args.cap, tols=tols
        )
        solution = result.solution
        print(f"within_eps={'true' if result.within_eps else 'false'}")
        print(f"subsets_examined={result.subsets_examined} (all sizes <= k)")
    elif args.method == "stepwise":
        solution, trace = forward_stepwise(B, y, args.eps, args.max_iter, tols)
        if args.trace:
            write_stepwise_trace_csv(trace, args.trace)
        print(f"iterations={len(trace.steps)}")
        print(f"reached_eps={'true' if trace.reached_eps else 'false'}")
        if trace.hit_max_iter:
            print("hit_max_iter=true")
    else:  # lasso
        result = lasso_coordinate_descent(
            B, y, args.lam, tol=args.tol, max_iter=args.max_iter or 10_000, tols=tols
        )
        solution = result.solution
        print(f"converged={'true' if result.converged else 'false'}")
        print(f"sweeps={result.sweeps}")

    print(f"support={','.join(map(str, solution.support))}")
    print(f"sparsity={solution.sparsity(tols.nonzero_threshold)}")
    print(f"residual_sq={fmt(solution.residual_sq)}")
    if args.output:
        formats.write_vector(solution.to_dense(B.shape[1]), args.output)
    return EXIT_OK


def cmd_certify(args) -> int:
    tols = _tols(args)
    B = formats.read_matrix(args.input)
    x = formats.read_vector(args.x)
    solution = _solution_from_dense(x, B, tols)
    ok = certificate_check(B, solution, args.k, args.g, args.h, tols)
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_VERIFICATION


def write_stepwise_trace_csv(trace, sink) -> None:
    stream, close = (open(sink, "w", encoding="utf-8"), True) if isinstance(sink, str) else (sink, False)
    try:
        writer = csv.writer(stream)
        writer.writerow(["iter", "selected_index", "selected_score", "residual_norm"])
        for step in trace.steps:
            writer.writerow(
                [step.iteration, step.selected_index, fmt(step.selected_score),
                 fmt(step.residual_norm)]
            )
    finally:
        if close:
            stream.close()


def cmd_bad_example(args) -> int:
    tols = _tols(args)
    inst = build_stepwise_adversary(args.m)
    if args.output:
        formats.write_matrix(inst.matrix, args.output)
        with open(args.output + ".meta", "w", encoding="utf-8") as sidecar:
            sidecar.write(f"{inst.m} {fmt(inst.delta)} {fmt(inst.eps)}\n")
    if not args.verify:
        if not args.output:
            formats.write_matrix(inst.matrix, sys.stdout)
            print(f"{inst.m} {fmt(inst.delta)} {fmt(inst.eps)}", file=sys.stderr)
        return EXIT_OK
    _, trace = forward_stepwise(inst.matrix, inst.target, inst.eps, tols=tols)
    write_stepwise_trace_csv(trace, args.trace if args.trace else sys.stdout)
    report = verify_stepwise_adversary(inst, tols)
    print(f"iterations={report.iterations}", file=sys.stderr)
    print(f"iteration_opt_ratio={fmt(report.iteration_opt_ratio)}", file=sys.stderr)
    print(f"log_target_ratio={fmt(report.log_target_ratio)}", file=sys.stderr)
    print(f"log_target_bound={fmt(report.log_target_bound)}", file=sys.stderr)
    if not report.ok:
        print(f"verification failed: {report.first_failure}", file=sys.stderr)
        return EXIT_VERIFICATION
    print("verification passed", file=sys.stderr)
    return EXIT_OK


def _risk_estimator(name: str, theta: np.ndarray, args, tols: Tolerances):
    if name == "ols":
        return lambda X, y: ordinary_least_squares(X, y, tols)
    if name == "zero":
        return lambda X, y: np.zeros(X.shape[1])
    if name == "oracle":
        return lambda X, y: theta
    if name == "exhaustive":
        if args.k is None:
            raise ValueError("--estimator exhaustive needs --k")

        def estimate(X, y):
            result = exhaustive_sparse_solve(X, y, args.k, 0.0, tols=tols)
            return result.solution.to_dense(X.shape[1])

        return estimate
    raise ValueError(f"unknown estimator {name!r}")


def _wrapper_algorithm(name: str, args, tols: Tolerances):
    if name == "exhaustive":
        def run(B, k, y):
            return exhaustive_sparse_solve(B, y, k, 0.0, tols=tols).solution.to_dense(B.shape[1])
        return run
    if name == "stepwise":
        def run(B, k, y):
            solution, _ = forward_stepwise(B, y, 0.0, max_iter=k, tols=tols)
            return solution.to_dense(B.shape[1])
        return run
    if name == "lasso":
        def run(B, k, y):
            return lasso_coordinate_descent(B, y, args.lam, tols=tols).solution.to_dense(B.shape[1])
        return run
    if name == "zero":
        return lambda B, k, y: np.zeros(B.shape[1])
    raise ValueError(f"unknown wrapper algorithm {name!r}")


def cmd_noisy(args) -> int:
    tols = _tols(args)
    if args.mode == "target":
        B = formats.read_matrix(args.input)
        x_star = formats.read_vector(args.x)
        inst = make_noisy_target(B, x_star, args.seed, noise_scale=args.noise_scale, tols=tols)
        out = _out_stream(args.output)
        try:
            formats.write_vector(inst.y, out)
        finally:
            _maybe_close(out)
        return EXIT_OK

    if args.mode == "risk":
        X = formats.read_matrix(args.input)
        theta = formats.read_vector(args.theta)
        estimator = _risk_estimator(args.estimator, theta, args, tols)
        estimate = empirical_risk(estimator, X, theta, args.trials, args.seed)
        k = int(np.sum(np.abs(theta) > tols.nonzero_threshold))
        out = _out_stream(args.output)
        try:
            writer = csv.writer(out)
            writer.writerow(["estimator", "m", "p", "k", "trials", "mean_loss", "std_err"])
            writer.writerow(
                [args.estimator, X.shape[0], X.shape[1], k, estimate.trials,
                 fmt(estimate.mean_loss), fmt(estimate.std_err)]
            )
        finally:
            _maybe_close(out)
        if args.estimator == "exhaustive":
            reference = 4.0 * args.k * np.log(X.shape[1])
            print(f"reference_bound_4k_ln_p={fmt(reference)} (reported, not asserted)",
                  file=sys.stderr)
        return EXIT_OK

    # wrapper
    B = formats.read_matrix(args.input)
    algorithm = _wrapper_algorithm(args.alg, args, tols)
    result = noisy_reduction(
        algorithm, B, args.k, args.h, args.g,
        failure_prob=args.delta_fail, seed=args.seed, tols=tols,
    )
    print(f"attempts={result.attempts}")
    if not result.succeeded:
        print("result=failure")
        return EXIT_VERIFICATION
    print("result=success")
    print(f"sparsity={result.solution.sparsity(tols.nonzero_threshold)}")
    print(f"residual_sq={fmt(result.solution.residual_sq)}")
    if args.output:
        formats.write_vector(result.solution.to_dense(B.shape[1]), args.output)
    return EXIT_OK


def cmd_togame(args) -> int:
    mip = _load_mip(args)
    game = mip_to_projection_game(mip)
    print(f"q1_size={game.q1_size} q2_size={game.q2_size} edges={len(game.edges)}")
    for r, ((q1, q2), constraint) in enumerate(zip(game.edges, game.maps)):
        pairs = " ".join(f"{a1}->{a2}" for a1, a2 in sorted(constraint.items()))
        print(f"edge {r}: ({q1}, {q2}) {pairs}")
    if args.p1 or args.p2:
        if not (args.p1 and args.p2):
            raise ValueError("give both --p1 and --p2")
        strategy = ProverStrategy(
            _parse_assignment(args.p1, game.q1_size, "--p1"),
            _parse_assignment(args.p2, game.q2_size, "--p2"),
        )
        print(f"value={fmt(projection_game_value(game, strategy))}")
    if args.best:
        value, strategy = best_strategy(mip)
        print(f"best_value={fmt(value)}")
        print(f"best_p1={','.join(map(str, strategy.p1))}")
        print(f"best_p2={','.join(map(str, strategy.p2))}")
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsehard",
        description="Workbench for sparse-regression hardness gadgets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-setsystem", help="generate a random set system (.ssys)")
    _common_flags(p)
    p.add_argument("--M", type=int, required=True, help="number of sets")
    p.add_argument("--ell", type=int, required=True, help="sparsity parameter")
    p.add_argument("--universe-override", type=int, default=None,
                   help="use this universe size instead of the standard sizing (delta=0)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen_setsystem)

    p = sub.add_parser("check-setsystem", help="brute-force usefulness margin")
    _common_flags(p)
    p.add_argument("-i", "--input", default=None, help=".ssys file (default stdin)")
    p.add_argument("--ell", type=int, default=None, help="default: the file's ell")
    p.add_argument("--cap", type=int, default=DEFAULT_MARGIN_CAP)
    p.set_defaults(func=cmd_check_setsystem)

    p = sub.add_parser("montecarlo", help="random-span projection statistics")
    _common_flags(p)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--target", choices=("fixed", "random"), default="fixed")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("build-reduction", help="build the reduction matrix (.mtxt)")
    _common_flags(p)
    _mip_flags(p)
    p.add_argument("--ssys", default=None, help="set-system file; default: generate one")
    p.add_argument("--ell", type=int, default=3, help="ell for a generated set system")
    p.add_argument("--universe-override", type=int, default=None)
    p.add_argument("--emit-mip", default=None, help="also write the proof system (.mip)")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--certify", action="store_true",
                   help="also emit a completeness certificate (exit 3 if none exists)")
    p.add_argument("--p1", default=None, help="first-prover answers, comma-separated")
    p.add_argument("--p2", default=None, help="second-prover answers, comma-separated")
    p.add_argument("--cert-out", default=None, help="certificate vector output file")
    p.set_defaults(func=cmd_build_reduction)

    p = sub.add_parser("diagnose", help="cost/strategy diagnostics of a coefficient vector")
    _common_flags(p)
    _mip_flags(p)
    p.add_argument("--x", required=True, help="coefficient vector file")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("-o", "--output", default=None, help="per-query cost CSV (default stdout)")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("stack", help="vertical replication transforms")
    _common_flags(p)
    p.add_argument("--mode", choices=("rows", "gap", "unit"), required=True)
    p.add_argument("-r", "--r", type=int, default=None, help="copies (mode rows)")
    p.add_argument("--delta", type=float, default=None, help="gap parameter in (0,1)")
    p.add_argument("--c1", type=float, default=None)
    p.add_argument("--c2", type=float, default=None)
    p.add_argument("-i", "--input", default=None, help=".mtxt file (default stdin)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_stack)

    p = sub.add_parser("solve", help="run a solver on (B, y)")
    _common_flags(p)
    p.add_argument("--method", choices=("exhaustive", "stepwise", "lasso", "ols"),
                   required=True)
    p.add_argument("-i", "--input", required=True, help=".mtxt matrix")
    p.add_argument("-y", "--y", required=True, help="target vector file")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--lam", type=float, default=0.0, help="l1 penalty (lasso)")
    p.add_argument("--tol", type=float, default=1e-10, help="convergence tol (lasso)")
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_SUBSET_CAP)
    p.add_argument("--trace", default=None, help="stepwise trace CSV output")
    p.add_argument("-o", "--output", default=None, help="dense coefficient vector output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("certify", help="sparsity + residual certificate check")
    _common_flags(p)
    p.add_argument("-i", "--input", required=True, help=".mtxt matrix")
    p.add_argument("-x", "--x", required=True, help="coefficient vector file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--h", type=float, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bad-example", help="adversarial instance for greedy selection")
    _common_flags(p)
    p.add_argument("--m", type=int, required=True, help="even row count >= 4")
    p.add_argument("--verify", action="store_true",
                   help="replay and audit the greedy trace (exit 3 on failure)")
    p.add_argument("-o", "--output", default=None, help=".mtxt output (+ .meta sidecar)")
    p.add_argument("--trace", default=None, help="trace CSV output (default stdout)")
    p.set_defaults(func=cmd_bad_example)

    p = sub.add_parser("noisy", help="noisy targets, risk estimation, retry wrapper")
    _common_flags(p)
    p.add_argument("--mode", choices=("target", "risk", "wrapper"), required=True)
    p.add_argument("-i", "--input", required=True, help=".mtxt matrix")
    p.add_argument("--x", default=None, help="planted coefficient vector (mode target)")
    p.add_argument("--noise-scale", type=float, default=1.0)
    p.add_argument("--theta", default=None, help="planted coefficients (mode risk)")
    p.add_argument("--estimator", choices=("ols", "zero", "oracle", "exhaustive"),
                   default="ols")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--alg", choices=("exhaustive", "stepwise", "lasso", "zero"),
                   default="exhaustive", help="inner algorithm (mode wrapper)")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--g", type=float, default=1.0)
    p.add_argument("--h", type=float, default=None)
    p.add_argument("--lam", type=float, default=0.1)
    p.add_argument("--delta-fail", type=float, default=1.0 / 16.0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_noisy)

    p = sub.add_parser("togame", help="view a proof system as a projection game")
    _common_flags(p)
    _mip_flags(p)
    p.add_argument("--p1", default=None, help="first-prover assignment, comma-separated")
    p.add_argument("--p2", default=None, help="second-prover assignment, comma-separated")
    p.add_argument("--best", action="store_true", help="brute-force the best value")
    p.set_defaults(func=cmd_togame)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "noisy":
        if args.mode == "target" and not args.x:
            parser.error("noisy --mode target needs --x")
        if args.mode == "risk" and not args.theta:
            parser.error("noisy --mode risk needs --theta")
        if args.mode == "wrapper" and (args.k is None or args.h is None):
            parser.error("noisy --mode wrapper needs --k and --h")
    try:
        return args.func(args)
    except (ValueError, FormatError, RankDeficiencyError, CapExceededError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
