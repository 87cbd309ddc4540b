"""Acceptance suite: one test per headline criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL
line per criterion. Every tolerance is pinned here; nothing is deferred
to later calibration.
"""

import functools
import math
import time

import numpy as np
import pytest

from sparsehard import (
    SetSystem,
    best_strategy,
    build_matrix,
    build_stepwise_adversary,
    completeness_certificate,
    empirical_risk,
    error_gap_replication,
    exhaustive_sparse_solve,
    extract_strategies,
    forward_stepwise,
    generate_set_system,
    make_noisy_target,
    montecarlo_projection,
    noisy_reduction,
    ordinary_least_squares,
    sparsity_cost_report,
    stack_rows,
    toy_equality_mip,
    toy_xor_mip,
    unit_error_replication,
    usefulness_margin,
    verify_stepwise_adversary,
)
from sparsehard.mip import ProverStrategy
from sparsehard.rng import substream


def criterion(label, budget_seconds):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.monotonic()
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\n[FAIL] {label}")
                raise
            elapsed = time.monotonic() - start
            assert elapsed < budget_seconds, (
                f"{label}: took {elapsed:.1f}s, budget {budget_seconds}s"
            )
            print(f"\n[PASS] {label} ({elapsed:.1f}s / {budget_seconds}s)")
        return wrapper
    return decorate


@criterion("adversarial greedy trace (m in 4,8,64,256)", 30)
def test_criterion_adversarial_trace():
    for m in (4, 8, 64, 256):
        inst = build_stepwise_adversary(m)
        _, trace = forward_stepwise(inst.matrix, inst.target, eps=inst.eps)
        assert len(trace.steps) == m // 2  # exact integer iteration count
        assert trace.selected_indices == tuple(range(m // 2))
        assert trace.steps[-1].residual_norm <= 1e-9
        exhaustive = exhaustive_sparse_solve(inst.matrix, inst.target, 2, inst.eps / 2)
        assert exhaustive.within_eps
        assert exhaustive.solution.residual_sq <= 1e-9
        report = verify_stepwise_adversary(inst)
        assert report.ok, report.failures


@criterion("reduction completeness (nq, na in 1..3, exact integer identity)", 5)
def test_criterion_reduction_completeness():
    for nq in (1, 2, 3):
        for na in (1, 2, 3):
            mip = toy_equality_mip(nq, na)
            systems = []
            if na == 1:
                row = np.array([[1, 0, 1, 1, 0, 0, 1, 0, 1, 1]], dtype=np.uint8)
                systems.append(SetSystem(1, 10, row, 3, 0.0))
            else:
                systems.append(
                    generate_set_system(na, 3, seed=10 * nq + na, universe_override=12)
                )
                systems.append(
                    generate_set_system(na, 3, seed=100 + 10 * nq + na,
                                        universe_override=30)
                )
            for system in systems:
                B = build_matrix(mip, system)
                strategy = ProverStrategy((0,) * nq, (0,) * nq)
                cert = completeness_certificate(mip, strategy, B)
                assert cert.sparsity() == 2 * nq
                sums = B[:, list(cert.support)].astype(np.int64).sum(axis=1)
                assert np.all(sums == 1)  # exact integer arithmetic


@criterion("soundness diagnostics on the odd-cycle game (100 random x)", 10)
def test_criterion_soundness_diagnostics():
    mip = toy_xor_mip()
    value, _ = best_strategy(mip)
    assert value == 0.75
    ell = 3
    violations_sparsity = violations_value = 0
    for trial in range(100):
        gen = substream(7000, trial)
        x = gen.standard_normal(mip.num_columns)
        x[gen.random(mip.num_columns) < gen.random()] = 0.0
        report = sparsity_cost_report(x, mip, ell)
        if report.sparsity < report.sparsity_lower_bound - 1e-12:
            violations_sparsity += 1
        extracted, _ = extract_strategies(x, mip, ell)
        if extracted < report.gamma / ell**2 - 1e-12:
            violations_value += 1
    assert violations_sparsity == 0
    assert violations_value == 0


@criterion("set-system usefulness margin (20 seeds at standard sizing)", 60)
def test_criterion_usefulness_margin():
    for seed in range(20):
        system = generate_set_system(4, 2, seed=seed)
        assert system.universe_size == 1420
        margin = usefulness_margin(system, 2)
        assert margin > 44.375, f"seed {seed}: margin {margin}"


@criterion("projection concentration Monte Carlo", 60)
def test_criterion_montecarlo():
    stats = montecarlo_projection(4, 2, trials=1000, seed=1, use_fixed_target=True)
    assert stats.bound == pytest.approx(709.78, abs=0.1)
    assert stats.violations == 0
    fixed = montecarlo_projection(4, 2, trials=10_000, seed=2, use_fixed_target=True)
    rand = montecarlo_projection(4, 2, trials=10_000, seed=2, use_fixed_target=False)
    assert abs(fixed.mean_proj_sq - rand.mean_proj_sq) <= 0.5


@criterion("stacking residual identity and replication counts", 5)
def test_criterion_stacking():
    assert error_gap_replication(4, 0.5) == 5
    for p in (3, 7, 11):
        assert unit_error_replication(50, p, 1.0, 1.0) == p
    for trial in range(100):
        gen = substream(8000, trial)
        m = int(gen.integers(2, 8))
        p = int(gen.integers(1, 6))
        r = int(gen.integers(1, 10))
        B = gen.standard_normal((m, p))
        x = gen.standard_normal(p)
        lhs = float(np.sum((stack_rows(B, r) @ x - 1.0) ** 2))
        rhs = r * float(np.sum((B @ x - 1.0) ** 2))
        assert lhs == pytest.approx(rhs, rel=1e-9)


@criterion("least-squares risk equals column count, independent of rows", 30)
def test_criterion_ols_risk():
    theta5 = np.array([1.5, 0.0, -2.0, 0.0, 0.0])
    estimates = {}
    for m in (20, 200):
        X = substream(900, m).standard_normal((m, 5))
        estimates[m] = empirical_risk(
            lambda X_, y_: ordinary_least_squares(X_, y_),
            X, theta5, trials=2000, seed=901,
        )
    for m, est in estimates.items():
        assert abs(est.mean_loss - 5.0) <= 0.5, f"m={m}: risk {est.mean_loss}"
    low = estimates[20]
    high = estimates[200]
    # overlapping 95% confidence intervals
    assert abs(low.mean_loss - high.mean_loss) <= 1.96 * (low.std_err + high.std_err)


@criterion("noisy-to-exact retry wrapper (Markov gate at delta=1/8)", 30)
def test_criterion_retry_wrapper():
    m = 10
    B = np.eye(m)
    h_value = 2.0 * m  # the identity mock has expected residual m = h/2
    failures = 0
    for run in range(1000):
        result = noisy_reduction(
            lambda B_, k_, y_: y_, B, k=m, h_value=h_value, g_value=1.0,
            failure_prob=1 / 8, seed=run,
        )
        if not result.succeeded:
            failures += 1
    assert failures / 1000 <= 1 / 8

    hopeless = np.full(m, 1000.0)
    for run in range(1000):
        result = noisy_reduction(
            lambda B_, k_, y_: hopeless, B, k=m, h_value=h_value, g_value=1.0,
            failure_prob=1 / 8, seed=run,
        )
        assert not result.succeeded
        assert result.attempts == 3  # ceil(log2(8)) every run


@criterion("exhaustive oracle never loses to greedy at equal budget", 60)
def test_criterion_oracle_consistency():
    violations = 0
    for trial in range(200):
        gen = substream(9000, trial)
        B = gen.standard_normal((10, 15))
        y = gen.standard_normal(10)
        greedy_solution, trace = forward_stepwise(B, y, eps=0.0, max_iter=3)
        budget = len(trace.steps)
        exhaustive = exhaustive_sparse_solve(B, y, k=budget, eps=0.0)
        if exhaustive.solution.residual_sq > greedy_solution.residual_sq + 1e-9:
            violations += 1
    assert violations == 0


@criterion("noise calibration: squared noise norm matches row count", 30)
def test_criterion_noise_calibration():
    # supporting statistical check: E||y - Bx*||^2 = m for unit noise
    m, seeds = 12, 2000
    B = np.eye(m)
    x_star = np.ones(m)
    total = 0.0
    for seed in range(seeds):
        inst = make_noisy_target(B, x_star, seed=seed)
        total += float(np.sum((inst.y - B @ x_star) ** 2))
    mean = total / seeds
    assert abs(mean - m) <= 3.0 * math.sqrt(2.0 * m / seeds)
