"""Worst-case instance for greedy forward selection.

The target is the all-ones vector over m coordinates. Half the columns
are disjoint "pair" columns (ones in positions 2i-1, 2i); two extra
"spike" columns are the alternating ±1 vector shifted by delta = 1/sqrt(m)
in both directions. The two spikes combine exactly to the target with
two nonzeros, yet greedy selection prefers the pair columns at every
step and needs all m/2 of them before the residual reaches the stopping
threshold sqrt(2)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .linalg import least_squares_on_support
from .solvers import exhaustive_sparse_solve, forward_stepwise


@dataclass(frozen=True, eq=False)
class StepwiseAdversary:
    """Instance data: matrix columns are v_1..v_{m/2}, v_plus, v_minus."""

    m: int
    matrix: np.ndarray
    target: np.ndarray
    eps: float
    delta: float

    @property
    def plus_index(self) -> int:
        return self.m // 2

    @property
    def minus_index(self) -> int:
        return self.m // 2 + 1


def build_stepwise_adversary(m: int) -> StepwiseAdversary:
    """Build the m x (m/2 + 2) adversarial instance (m even, >= 4)."""
    if m < 4 or m % 2 != 0:
        raise ValueError(f"m must be an even integer >= 4, got {m}")
    delta = 1.0 / math.sqrt(m)
    half = m // 2
    B = np.zeros((m, half + 2))
    for i in range(half):
        B[2 * i, i] = 1.0
        B[2 * i + 1, i] = 1.0
    gamma = np.tile([1.0, -1.0], half)
    B[:, half] = gamma + delta
    B[:, half + 1] = -gamma + delta
    inst = StepwiseAdversary(m, B, np.ones(m), 0.5 * math.sqrt(2.0), delta)
    combo = (B[:, half] + B[:, half + 1]) / (2.0 * delta)
    if not np.all(np.abs(combo - 1.0) <= 1e-12):
        raise AssertionError("spike columns do not combine exactly to the target")
    return inst


def expected_spike_score(m: int, h: int) -> float:
    """Greedy score of either spike column at iteration h.

    After h pair selections the working residual is the suffix indicator
    with m-2h ones and each working spike is ±gamma + delta * (that
    suffix); the score is (m-2h) * delta / sqrt(m + (m-2h) * delta^2).
    At h=0 this is 1/sqrt(1 + 1/m).
    """
    delta = 1.0 / math.sqrt(m)
    live = m - 2 * h
    return live * delta / math.sqrt(m + live * delta * delta)


@dataclass(frozen=True)
class AdversaryReport:
    """Outcome of replaying the instance through the greedy solver."""

    m: int
    ok: bool
    failures: tuple[str, ...]
    iterations: int
    selected: tuple[int, ...]
    final_residual_norm: float
    opt_sparsity: int
    iteration_opt_ratio: float
    log_target_ratio: float
    log_target_bound: float
    exhaustive_residual_sq: float

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None


def verify_stepwise_adversary(
    inst: StepwiseAdversary, tols: Tolerances = DEFAULT_TOLS
) -> AdversaryReport:
    """Replay greedy selection on the instance and audit every step.

    Checks: (a) the pair columns are selected in index order; (b) after h
    picks the residual equals the suffix indicator with m-2h ones;
    (c) exactly m/2 iterations run; (d) per-iteration scores match the
    closed forms (sqrt(2) for pair columns, expected_spike_score for the
    spikes, with the pair score strictly dominant); (e) exhaustive search
    at sparsity 2 and accuracy eps/2 finds an exact solution on the two
    spike columns.
    """
    m = inst.m
    half = m // 2
    failures: list[str] = []

    _, trace = forward_stepwise(inst.matrix, inst.target, inst.eps, tols=tols)

    if trace.selected_indices != tuple(range(half)):
        failures.append(
            f"(a) selection order {trace.selected_indices} != pair columns 0..{half - 1}"
        )
    for step in trace.steps:
        h = step.iteration + 1
        live = m - 2 * h
        expected_norm = math.sqrt(live)
        if abs(step.residual_norm - expected_norm) > 1e-9:
            failures.append(
                f"(b) after iteration {h}: residual norm {step.residual_norm!r} != "
                f"sqrt({live})"
            )
            break
        # Independent route: project the target onto the first h pair
        # columns and demand the zeros-then-ones suffix pattern.
        fit_h = least_squares_on_support(inst.matrix, inst.target, range(h), tols)
        resid_vec = inst.target - inst.matrix[:, list(fit_h.support)] @ fit_h.coeffs
        expected_vec = np.concatenate([np.zeros(2 * h), np.ones(live)])
        if np.max(np.abs(resid_vec - expected_vec)) > 1e-9:
            failures.append(
                f"(b) after iteration {h}: residual vector is not the "
                f"{live}-ones suffix indicator"
            )
            break
    if len(trace.steps) != half:
        failures.append(f"(c) ran {len(trace.steps)} iterations, expected {half}")
    for step in trace.steps:
        h = step.iteration
        pair_scores = [s for j, s in step.scores.items() if j < half]
        spike_scores = [s for j, s in step.scores.items() if j >= half]
        want_spike = expected_spike_score(m, h)
        if any(abs(s - math.sqrt(2.0)) > 1e-9 for s in pair_scores):
            failures.append(f"(d) iteration {h}: a pair-column score differs from sqrt(2)")
            break
        if any(abs(s - want_spike) > 1e-9 for s in spike_scores):
            failures.append(
                f"(d) iteration {h}: spike scores {spike_scores} != {want_spike!r}"
            )
            break
        if not all(math.sqrt(2.0) > s for s in spike_scores):
            failures.append(f"(d) iteration {h}: spike score not strictly dominated")
            break

    exhaustive = exhaustive_sparse_solve(
        inst.matrix, inst.target, k=2, eps=inst.eps / 2.0, tols=tols
    )
    if not exhaustive.within_eps or exhaustive.solution.residual_sq > tols.tol_abs:
        failures.append(
            f"(e) exhaustive 2-sparse residual {exhaustive.solution.residual_sq!r} "
            "is not exact"
        )
    # The spike pair is always one of the exact 2-sparse solutions (at
    # m=4 the first two pair columns are another, and win the tie).
    spike_fit = least_squares_on_support(
        inst.matrix, inst.target, (inst.plus_index, inst.minus_index), tols
    )
    if spike_fit.residual_sq > tols.tol_abs:
        failures.append(
            f"(e) spike-pair residual {spike_fit.residual_sq!r} is not exact"
        )

    final_norm = trace.steps[-1].residual_norm if trace.steps else float(
        np.linalg.norm(inst.target)
    )
    # ln(||b||/eps) = 0.5*ln(2m); always within the 1 + 0.5*ln(m) budget.
    log_ratio = math.log(math.sqrt(m) / inst.eps)
    log_bound = 1.0 + 0.5 * math.log(m)
    if log_ratio > log_bound:
        failures.append(f"log target ratio {log_ratio} exceeds bound {log_bound}")

    return AdversaryReport(
        m=m,
        ok=not failures,
        failures=tuple(failures),
        iterations=len(trace.steps),
        selected=trace.selected_indices,
        final_residual_norm=final_norm,
        opt_sparsity=2,
        iteration_opt_ratio=len(trace.steps) / 2.0,
        log_target_ratio=log_ratio,
        log_target_bound=log_bound,
        exhaustive_residual_sq=exhaustive.solution.residual_sq,
    )
