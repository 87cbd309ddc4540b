"""Sparse-regression solvers: exhaustive search, forward stepwise, LASSO.

The exhaustive solver is the ground-truth oracle the others are judged
against. Forward stepwise greedily picks the column with the largest
correlation-to-norm ratio against the current residual and
orthogonalizes everything against the pick; its full per-iteration trace
is kept so tests can audit every selection. The LASSO solver is plain
cyclic coordinate descent with soft thresholding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .config import DEFAULT_SUBSET_CAP, DEFAULT_TOLS, Tolerances
from .errors import CapExceededError
from .linalg import SparseSolution, as_matrix, as_vector, least_squares_on_support


@dataclass(frozen=True)
class ExhaustiveResult:
    """Best subset fit plus whether it met the accuracy target."""

    solution: SparseSolution
    within_eps: bool
    subsets_examined: int


def exhaustive_sparse_solve(
    B,
    y,
    k: int,
    eps: float,
    subset_cap: int = DEFAULT_SUBSET_CAP,
    tols: Tolerances = DEFAULT_TOLS,
) -> ExhaustiveResult:
    """Minimum-residual fit over every support of size at most k.

    Searches all sizes <= k (size exactly k first, smaller sizes after),
    not just size k; ties keep the first support found. within_eps
    reports whether the best squared residual is <= eps^2; the best
    solution is returned either way. Refuses when the total number of
    supports exceeds the cap.
    """
    B = as_matrix(B)
    y = as_vector(y)
    if y.shape[0] != B.shape[0]:
        raise ValueError(f"y has length {y.shape[0]} but B has {B.shape[0]} rows")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    p = B.shape[1]
    kk = min(k, p)
    total = sum(math.comb(p, t) for t in range(kk + 1))
    if total > subset_cap:
        raise CapExceededError(
            f"{total} supports of size <= {kk} over {p} columns exceed the "
            f"enumeration cap {subset_cap}"
        )
    sizes = [kk] + list(range(kk))
    best: SparseSolution | None = None
    examined = 0
    for t in sizes:
        for support in combinations(range(p), t):
            examined += 1
            sol = least_squares_on_support(B, y, support, tols)
            if best is None or sol.residual_sq < best.residual_sq:
                best = sol
    assert best is not None
    return ExhaustiveResult(best, best.residual_sq <= eps * eps, examined)


@dataclass(frozen=True)
class StepwiseStep:
    """One greedy iteration: the pick, its score, all candidate scores,
    and the residual norm after orthogonalization."""

    iteration: int
    selected_index: int
    selected_score: float
    scores: dict[int, float]
    residual_norm: float


@dataclass(frozen=True)
class StepwiseTrace:
    steps: tuple[StepwiseStep, ...]
    reached_eps: bool
    hit_max_iter: bool

    @property
    def selected_indices(self) -> tuple[int, ...]:
        return tuple(s.selected_index for s in self.steps)


def forward_stepwise(
    B,
    y,
    eps: float,
    max_iter: int | None = None,
    tols: Tolerances = DEFAULT_TOLS,
) -> tuple[SparseSolution, StepwiseTrace]:
    """Greedy forward selection with per-pick orthogonalization.

    While the working residual b' has norm above eps, pick the unselected
    column v' (working, i.e. orthogonalized, copy) maximizing
    (b'.v')/||v'||, ties to the lowest original column index, then make
    b' and all remaining working columns orthogonal to the pick.
    Working columns with norm at or below the skip threshold are treated
    as fully explained and leave the candidate pool. Final coefficients
    are recovered by least squares over the selected original columns.
    """
    B = as_matrix(B)
    y = as_vector(y)
    if y.shape[0] != B.shape[0]:
        raise ValueError(f"y has length {y.shape[0]} but B has {B.shape[0]} rows")
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    m, p = B.shape
    col_norms = np.linalg.norm(B, axis=0)
    if np.all(col_norms <= tols.stepwise_skip_threshold):
        raise ValueError("all columns are (numerically) zero")
    limit = min(m, p) if max_iter is None else max_iter
    if limit < 0:
        raise ValueError(f"max_iter must be nonnegative, got {limit}")

    V = B.copy()
    bp = y.copy()
    available = np.ones(p, dtype=bool)
    steps: list[StepwiseStep] = []
    while float(np.linalg.norm(bp)) > eps and len(steps) < limit:
        norms = np.linalg.norm(V, axis=0)
        candidates = available & (norms > tols.stepwise_skip_threshold)
        if not np.any(candidates):
            break
        raw = V.T @ bp
        scores = np.full(p, -np.inf)
        scores[candidates] = raw[candidates] / norms[candidates]
        j = int(np.argmax(scores))  # first maximum = lowest index on ties
        v = V[:, j].copy()
        denom = float(v @ v)
        available[j] = False
        bp = bp - v * (float(bp @ v) / denom)
        rest = available & (norms > tols.stepwise_skip_threshold)
        if np.any(rest):
            proj = (v @ V[:, rest]) / denom
            V[:, rest] -= np.outer(v, proj)
        steps.append(
            StepwiseStep(
                iteration=len(steps),
                selected_index=j,
                selected_score=float(scores[j]),
                scores={int(c): float(scores[c]) for c in np.flatnonzero(candidates)},
                residual_norm=float(np.linalg.norm(bp)),
            )
        )
    reached = float(np.linalg.norm(bp)) <= eps
    trace = StepwiseTrace(tuple(steps), reached, not reached and len(steps) >= limit)
    solution = least_squares_on_support(B, y, sorted(s.selected_index for s in steps), tols)
    return solution, trace


@dataclass(frozen=True)
class LassoResult:
    """Thresholded solution, raw iterate, and convergence flag."""

    solution: SparseSolution
    raw_coeffs: np.ndarray
    converged: bool
    sweeps: int


def lasso_coordinate_descent(
    B,
    y,
    lam: float,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    tols: Tolerances = DEFAULT_TOLS,
) -> LassoResult:
    """Cyclic coordinate descent on (1/2)||y - Bx||^2 + lam * ||x||_1.

    Converged when the largest coordinate change in a full sweep is at
    most tol; otherwise the best iterate so far is returned with
    converged=False. Zero columns keep coefficient 0.
    """
    B = as_matrix(B)
    y = as_vector(y)
    if y.shape[0] != B.shape[0]:
        raise ValueError(f"y has length {y.shape[0]} but B has {B.shape[0]} rows")
    if lam < 0:
        raise ValueError(f"lam must be nonnegative, got {lam}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    p = B.shape[1]
    sq_norms = np.sum(B * B, axis=0)
    x = np.zeros(p)
    resid = y.copy()
    converged = False
    sweeps = 0
    for sweeps in range(1, max_iter + 1):
        max_delta = 0.0
        for j in range(p):
            if sq_norms[j] == 0.0:
                continue
            old = x[j]
            rho = float(B[:, j] @ resid) + sq_norms[j] * old
            new = math.copysign(max(abs(rho) - lam, 0.0), rho) / sq_norms[j]
            if new != old:
                resid -= (new - old) * B[:, j]
                x[j] = new
            max_delta = max(max_delta, abs(new - old))
        if max_delta <= tol:
            converged = True
            break
    support = tuple(int(j) for j in np.flatnonzero(np.abs(x) > tols.nonzero_threshold))
    coeffs = x[list(support)] if support else np.zeros(0)
    fit = B[:, list(support)] @ coeffs if support else np.zeros(B.shape[0])
    residual_sq = float(np.sum((y - fit) ** 2))
    solution = SparseSolution(support, coeffs, residual_sq)
    return LassoResult(solution, x, converged, sweeps)


def certificate_check(
    B, x: SparseSolution, k: int, g_value: float, h_value: float,
    tols: Tolerances = DEFAULT_TOLS,
) -> bool:
    """Accept iff ||x||_0 <= k*g_value and ||Bx - e||^2 <= h_value.

    The residual against the all-ones target is recomputed from B and x,
    never trusted from the solution record.
    """
    B = as_matrix(B)
    if x.support and x.support[-1] >= B.shape[1]:
        raise ValueError(
            f"support index {x.support[-1]} out of range for {B.shape[1]} columns"
        )
    if x.sparsity(tols.nonzero_threshold) > k * g_value:
        return False
    fit = B @ x.to_dense(B.shape[1])
    residual_sq = float(np.sum((fit - 1.0) ** 2))
    return residual_sq <= h_value
