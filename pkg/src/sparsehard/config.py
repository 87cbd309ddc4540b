"""Centralized numeric tolerances and enumeration budgets.

Every threshold-dependent decision (rank pivots, sparsity counting,
convergence checks) is routed through one Tolerances record so that
sparsity counts and pass/fail verdicts are reproducible across modules.
"""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """One record of all numeric thresholds.

    tol_abs: absolute tolerance for "exact" residuals.
    tol_rel: relative tolerance for norm comparisons.
    nonzero_threshold: a coefficient counts toward the sparsity ||x||_0
        iff its magnitude exceeds this.
    pivot_threshold: absolute floor on orthogonalized column norms; below
        it a column is treated as linearly dependent.
    stepwise_skip_threshold: orthogonalized columns with norm below this
        are dropped from the greedy candidate pool (fully explained).
    """

    tol_abs: float = 1e-9
    tol_rel: float = 1e-8
    nonzero_threshold: float = 1e-12
    pivot_threshold: float = 1e-10
    stepwise_skip_threshold: float = 1e-12


DEFAULT_TOLS = Tolerances()

# Enumeration budgets. Brute-force oracles refuse (raise CapExceededError)
# rather than approximate when a budget would be exceeded.
DEFAULT_MARGIN_CAP = 10**6
DEFAULT_SUBSET_CAP = 10**7
DEFAULT_STRATEGY_CAP = 10**7
DEFAULT_ROW_CAP = 10**7

ROW_CAP_ENV = "SPARSEHARD_MAX_ROWS"


def row_cap_from_env(default: int = DEFAULT_ROW_CAP) -> int:
    """Row budget for reduction/stacking outputs; SPARSEHARD_MAX_ROWS overrides."""
    raw = os.environ.get(ROW_CAP_ENV)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ROW_CAP_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{ROW_CAP_ENV} must be positive, got {value}")
    return value
