"""Noisy sparse regression: instance generation, risk estimation, and the
retry wrapper that turns a noisy-regression solver into a certified
exact-target solver.

Noise is standard normal per coordinate (Box-Muller on named substreams,
see rng.py), so instances are reproducible from (seed, dimensions) alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .linalg import SparseSolution, as_matrix, as_vector
from .rng import standard_normals, substream


@dataclass(frozen=True, eq=False)
class NoisyInstance:
    """Design matrix, planted coefficients, and the observed noisy target."""

    X: np.ndarray
    theta: np.ndarray
    y: np.ndarray
    seed: int
    k: int

    def __post_init__(self):
        if self.y.shape[0] != self.X.shape[0]:
            raise ValueError("y length does not match the design's row count")
        if self.theta.shape[0] != self.X.shape[1]:
            raise ValueError("theta length does not match the design's column count")


@dataclass(frozen=True)
class RiskEstimate:
    trials: int
    mean_loss: float
    std_err: float

    def __post_init__(self):
        if self.std_err < 0:
            raise ValueError("std_err must be nonnegative")


def make_noisy_target(
    B,
    x_star,
    seed: int,
    noise_scale: float = 1.0,
    k: int | None = None,
    tols: Tolerances = DEFAULT_TOLS,
) -> NoisyInstance:
    """Observe y = B x* + noise_scale * eps with eps i.i.d. N(0,1).

    eps comes from substream (seed, 0) via the documented Box-Muller
    transform; noise_scale=0 gives y = B x* exactly. k defaults to the
    sparsity of x* at the nonzero threshold.
    """
    B = as_matrix(B)
    x_star = as_vector(x_star)
    if x_star.shape[0] != B.shape[1]:
        raise ValueError(
            f"x_star has length {x_star.shape[0]} but B has {B.shape[1]} columns"
        )
    if noise_scale < 0:
        raise ValueError(f"noise_scale must be nonnegative, got {noise_scale}")
    mean = B @ x_star
    if noise_scale == 0.0:
        y = mean
    else:
        y = mean + noise_scale * standard_normals(substream(seed, 0), B.shape[0])
    if k is None:
        k = int(np.sum(np.abs(x_star) > tols.nonzero_threshold))
    return NoisyInstance(B, x_star, y, seed, k)


def empirical_risk(
    estimator: Callable[[np.ndarray, np.ndarray], np.ndarray],
    X,
    theta,
    trials: int,
    seed: int,
) -> RiskEstimate:
    """Mean prediction loss ||X(theta_hat - theta)||^2 over fresh noise.

    Trial t draws its noise from substream (seed, t), so the estimate is
    independent of evaluation order. Estimator exceptions are re-raised
    with the failing trial index.
    """
    X = as_matrix(X)
    theta = as_vector(theta)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if theta.shape[0] != X.shape[1]:
        raise ValueError(
            f"theta has length {theta.shape[0]} but X has {X.shape[1]} columns"
        )
    mean = X @ theta
    losses = np.empty(trials)
    for t in range(trials):
        y = mean + standard_normals(substream(seed, t), X.shape[0])
        try:
            theta_hat = as_vector(estimator(X, y))
        except Exception as exc:
            raise RuntimeError(f"estimator failed on trial {t}: {exc}") from exc
        diff = X @ theta_hat - mean
        losses[t] = float(diff @ diff)
    std_err = float(np.std(losses, ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return RiskEstimate(trials, float(np.mean(losses)), std_err)


@dataclass(frozen=True)
class NoisyReductionResult:
    """Certified solution (or None), with the attempt count."""

    solution: SparseSolution | None
    attempts: int

    @property
    def succeeded(self) -> bool:
        return self.solution is not None


def noisy_reduction(
    noisy_alg: Callable[[np.ndarray, int, np.ndarray], object],
    B,
    k: int,
    h_value: float,
    g_value: float,
    failure_prob: float = 1.0 / 16.0,
    seed: int = 0,
    tols: Tolerances = DEFAULT_TOLS,
) -> NoisyReductionResult:
    """Solve the exact all-ones target by retrying a noisy-regression solver.

    Up to ceil(log2(1/failure_prob)) times: draw y = e + eps with fresh
    N(0,1) noise from substream (seed, attempt), run noisy_alg(B, k, y),
    and accept the first output with at most k*g_value nonzeros whose
    recomputed squared residual against e is at most h_value. The checks
    are self-certifying: a returned solution always satisfies both.
    """
    B = as_matrix(B)
    if not 0.0 < failure_prob < 1.0:
        raise ValueError(f"failure_prob must lie in (0, 1), got {failure_prob}")
    attempts = math.ceil(math.log2(1.0 / failure_prob))
    m, p = B.shape
    ones = np.ones(m)
    for attempt in range(attempts):
        y = ones + standard_normals(substream(seed, attempt), m)
        out = noisy_alg(B, k, y)
        dense = out.to_dense(p) if isinstance(out, SparseSolution) else as_vector(out)
        if dense.shape[0] != p:
            raise ValueError(
                f"noisy_alg returned length {dense.shape[0]}, expected {p}"
            )
        support = tuple(
            int(j) for j in np.flatnonzero(np.abs(dense) > tols.nonzero_threshold)
        )
        if len(support) > k * g_value:
            continue
        coeffs = dense[list(support)] if support else np.zeros(0)
        fit = B[:, list(support)] @ coeffs if support else np.zeros(m)
        residual_sq = float(np.sum((fit - ones) ** 2))
        if residual_sq <= h_value:
            return NoisyReductionResult(
                SparseSolution(support, coeffs, residual_sq), attempt + 1
            )
    return NoisyReductionResult(None, attempts)
