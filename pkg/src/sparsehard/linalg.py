"""Dense least-squares kernels shared by every module.

Solves are orthogonalization-based (modified Gram-Schmidt with an
absolute pivot threshold on orthogonalized column norms) rather than
normal equations: the adversarial instances contain nearly antiparallel
column pairs that normal equations would square the conditioning of.

All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import RankDeficiencyError


def as_matrix(B) -> np.ndarray:
    """Validate and return a finite 2-D float64 array."""
    B = np.asarray(B, dtype=float)
    if B.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={B.ndim}")
    if B.shape[0] < 1 or B.shape[1] < 1:
        raise ValueError(f"matrix must have positive dimensions, got {B.shape}")
    if not np.all(np.isfinite(B)):
        raise ValueError("matrix entries must all be finite")
    return B


def as_vector(y) -> np.ndarray:
    """Validate and return a finite 1-D float64 array."""
    y = np.asarray(y, dtype=float)
    if y.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got ndim={y.ndim}")
    if not np.all(np.isfinite(y)):
        raise ValueError("vector entries must all be finite")
    return y


@dataclass(frozen=True, eq=False)
class SparseSolution:
    """A sparse fit: sorted support, aligned coefficients, squared residual."""

    support: tuple[int, ...]
    coeffs: np.ndarray
    residual_sq: float

    def __post_init__(self):
        support = tuple(int(j) for j in self.support)
        coeffs = np.asarray(self.coeffs, dtype=float)
        if list(support) != sorted(set(support)):
            raise ValueError("support must be sorted and distinct")
        if coeffs.ndim != 1 or coeffs.shape[0] != len(support):
            raise ValueError("coeffs must align with support")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        if self.residual_sq < 0:
            raise ValueError(f"residual_sq must be nonnegative, got {self.residual_sq}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "coeffs", coeffs)

    def sparsity(self, threshold: float = DEFAULT_TOLS.nonzero_threshold) -> int:
        """Number of coefficients with magnitude above the nonzero threshold."""
        return int(np.sum(np.abs(self.coeffs) > threshold))

    def to_dense(self, num_cols: int) -> np.ndarray:
        """Dense length-num_cols coefficient vector."""
        if self.support and self.support[-1] >= num_cols:
            raise ValueError(
                f"support index {self.support[-1]} out of range for {num_cols} columns"
            )
        x = np.zeros(num_cols)
        if self.support:
            x[list(self.support)] = self.coeffs
        return x


def _mgs(columns: np.ndarray, pivot: float):
    """Modified Gram-Schmidt with dependent-column skipping.

    Returns (Q, R, kept): Q has orthonormal columns spanning the column
    space, R[a, j] is the coefficient of basis vector a in original
    column j (upper triangular on the kept columns, diagonal = the
    orthogonalized norms), and kept lists the accepted column positions.
    Columns whose orthogonalized norm is <= pivot are skipped.
    """
    m, t = columns.shape
    work = columns.astype(float, copy=True)
    basis = []
    rows = []
    kept = []
    for j in range(t):
        v = work[:, j]
        norm = float(np.linalg.norm(v))
        if norm <= pivot:
            continue
        q = v / norm
        r = np.zeros(t)
        r[j] = norm
        if j + 1 < t:
            proj = q @ work[:, j + 1 :]
            work[:, j + 1 :] -= np.outer(q, proj)
            r[j + 1 :] = proj
        basis.append(q)
        rows.append(r)
        kept.append(j)
    if basis:
        Q = np.column_stack(basis)
        R = np.vstack(rows)
    else:
        Q = np.zeros((m, 0))
        R = np.zeros((0, t))
    return Q, R, kept


def _back_substitute(U: np.ndarray, z: np.ndarray) -> np.ndarray:
    rho = U.shape[0]
    c = np.zeros(rho)
    for i in range(rho - 1, -1, -1):
        c[i] = (z[i] - U[i, i + 1 :] @ c[i + 1 :]) / U[i, i]
    return c


def least_squares_on_support(
    B, y, support, tols: Tolerances = DEFAULT_TOLS
) -> SparseSolution:
    """Minimum-residual coefficients over the given column subset.

    Coefficients on columns found linearly dependent (at the pivot
    threshold) are set to 0; the fit is still a global minimizer of
    ||B[:, support] c - y||^2.
    """
    B = as_matrix(B)
    y = as_vector(y)
    if y.shape[0] != B.shape[0]:
        raise ValueError(f"y has length {y.shape[0]} but B has {B.shape[0]} rows")
    idx = [int(j) for j in support]
    if len(set(idx)) != len(idx):
        raise ValueError("support indices must be distinct")
    for j in idx:
        if not 0 <= j < B.shape[1]:
            raise ValueError(f"support index {j} out of range for {B.shape[1]} columns")
    idx = sorted(idx)
    if not idx:
        return SparseSolution((), np.zeros(0), float(y @ y))
    Q, R, kept = _mgs(B[:, idx], tols.pivot_threshold)
    z = Q.T @ y
    resid = y - Q @ z
    coeffs = np.zeros(len(idx))
    if kept:
        coeffs[kept] = _back_substitute(R[:, kept], z)
    return SparseSolution(tuple(idx), coeffs, float(resid @ resid))


def projection_sq_norm(vectors, target, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Squared norm of the projection of target onto span(vectors).

    An empty vector list gives 0. Equals ||target||^2 minus the minimal
    squared residual of any linear combination of the vectors.
    """
    target = as_vector(target)
    vecs = [as_vector(v) for v in vectors]
    for v in vecs:
        if v.shape[0] != target.shape[0]:
            raise ValueError(
                f"vector of length {v.shape[0]} does not match target length {target.shape[0]}"
            )
    if not vecs:
        return 0.0
    Q, _, _ = _mgs(np.column_stack(vecs), tols.pivot_threshold)
    if Q.shape[1] == 0:
        return 0.0
    z = Q.T @ target
    return float(z @ z)


def ordinary_least_squares(X, y, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """OLS coefficients for a full-column-rank design.

    Raises RankDeficiencyError naming the number of dependent columns if
    any orthogonalized column norm falls below the pivot threshold.
    """
    X = as_matrix(X)
    y = as_vector(y)
    if y.shape[0] != X.shape[0]:
        raise ValueError(f"y has length {y.shape[0]} but X has {X.shape[0]} rows")
    p = X.shape[1]
    Q, R, kept = _mgs(X, tols.pivot_threshold)
    deficient = p - len(kept)
    if deficient:
        raise RankDeficiencyError(
            f"{deficient} of {p} columns are linearly dependent at pivot threshold "
            f"{tols.pivot_threshold:g}",
            deficient_count=deficient,
        )
    return _back_substitute(R, Q.T @ y)
