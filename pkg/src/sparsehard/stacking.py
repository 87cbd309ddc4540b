"""Vertical replication transforms.

Stacking r copies of a matrix multiplies every squared residual against
the (replicated) all-ones target by exactly r while preserving sparse
exact solutions, which is what makes the two replication-count formulas
below useful: one amplifies an error gap past the row count raised to a
power, the other drives a polynomial error allowance down to 1.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .config import DEFAULT_ROW_CAP
from .errors import CapExceededError
from .linalg import as_matrix


def _ceil_product_power(factors: list[tuple[int, float]]) -> int:
    """ceil(prod base^exponent), exact when all exponents are integral.

    For non-integral exponents the value is computed in floating point
    (with a nudge to the nearest integer when within 1e-9 relative);
    astronomically large results raise CapExceededError with the
    magnitude rather than overflowing.
    """
    if all(abs(e - round(e)) < 1e-12 for _, e in factors):
        value = Fraction(1)
        for base, e in factors:
            value *= Fraction(base) ** int(round(e))
        return math.ceil(value)
    log_value = sum(e * math.log(base) for base, e in factors)
    if log_value > 700.0:
        raise CapExceededError(
            f"required replication count is about 10^{log_value / math.log(10):.0f}, "
            "beyond any configurable row cap"
        )
    value = math.exp(log_value)
    nearest = round(value)
    if nearest > 0 and abs(value - nearest) < 1e-9 * max(1.0, nearest):
        return nearest
    return math.ceil(value)


def error_gap_replication(m: int, delta: float) -> int:
    """Copies needed to push the unsatisfiable-side error past the row count:
    ceil(m^(1/delta - 1)) + 1, for 0 < delta < 1."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie strictly between 0 and 1, got {delta}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return _ceil_product_power([(m, 1.0 / delta - 1.0)]) + 1


def unit_error_replication(m: int, p: int, c1: float, c2: float) -> int:
    """Copies that turn an error allowance p^c1 * m^(1-c2) into allowance 1:
    ceil((p^c1 * m^(1-c2))^(1/c2)), for c1, c2 > 0."""
    if c1 <= 0 or c2 <= 0:
        raise ValueError(f"c1 and c2 must be positive, got ({c1}, {c2})")
    if m < 1 or p < 1:
        raise ValueError(f"m and p must be >= 1, got ({m}, {p})")
    return _ceil_product_power([(p, c1 / c2), (m, (1.0 - c2) / c2)])


def stack_rows(B, copies: int, row_cap: int = DEFAULT_ROW_CAP) -> np.ndarray:
    """Vertically concatenate `copies` identical copies of B."""
    B = as_matrix(B)
    if copies < 1:
        raise ValueError(f"copies must be >= 1, got {copies}")
    rows = copies * B.shape[0]
    if rows > row_cap:
        raise CapExceededError(
            f"stacking needs r={copies} copies, i.e. {rows} rows, "
            f"exceeding the row cap {row_cap}"
        )
    return np.tile(B, (copies, 1))


def stack_error_gap(B, delta: float, row_cap: int = DEFAULT_ROW_CAP) -> np.ndarray:
    """stack_rows with the error-gap replication count for parameter delta."""
    B = as_matrix(B)
    return stack_rows(B, error_gap_replication(B.shape[0], delta), row_cap)


def stack_unit_error(B, c1: float, c2: float, row_cap: int = DEFAULT_ROW_CAP) -> np.ndarray:
    """stack_rows with the unit-error replication count for (c1, c2)."""
    B = as_matrix(B)
    return stack_rows(B, unit_error_replication(B.shape[0], B.shape[1], c1, c2), row_cap)
