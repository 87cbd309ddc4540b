"""Random set systems whose indicator vectors resist sparse approximation.

A system of M distinct subsets of a universe S is "useful at radius
delta" when no admissible sparse linear combination of the indicator
vectors and their complements lands within squared distance delta of the
all-ones vector; admissible means the combination never includes both a
set and its own complement. The universe sizing rule |S| =
ceil(256 ell^2 ln M) makes uniformly random subsets useful at radius
|S|/32 with overwhelming probability, which the brute-force margin
oracle and the Monte Carlo projection harness below check empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .config import DEFAULT_MARGIN_CAP, DEFAULT_TOLS, Tolerances
from .errors import CapExceededError
from .linalg import projection_sq_norm
from .rng import rademacher, random_bits, substream


def required_universe_size(num_sets: int, ell: int) -> int:
    """Universe size ceil(256 * ell^2 * ln(num_sets))."""
    if num_sets < 2:
        raise ValueError(f"need at least 2 sets, got {num_sets}")
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    return math.ceil(256.0 * ell * ell * math.log(num_sets))


def usefulness_delta(universe_size: int) -> float:
    """Usefulness radius |S|/32 guaranteed by the sizing rule."""
    if universe_size < 1:
        raise ValueError(f"universe_size must be >= 1, got {universe_size}")
    return universe_size / 32.0


@dataclass(frozen=True, eq=False)
class SetSystem:
    """M distinct subsets of a universe, stored as 0/1 rows.

    delta is the claimed usefulness radius: |S|/32 for systems built at
    the standard sizing, 0 (no guarantee) for overridden universes.
    """

    num_sets: int
    universe_size: int
    sets: np.ndarray
    ell: int
    delta: float

    def __post_init__(self):
        sets = np.ascontiguousarray(self.sets, dtype=np.uint8)
        # Single-set systems are allowed as reduction inputs (one set per
        # second-prover answer); random generation still requires >= 2.
        if self.num_sets < 1:
            raise ValueError(f"need at least 1 set, got {self.num_sets}")
        if self.universe_size < 1:
            raise ValueError(f"universe_size must be >= 1, got {self.universe_size}")
        if sets.shape != (self.num_sets, self.universe_size):
            raise ValueError(
                f"sets array has shape {sets.shape}, expected "
                f"({self.num_sets}, {self.universe_size})"
            )
        if not np.all((sets == 0) | (sets == 1)):
            raise ValueError("set rows must be 0/1")
        if len({row.tobytes() for row in sets}) != self.num_sets:
            raise ValueError("sets must be distinct")
        if self.delta < 0:
            raise ValueError(f"delta must be nonnegative, got {self.delta}")
        if self.ell < 0:
            raise ValueError(f"ell must be nonnegative, got {self.ell}")
        sets.flags.writeable = False
        object.__setattr__(self, "sets", sets)

    def indicator(self, i: int) -> np.ndarray:
        """Indicator vector of set i, as float64."""
        return self.sets[i].astype(float)

    def complement_indicator(self, i: int) -> np.ndarray:
        """Indicator vector of the complement of set i, as float64."""
        return 1.0 - self.sets[i].astype(float)


def generate_set_system(
    num_sets: int,
    ell: int,
    seed: int,
    universe_override: int | None = None,
) -> SetSystem:
    """M distinct uniformly random subsets, deterministic given the seed.

    With no override the universe gets the standard sizing and delta =
    |S|/32; with an override delta is reported as 0 (no guarantee). Set i
    is drawn from substream (seed, i, attempt); duplicates are resampled
    up to 100 times before giving up (vanishingly unlikely at standard
    sizes).
    """
    if universe_override is None:
        n = required_universe_size(num_sets, ell)
        delta = usefulness_delta(n)
    else:
        if universe_override < 1:
            raise ValueError(f"universe_override must be >= 1, got {universe_override}")
        if num_sets < 2:
            raise ValueError(f"need at least 2 sets, got {num_sets}")
        if ell < 1:
            raise ValueError(f"ell must be >= 1, got {ell}")
        n = universe_override
        delta = 0.0
    rows = np.zeros((num_sets, n), dtype=np.uint8)
    seen: set[bytes] = set()
    for i in range(num_sets):
        for attempt in range(100):
            row = random_bits(substream(seed, i, attempt), n)
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                rows[i] = row
                break
        else:
            raise RuntimeError(
                f"could not draw a distinct set for index {i} after 100 attempts "
                f"(universe size {n} is too small for {num_sets} distinct sets)"
            )
    return SetSystem(num_sets, n, rows, ell, delta)


def _admissible_count(num_sets: int, ell: int) -> int:
    return sum(math.comb(num_sets, t) * 2**t for t in range(1, min(ell, num_sets) + 1))


def usefulness_margin(
    sys: SetSystem,
    ell: int,
    enumeration_cap: int = DEFAULT_MARGIN_CAP,
    tols: Tolerances = DEFAULT_TOLS,
) -> float:
    """Exact brute-force usefulness margin of a set system.

    Minimizes ||e - proj_Z(e)||^2 over every admissible subset Z of at
    most ell vectors drawn from the indicators and their complements
    (never a set together with its own complement). The system is useful
    at every radius strictly below the returned margin. Refuses, rather
    than approximates, when the subset count exceeds the cap.
    """
    if ell < 0:
        raise ValueError(f"ell must be nonnegative, got {ell}")
    count = _admissible_count(sys.num_sets, ell)
    if count > enumeration_cap:
        raise CapExceededError(
            f"{count} admissible subsets exceed the enumeration cap {enumeration_cap}; "
            "refusing (this oracle never approximates)"
        )
    n = sys.universe_size
    e = np.ones(n)
    best = float(n)
    for t in range(1, min(ell, sys.num_sets) + 1):
        for members in combinations(range(sys.num_sets), t):
            for signs in product((0, 1), repeat=t):
                vecs = [
                    sys.indicator(i) if s == 0 else sys.complement_indicator(i)
                    for i, s in zip(members, signs)
                ]
                resid = n - projection_sq_norm(vecs, e, tols)
                if resid < best:
                    best = resid
    return max(best, 0.0)


@dataclass(frozen=True)
class ProjectionStats:
    """Aggregate of squared projections against the 128 ell^2 ln M bound."""

    trials: int
    max_proj_sq: float
    mean_proj_sq: float
    bound: float
    violations: int

    def __post_init__(self):
        if self.violations > self.trials:
            raise ValueError("violations cannot exceed trials")
        if self.mean_proj_sq > self.max_proj_sq + 1e-12:
            raise ValueError("mean cannot exceed max")


def montecarlo_projection(
    num_sets: int,
    ell: int,
    trials: int,
    seed: int,
    use_fixed_target: bool = True,
    tols: Tolerances = DEFAULT_TOLS,
) -> ProjectionStats:
    """Sample squared projections of a target onto random ±1 spans.

    Each trial draws ell independent uniform ±1 vectors in the standard
    universe dimension for (num_sets, max(ell, 1)) and projects either
    the fixed all-ones vector (use_fixed_target) or a fresh uniform ±1
    vector drawn from the same per-trial substream. Violations count
    trials whose squared projection exceeds 128 * ell^2 * ln(num_sets).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if ell < 0:
        raise ValueError(f"ell must be nonnegative, got {ell}")
    if num_sets < 2:
        raise ValueError(f"need num_sets >= 2, got {num_sets}")
    dim = required_universe_size(num_sets, max(ell, 1))
    bound = 128.0 * ell * ell * math.log(num_sets)
    total = 0.0
    worst = 0.0
    violations = 0
    target_fixed = np.ones(dim)
    for t in range(trials):
        gen = substream(seed, t)
        span = [rademacher(gen, dim) for _ in range(ell)]
        target = target_fixed if use_fixed_target else rademacher(gen, dim)
        proj = projection_sq_norm(span, target, tols) if span else 0.0
        total += proj
        worst = max(worst, proj)
        if proj > bound:
            violations += 1
    return ProjectionStats(trials, worst, total / trials, bound, violations)
