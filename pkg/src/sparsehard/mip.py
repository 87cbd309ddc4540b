"""Two-prover one-round proof systems and their reduction to 0/1 matrices.

A "canonical" system satisfies four structural properties: functionality
(for each round r and first-prover answer a1 there is at most one
accepted second-prover answer), uniformity (each query is asked equally
often), equal question-space sizes, and disjoint question/answer spaces
(guaranteed here by namespacing: Q1/Q2 and A1/A2 are separate index
families).

The reduction turns a canonical system plus a set system with one member
per second-prover answer into a Boolean matrix whose rows are (round,
universe point) pairs. Perfect strategies yield 0/1 certificates summing
exactly to the all-ones vector; conversely the diagnostics below measure
how much any coefficient vector must "pay" per query, extract prover
strategies from its support, and evaluate them exactly.

Index layout (fixed): row (r, s) -> r * |S| + s; columns are the Q1 x A1
block first, then Q2 x A2, both lexicographic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .config import DEFAULT_STRATEGY_CAP, DEFAULT_TOLS, Tolerances
from .errors import CapExceededError
from .linalg import SparseSolution, as_vector
from .setsystem import SetSystem


@dataclass(frozen=True)
class MipDescription:
    """Tables of a two-prover one-round proof system.

    q_of_r[r] = (q1, q2) are the queries posed in round r. ua maps
    (r, a1) to the unique accepted a2, where defined; functionality is
    structural because ua is a map.
    """

    num_r: int
    q1_size: int
    q2_size: int
    a1_size: int
    a2_size: int
    q_of_r: tuple[tuple[int, int], ...]
    ua: dict[tuple[int, int], int]
    eps_sound: float | None = None

    def __post_init__(self):
        for name, size in (
            ("num_r", self.num_r),
            ("q1_size", self.q1_size),
            ("q2_size", self.q2_size),
            ("a1_size", self.a1_size),
            ("a2_size", self.a2_size),
        ):
            if size < 1:
                raise ValueError(f"{name} must be >= 1, got {size}")
        if len(self.q_of_r) != self.num_r:
            raise ValueError(f"q_of_r has {len(self.q_of_r)} entries, expected {self.num_r}")
        for r, (q1, q2) in enumerate(self.q_of_r):
            if not 0 <= q1 < self.q1_size:
                raise ValueError(f"round {r}: q1={q1} out of range for |Q1|={self.q1_size}")
            if not 0 <= q2 < self.q2_size:
                raise ValueError(f"round {r}: q2={q2} out of range for |Q2|={self.q2_size}")
        for (r, a1), a2 in self.ua.items():
            if not 0 <= r < self.num_r:
                raise ValueError(f"ua key round {r} out of range")
            if not 0 <= a1 < self.a1_size:
                raise ValueError(f"ua key answer {a1} out of range for |A1|={self.a1_size}")
            if not 0 <= a2 < self.a2_size:
                raise ValueError(f"ua value {a2} out of range for |A2|={self.a2_size}")
        object.__setattr__(self, "q_of_r", tuple((int(a), int(b)) for a, b in self.q_of_r))

    @property
    def num_columns(self) -> int:
        return self.q1_size * self.a1_size + self.q2_size * self.a2_size


def q1_column(mip: MipDescription, q1: int, a1: int) -> int:
    """Column index of the (q1, a1) pair in the reduction layout."""
    return q1 * mip.a1_size + a1


def q2_column(mip: MipDescription, q2: int, a2: int) -> int:
    """Column index of the (q2, a2) pair in the reduction layout."""
    return mip.q1_size * mip.a1_size + q2 * mip.a2_size + a2


@dataclass(frozen=True)
class ProverStrategy:
    """One deterministic answer per query for each prover."""

    p1: tuple[int, ...]
    p2: tuple[int, ...]


@dataclass(frozen=True)
class CanonicalReport:
    """Pass/fail per structural property; failures carry messages."""

    uniformity: bool
    equal_question_sizes: bool
    disjoint_spaces: bool
    functionality: bool
    details: tuple[str, ...] = ()

    @property
    def all_ok(self) -> bool:
        return (
            self.uniformity
            and self.equal_question_sizes
            and self.disjoint_spaces
            and self.functionality
        )


def validate_canonical(mip: MipDescription) -> CanonicalReport:
    """Check the four canonical properties; failures are report entries."""
    details = []
    uniform = True
    for i, size in ((0, mip.q1_size), (1, mip.q2_size)):
        counts = np.zeros(size, dtype=int)
        for qs in mip.q_of_r:
            counts[qs[i]] += 1
        if mip.num_r % size != 0 or not np.all(counts == mip.num_r // size):
            uniform = False
            details.append(
                f"prover {i + 1}: query counts {counts.tolist()} are not uniform "
                f"over {size} queries in {mip.num_r} rounds"
            )
    equal = mip.q1_size == mip.q2_size
    if not equal:
        details.append(f"|Q1|={mip.q1_size} != |Q2|={mip.q2_size}")
    # Disjointness and functionality hold structurally: question/answer
    # spaces are separate index families, and ua is a map.
    return CanonicalReport(uniform, equal, True, True, tuple(details))


def toy_equality_mip(nq: int, na: int) -> MipDescription:
    """Equality game: one round per query pair, accept matching answers.

    Q1 and Q2 have nq queries, A1 and A2 have na answers, and for every
    round the accepted second-prover answer is the counterpart of a1.
    Any matched-constant strategy accepts every round.
    """
    if nq < 1 or na < 1:
        raise ValueError(f"nq and na must be >= 1, got ({nq}, {na})")
    q_of_r = tuple((r // nq, r % nq) for r in range(nq * nq))
    ua = {(r, a1): a1 for r in range(nq * nq) for a1 in range(na)}
    return MipDescription(nq * nq, nq, nq, na, na, q_of_r, ua)


def toy_xor_mip() -> MipDescription:
    """Odd-cycle fixture: equality on three rounds, inequality on one.

    2 queries and 2 answers per prover, 4 rounds. No strategy satisfies
    all four constraints; the best value is exactly 3/4.
    """
    q_of_r = ((0, 0), (0, 1), (1, 0), (1, 1))
    ua = {}
    for r in range(3):
        for a1 in range(2):
            ua[(r, a1)] = a1
    for a1 in range(2):
        ua[(3, a1)] = 1 - a1
    return MipDescription(4, 2, 2, 2, 2, q_of_r, ua)


def strategy_value(mip: MipDescription, strategy: ProverStrategy) -> float:
    """Fraction of rounds the verifier accepts under the strategy pair."""
    if len(strategy.p1) != mip.q1_size or len(strategy.p2) != mip.q2_size:
        raise ValueError("strategy domains do not match the question spaces")
    accepted = sum(
        1
        for r, (q1, q2) in enumerate(mip.q_of_r)
        if mip.ua.get((r, strategy.p1[q1])) == strategy.p2[q2]
    )
    return accepted / mip.num_r


def first_rejected_round(mip: MipDescription, strategy: ProverStrategy) -> int | None:
    """Lowest round index the strategy fails on, or None if it is perfect."""
    for r, (q1, q2) in enumerate(mip.q_of_r):
        if mip.ua.get((r, strategy.p1[q1])) != strategy.p2[q2]:
            return r
    return None


def best_strategy(
    mip: MipDescription, pair_cap: int = DEFAULT_STRATEGY_CAP
) -> tuple[float, ProverStrategy]:
    """Exact maximum acceptance value over all deterministic strategy pairs."""
    total = mip.a1_size**mip.q1_size * mip.a2_size**mip.q2_size
    if total > pair_cap:
        raise CapExceededError(
            f"{total} strategy pairs exceed the enumeration cap {pair_cap}"
        )
    best_val = -1.0
    best: ProverStrategy | None = None
    for p1 in product(range(mip.a1_size), repeat=mip.q1_size):
        for p2 in product(range(mip.a2_size), repeat=mip.q2_size):
            cand = ProverStrategy(p1, p2)
            val = strategy_value(mip, cand)
            if val > best_val:
                best_val = val
                best = cand
    assert best is not None
    return best_val, best


def build_matrix(
    mip: MipDescription, sys: SetSystem, row_cap: int = 10**7
) -> np.ndarray:
    """Reduction matrix: |R|*|S| rows, |Q1||A1| + |Q2||A2| 0/1 columns.

    Within the row block of round r, the (q[r,2], a2) column holds the
    indicator of set a2, the (q[r,1], a1) column holds the complement
    indicator of ua(r, a1) where defined, and every other column is zero.
    """
    if sys.num_sets != mip.a2_size:
        raise ValueError(
            f"set system has {sys.num_sets} members but |A2|={mip.a2_size}; "
            "the reduction needs exactly one set per second-prover answer"
        )
    n = sys.universe_size
    rows = mip.num_r * n
    if rows > row_cap:
        raise CapExceededError(
            f"reduction needs {rows} rows ({mip.num_r} rounds x universe {n}), "
            f"exceeding the row cap {row_cap}"
        )
    B = np.zeros((rows, mip.num_columns))
    indicators = sys.sets.astype(float)
    complements = 1.0 - indicators
    for r, (q1, q2) in enumerate(mip.q_of_r):
        block = slice(r * n, (r + 1) * n)
        for a1 in range(mip.a1_size):
            a2 = mip.ua.get((r, a1))
            if a2 is not None:
                B[block, q1_column(mip, q1, a1)] = complements[a2]
        for a2 in range(mip.a2_size):
            B[block, q2_column(mip, q2, a2)] = indicators[a2]
    return B


def completeness_certificate(
    mip: MipDescription, strategy: ProverStrategy, B: np.ndarray
) -> SparseSolution:
    """0/1 certificate of a perfect strategy: one column per (prover, query).

    Requires the strategy to accept every round; the support is the
    |Q1|+|Q2| columns it selects, all coefficients are 1, and B times the
    certificate equals the all-ones vector exactly in integer arithmetic.
    """
    bad = first_rejected_round(mip, strategy)
    if bad is not None:
        raise ValueError(
            f"strategy is rejected in round {bad} "
            f"(queries {mip.q_of_r[bad]}); no completeness certificate exists"
        )
    support = sorted(
        [q1_column(mip, q1, strategy.p1[q1]) for q1 in range(mip.q1_size)]
        + [q2_column(mip, q2, strategy.p2[q2]) for q2 in range(mip.q2_size)]
    )
    if B.shape[1] != mip.num_columns:
        raise ValueError(
            f"matrix has {B.shape[1]} columns but the layout expects {mip.num_columns}"
        )
    sums = B[:, support].astype(np.int64).sum(axis=1)
    if not np.all(sums == 1):
        raise ValueError(
            "certificate columns do not sum to the all-ones vector; "
            "matrix and proof system are inconsistent"
        )
    return SparseSolution(tuple(support), np.ones(len(support)), 0.0)


def _dense_over_layout(x, mip: MipDescription) -> np.ndarray:
    p = mip.num_columns
    if isinstance(x, SparseSolution):
        return x.to_dense(p)
    x = as_vector(x)
    if x.shape[0] != p:
        raise ValueError(
            f"coefficient vector has length {x.shape[0]} but the column layout "
            f"expects {p}"
        )
    return x


@dataclass(frozen=True)
class CostReport:
    """Per-query and per-round support costs of a coefficient vector.

    A round is good when its two queries' combined cost is at most ell;
    gamma is the good fraction. sparsity_lower_bound is the counting
    bound (1 - gamma) * (ell/2) * (|Q1| + |Q2|), which the true sparsity
    can never beat on a canonical system.
    """

    ell: int
    cost_q1: tuple[int, ...]
    cost_q2: tuple[int, ...]
    cost_r: tuple[int, ...]
    good: tuple[bool, ...]
    gamma: float
    sparsity: int
    sparsity_lower_bound: float


def sparsity_cost_report(
    x, mip: MipDescription, ell: int, tols: Tolerances = DEFAULT_TOLS
) -> CostReport:
    """Cost accounting of x over the reduction column layout."""
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    dense = _dense_over_layout(x, mip)
    active = np.abs(dense) > tols.nonzero_threshold
    cost_q1 = tuple(
        int(np.sum(active[q1_column(mip, q1, 0) : q1_column(mip, q1, 0) + mip.a1_size]))
        for q1 in range(mip.q1_size)
    )
    cost_q2 = tuple(
        int(np.sum(active[q2_column(mip, q2, 0) : q2_column(mip, q2, 0) + mip.a2_size]))
        for q2 in range(mip.q2_size)
    )
    cost_r = tuple(cost_q1[q1] + cost_q2[q2] for q1, q2 in mip.q_of_r)
    good = tuple(c <= ell for c in cost_r)
    gamma = sum(good) / mip.num_r
    bound = (1.0 - gamma) * (ell / 2.0) * (mip.q1_size + mip.q2_size)
    return CostReport(
        ell, cost_q1, cost_q2, cost_r, good, gamma, int(np.sum(active)), bound
    )


def extract_strategies(
    x, mip: MipDescription, ell: int, tols: Tolerances = DEFAULT_TOLS
) -> tuple[float, ProverStrategy]:
    """Best of the ell^2 strategy pairs read off the support of x.

    Per prover and query, the active answers are ranked by ascending
    answer index; the j-th strategy answers with the j-th active answer,
    falling back to answer 0 when fewer than j+1 are active. All ell^2
    pairs are evaluated exactly; ties go to the lexicographically first
    pair.
    """
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    dense = _dense_over_layout(x, mip)
    active = np.abs(dense) > tols.nonzero_threshold

    def ranked(start: int, width: int) -> list[int]:
        return [a for a in range(width) if active[start + a]]

    active_1 = [ranked(q1_column(mip, q1, 0), mip.a1_size) for q1 in range(mip.q1_size)]
    active_2 = [ranked(q2_column(mip, q2, 0), mip.a2_size) for q2 in range(mip.q2_size)]
    strategies_1 = [
        tuple(lst[j] if j < len(lst) else 0 for lst in active_1) for j in range(ell)
    ]
    strategies_2 = [
        tuple(lst[j] if j < len(lst) else 0 for lst in active_2) for j in range(ell)
    ]
    best_val = -1.0
    best: ProverStrategy | None = None
    for p1 in strategies_1:
        for p2 in strategies_2:
            cand = ProverStrategy(p1, p2)
            val = strategy_value(mip, cand)
            if val > best_val:
                best_val = val
                best = cand
    assert best is not None
    return best_val, best


@dataclass(frozen=True)
class ReductionParams:
    """Instance-level soundness parameters of a reduction.

    sigma = (1 - eps_sound * ell^2) * ell / 2 is the sparsity blow-up a
    sound instance forces; k = |Q1| + |Q2| is the planted sparsity;
    delta is the set system's usefulness radius.
    """

    ell: int
    k: int
    sigma: float
    delta: float

    def __post_init__(self):
        if self.ell < 3:
            raise ValueError(f"soundness analysis requires ell >= 3, got {self.ell}")
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")

    @classmethod
    def from_instance(
        cls, mip: MipDescription, sys: SetSystem, ell: int
    ) -> "ReductionParams":
        if mip.eps_sound is None:
            raise ValueError(
                "mip carries no soundness error; set eps_sound to derive sigma"
            )
        sigma = (1.0 - mip.eps_sound * ell * ell) * ell / 2.0
        return cls(ell, mip.q1_size + mip.q2_size, sigma, sys.delta)


@dataclass(frozen=True)
class ProjectionGame:
    """Bipartite constraint game equivalent to a functional proof system.

    edges[r] = (q1, q2) is the r-th edge; maps[r] is the partial
    projection constraint on that edge (dict a1 -> a2).
    """

    q1_size: int
    q2_size: int
    a1_size: int
    a2_size: int
    edges: tuple[tuple[int, int], ...]
    maps: tuple[dict[int, int], ...]


def mip_to_projection_game(mip: MipDescription) -> ProjectionGame:
    """Read the proof system as a projection game (edge per round)."""
    maps = tuple(
        {a1: mip.ua[(r, a1)] for a1 in range(mip.a1_size) if (r, a1) in mip.ua}
        for r in range(mip.num_r)
    )
    return ProjectionGame(
        mip.q1_size, mip.q2_size, mip.a1_size, mip.a2_size, mip.q_of_r, maps
    )


def projection_game_to_mip(game: ProjectionGame) -> MipDescription:
    """Inverse of mip_to_projection_game; the round trip is the identity."""
    ua = {
        (r, a1): a2
        for r, constraint in enumerate(game.maps)
        for a1, a2 in constraint.items()
    }
    return MipDescription(
        len(game.edges),
        game.q1_size,
        game.q2_size,
        game.a1_size,
        game.a2_size,
        game.edges,
        ua,
    )


def projection_game_value(game: ProjectionGame, strategy: ProverStrategy) -> float:
    """Fraction of edges whose projection constraint the assignments satisfy."""
    if len(strategy.p1) != game.q1_size or len(strategy.p2) != game.q2_size:
        raise ValueError("assignment domains do not match the game")
    satisfied = sum(
        1
        for (q1, q2), constraint in zip(game.edges, game.maps)
        if constraint.get(strategy.p1[q1]) == strategy.p2[q2]
    )
    return satisfied / len(game.edges)
