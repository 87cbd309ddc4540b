"""Desk-scale workbench for sparse-regression hardness gadgets.

Modules
-------
linalg       least squares on column subsets, projections, OLS
setsystem    random set systems, usefulness margin oracle, projection MC
mip          two-prover proof systems, the matrix reduction, diagnostics
stacking     vertical replication transforms
solvers      exhaustive / forward stepwise / LASSO, certificate check
adversarial  worst-case instance for greedy forward selection
noisy        noisy instances, risk estimation, the retry wrapper
formats      text I/O (.mtxt, .ssys, .mip, vectors)
cli          batch driver over all of the above

Everything is deterministic given a seed; randomized routines draw from
named substreams so results are independent of execution order.
"""

from .config import DEFAULT_TOLS, Tolerances
from .errors import CapExceededError, FormatError, RankDeficiencyError
from .linalg import (
    SparseSolution,
    least_squares_on_support,
    ordinary_least_squares,
    projection_sq_norm,
)
from .setsystem import (
    ProjectionStats,
    SetSystem,
    generate_set_system,
    montecarlo_projection,
    required_universe_size,
    usefulness_delta,
    usefulness_margin,
)
from .mip import (
    CanonicalReport,
    CostReport,
    MipDescription,
    ProjectionGame,
    ProverStrategy,
    ReductionParams,
    best_strategy,
    build_matrix,
    completeness_certificate,
    extract_strategies,
    mip_to_projection_game,
    projection_game_to_mip,
    projection_game_value,
    sparsity_cost_report,
    strategy_value,
    toy_equality_mip,
    toy_xor_mip,
    validate_canonical,
)
from .stacking import (
    error_gap_replication,
    stack_error_gap,
    stack_rows,
    stack_unit_error,
    unit_error_replication,
)
from .solvers import (
    ExhaustiveResult,
    LassoResult,
    StepwiseTrace,
    certificate_check,
    exhaustive_sparse_solve,
    forward_stepwise,
    lasso_coordinate_descent,
)
from .adversarial import (
    AdversaryReport,
    StepwiseAdversary,
    build_stepwise_adversary,
    expected_spike_score,
    verify_stepwise_adversary,
)
from .noisy import (
    NoisyInstance,
    NoisyReductionResult,
    RiskEstimate,
    empirical_risk,
    make_noisy_target,
    noisy_reduction,
)

__version__ = "0.1.0"
