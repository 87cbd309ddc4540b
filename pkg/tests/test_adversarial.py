import math

import numpy as np
import pytest

from sparsehard import (
    build_stepwise_adversary,
    expected_spike_score,
    forward_stepwise,
    lasso_coordinate_descent,
    verify_stepwise_adversary,
)


def test_build_small_instances():
    inst = build_stepwise_adversary(4)
    assert inst.matrix.shape == (4, 4)
    np.testing.assert_allclose(inst.matrix[:, 2], [1.5, -0.5, 1.5, -0.5])
    inst8 = build_stepwise_adversary(8)
    assert inst8.delta == pytest.approx(0.353553, abs=1e-6)
    assert inst8.eps == pytest.approx(0.707107, abs=1e-6)


def test_build_rejects_odd_or_tiny_m():
    for m in (3, 7, 2, 0, -4):
        with pytest.raises(ValueError):
            build_stepwise_adversary(m)


def test_spike_pair_combines_exactly_to_target():
    for m in (4, 8, 32):
        inst = build_stepwise_adversary(m)
        combo = (inst.matrix[:, inst.plus_index] + inst.matrix[:, inst.minus_index]) / (
            2.0 * inst.delta
        )
        assert np.max(np.abs(combo - 1.0)) <= 1e-12


@pytest.mark.parametrize("m", [4, 8, 64])
def test_verification_passes(m):
    report = verify_stepwise_adversary(build_stepwise_adversary(m))
    assert report.ok, report.failures
    assert report.iterations == m // 2
    assert report.selected == tuple(range(m // 2))
    assert report.iteration_opt_ratio == m / 4
    assert report.final_residual_norm <= 1e-9


def test_iteration_zero_spike_scores():
    # 1/sqrt(1 + 1/m) at the first iteration
    assert expected_spike_score(4, 0) == pytest.approx(1 / math.sqrt(1.25))
    assert expected_spike_score(8, 0) == pytest.approx(0.9428090415820634)


def test_spike_score_formula_matches_observed_trace():
    inst = build_stepwise_adversary(8)
    _, trace = forward_stepwise(inst.matrix, inst.target, eps=inst.eps)
    for step in trace.steps:
        for j in (inst.plus_index, inst.minus_index):
            assert step.scores[j] == pytest.approx(
                expected_spike_score(8, step.iteration), rel=1e-12
            )


def test_strict_score_dominance_everywhere():
    for m in (4, 8, 64, 256):
        for h in range(m // 2):
            assert math.sqrt(2.0) > expected_spike_score(m, h)


def test_log_target_ratio_within_reported_bound():
    for m in (4, 8, 64, 256):
        report_ratio = math.log(math.sqrt(m) / (0.5 * math.sqrt(2.0)))
        assert report_ratio == pytest.approx(0.5 * math.log(2 * m))
        assert report_ratio <= 1.0 + 0.5 * math.log(m)


def test_report_carries_diagnostics():
    report = verify_stepwise_adversary(build_stepwise_adversary(8))
    assert report.opt_sparsity == 2
    assert report.log_target_ratio == pytest.approx(0.5 * math.log(16))
    assert report.log_target_bound == pytest.approx(1.0 + 0.5 * math.log(8))
    assert report.exhaustive_residual_sq <= 1e-9
    assert report.first_failure is None


def test_lasso_on_adversary_reported_not_asserted():
    # exploratory: record the LASSO support size on the adversarial
    # instance; no bound is claimed for it, only basic sanity
    inst = build_stepwise_adversary(16)
    result = lasso_coordinate_descent(inst.matrix, inst.target, lam=0.5, tol=1e-10)
    assert result.converged
    assert np.all(np.isfinite(result.raw_coeffs))
    assert 0 <= result.solution.sparsity() <= inst.matrix.shape[1]
