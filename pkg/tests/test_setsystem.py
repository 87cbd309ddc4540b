import numpy as np
import pytest

from sparsehard import (
    CapExceededError,
    SetSystem,
    generate_set_system,
    montecarlo_projection,
    required_universe_size,
    usefulness_delta,
    usefulness_margin,
)


@pytest.mark.parametrize(
    "num_sets,ell,expected",
    [(2, 1, 178), (4, 2, 1420), (8, 2, 2130)],
)
def test_required_universe_size(num_sets, ell, expected):
    assert required_universe_size(num_sets, ell) == expected


def test_required_universe_size_rejects_bad_params():
    with pytest.raises(ValueError):
        required_universe_size(1, 1)
    with pytest.raises(ValueError):
        required_universe_size(4, 0)


@pytest.mark.parametrize("size,expected", [(32, 1.0), (1420, 44.375), (178, 5.5625)])
def test_usefulness_delta(size, expected):
    assert usefulness_delta(size) == expected


def test_generate_standard_sizing():
    system = generate_set_system(4, 2, seed=7)
    assert system.num_sets == 4
    assert system.universe_size == 1420
    assert system.delta == 44.375
    assert len({row.tobytes() for row in system.sets}) == 4


def test_generate_is_deterministic():
    a = generate_set_system(4, 2, seed=7)
    b = generate_set_system(4, 2, seed=7)
    assert np.array_equal(a.sets, b.sets)
    c = generate_set_system(4, 2, seed=8)
    assert not np.array_equal(a.sets, c.sets)


def test_generate_override_reports_no_guarantee():
    system = generate_set_system(2, 1, seed=0, universe_override=8)
    assert system.universe_size == 8
    assert system.delta == 0.0
    assert len({row.tobytes() for row in system.sets}) == 2


def test_complement_identity_exact():
    system = generate_set_system(3, 2, seed=1, universe_override=16)
    for i in range(system.num_sets):
        total = system.sets[i].astype(int) + (1 - system.sets[i].astype(int))
        assert np.all(total == 1)
        np.testing.assert_array_equal(
            system.indicator(i) + system.complement_indicator(i),
            np.ones(system.universe_size),
        )


def test_margin_indicator_of_universe_is_zero():
    rows = np.vstack([np.zeros(8, dtype=np.uint8), np.ones(8, dtype=np.uint8)])
    system = SetSystem(2, 8, rows, 1, 0.0)
    assert usefulness_margin(system, 1) == pytest.approx(0.0, abs=1e-9)


def test_margin_two_singletons():
    rows = np.array([[1, 0], [0, 1]], dtype=np.uint8)
    system = SetSystem(2, 2, rows, 1, 0.0)
    assert usefulness_margin(system, 1) == pytest.approx(1.0, abs=1e-9)


def test_margin_of_generated_system_beats_delta():
    system = generate_set_system(4, 2, seed=7)
    assert usefulness_margin(system, 2) > 44.375


def test_margin_zero_when_complement_pair_is_member():
    gen_row = np.array([1, 0, 1, 0, 1, 1, 0, 0], dtype=np.uint8)
    rows = np.vstack([gen_row, 1 - gen_row])
    system = SetSystem(2, 8, rows, 2, 0.0)
    # v_0 + v_1 = e even though no single admissible vector spans e
    assert usefulness_margin(system, 2) == pytest.approx(0.0, abs=1e-9)


def test_margin_agrees_with_svd_least_squares():
    # independent route: minimum over the same admissible subsets computed
    # with numpy's SVD-based solver instead of the library projection
    from itertools import combinations, product as iproduct

    system = generate_set_system(3, 2, seed=6, universe_override=10)
    n = system.universe_size
    e = np.ones(n)
    best = float(n)
    for t in (1, 2):
        for members in combinations(range(3), t):
            for signs in iproduct((0, 1), repeat=t):
                cols = np.column_stack([
                    system.indicator(i) if s == 0 else system.complement_indicator(i)
                    for i, s in zip(members, signs)
                ])
                resid = np.linalg.lstsq(cols, e, rcond=None)[1]
                value = float(resid[0]) if resid.size else float(
                    np.sum((e - cols @ np.linalg.lstsq(cols, e, rcond=None)[0]) ** 2)
                )
                best = min(best, value)
    assert usefulness_margin(system, 2) == pytest.approx(best, rel=1e-9, abs=1e-9)


def test_margin_monotone_nonincreasing_in_ell():
    system = generate_set_system(4, 3, seed=3, universe_override=24)
    margins = [usefulness_margin(system, ell) for ell in (1, 2, 3)]
    assert margins[0] >= margins[1] >= margins[2]


def test_margin_cap_refusal():
    system = generate_set_system(4, 2, seed=0, universe_override=12)
    with pytest.raises(CapExceededError, match="admissible subsets"):
        usefulness_margin(system, 2, enumeration_cap=10)


def test_distinctness_resampling_exhaustion():
    # universe of 1 element has only 2 subsets; 3 distinct sets cannot exist
    with pytest.raises(RuntimeError, match="distinct"):
        generate_set_system(3, 1, seed=0, universe_override=1)


def test_montecarlo_fixed_target_never_violates():
    stats = montecarlo_projection(4, 2, trials=1000, seed=1, use_fixed_target=True)
    assert stats.violations == 0
    assert stats.bound == pytest.approx(128 * 4 * np.log(4))
    assert stats.max_proj_sq <= stats.bound


def test_montecarlo_random_target_mean_near_span_dimension():
    stats = montecarlo_projection(4, 2, trials=1000, seed=1, use_fixed_target=False)
    assert 1.0 <= stats.mean_proj_sq <= 4.0


def test_montecarlo_zero_ell_gives_zero_projection():
    stats = montecarlo_projection(4, 0, trials=25, seed=9)
    assert stats.max_proj_sq == 0.0
    assert stats.mean_proj_sq == 0.0
    assert stats.violations == 0


def test_montecarlo_fixed_vs_random_means_agree():
    fixed = montecarlo_projection(4, 2, trials=2000, seed=2, use_fixed_target=True)
    rand = montecarlo_projection(4, 2, trials=2000, seed=2, use_fixed_target=False)
    assert abs(fixed.mean_proj_sq - rand.mean_proj_sq) <= 0.5


def test_montecarlo_deterministic():
    a = montecarlo_projection(4, 2, trials=50, seed=11)
    b = montecarlo_projection(4, 2, trials=50, seed=11)
    assert a == b


def test_setsystem_validation():
    rows = np.array([[1, 0], [1, 0]], dtype=np.uint8)
    with pytest.raises(ValueError, match="distinct"):
        SetSystem(2, 2, rows, 1, 0.0)
    with pytest.raises(ValueError, match="shape"):
        SetSystem(2, 3, np.array([[1, 0], [0, 1]], dtype=np.uint8), 1, 0.0)
    with pytest.raises(ValueError, match="0/1"):
        SetSystem(2, 2, np.array([[2, 0], [0, 1]], dtype=np.uint8), 1, 0.0)
    with pytest.raises(ValueError, match="delta"):
        SetSystem(2, 2, np.array([[1, 0], [0, 1]], dtype=np.uint8), 1, -1.0)


def test_sets_are_frozen():
    system = generate_set_system(2, 1, seed=0, universe_override=8)
    with pytest.raises(ValueError):
        system.sets[0, 0] = 1 - system.sets[0, 0]
