import math
from itertools import combinations

import numpy as np
import pytest

from tecsim.rng import philox_generator
from tecsim.tec import (
    FACE_QUBITS,
    NoiseModel,
    SyndromeVector,
    analytic_protected,
    analytic_unprotected,
    build_decode_table,
    decode_and_correct,
    exact_enumeration,
    extract_syndrome,
    monte_carlo_sweep,
    representative_record,
    run_pattern,
    sample_errors,
    simulate_trial,
    success_weight_profile,
    syndrome_of_pattern,
    theta_to_p,
)

SINGLE_ERROR_SYNDROMES = {
    1: (-1, 1, 1, 1),
    2: (-1, -1, 1, 1),
    3: (1, 1, -1, -1),
    4: (1, 1, 1, -1),
    5: (1, -1, 1, 1),
    6: (1, 1, -1, 1),
}

ALL_PATTERNS = [
    frozenset(combo) for w in range(7) for combo in combinations(FACE_QUBITS, w)
]


def test_theta_to_p_examples():
    assert theta_to_p(0.0) == pytest.approx(0.0)
    assert theta_to_p(math.pi / 4) == pytest.approx(1.0)
    assert theta_to_p(math.pi / 8) == pytest.approx(0.5)


def test_sample_errors_extremes():
    rng = philox_generator(0)
    model_zero = NoiseModel(0.0)
    model_one = NoiseModel(1.0)
    for _ in range(50):
        assert sample_errors(model_zero, rng) == frozenset()
        assert sample_errors(model_one, rng) == frozenset(FACE_QUBITS)


def test_sample_errors_binomial_mean():
    rng = philox_generator(1)
    model = NoiseModel(0.5)
    trials = 100_000
    total = sum(len(sample_errors(model, rng)) for _ in range(trials))
    mean = total / trials
    sigma = math.sqrt(6 * 0.25 / trials)
    assert abs(mean - 3.0) < 3 * sigma


def test_noise_model_validation():
    with pytest.raises(ValueError):
        NoiseModel(-0.1)
    with pytest.raises(ValueError):
        NoiseModel(1.1)
    with pytest.raises(ValueError):
        NoiseModel(0.5, targets=())
    with pytest.raises(ValueError):
        NoiseModel(0.5, targets=(7,))
    with pytest.raises(ValueError):
        NoiseModel(0.5, frame="y")


@pytest.mark.parametrize("qubit,row", SINGLE_ERROR_SYNDROMES.items())
def test_single_error_syndrome_rows(qubit, row):
    assert tuple(syndrome_of_pattern({qubit})) == row
    record = representative_record({qubit})
    assert tuple(extract_syndrome(record)) == row


def test_no_error_syndrome():
    assert tuple(syndrome_of_pattern(frozenset())) == (1, 1, 1, 1)


def test_extract_syndrome_requires_all_faces():
    record = representative_record({1})
    trimmed = dict(record.outcomes)
    del trimmed["f4"]
    from tecsim.cluster import OutcomeRecord

    partial = OutcomeRecord(trimmed, {k: "x" for k in trimmed})
    with pytest.raises(KeyError):
        extract_syndrome(partial)


def test_decode_table_examples():
    table = build_decode_table()
    assert len(table) == 16
    assert table[SyndromeVector(-1, 1, 1, 1)] == frozenset({1})
    assert table[SyndromeVector(1, 1, 1, 1)] == frozenset()
    assert table[SyndromeVector(1, -1, -1, 1)] == frozenset({5, 6})
    assert all(len(c) <= 2 for c in table.values())


def test_decode_table_is_minimum_weight():
    table = build_decode_table()
    for pattern in ALL_PATTERNS:
        correction = table[syndrome_of_pattern(pattern)]
        assert len(correction) <= len(pattern)


def test_decode_and_correct_examples():
    corrected, correction = decode_and_correct(representative_record({5}))
    assert (corrected, correction) == (1, frozenset({5}))
    corrected, correction = decode_and_correct(representative_record(frozenset()))
    assert (corrected, correction) == (1, frozenset())
    # two errors collide with the single-error signature of qubit 5
    corrected, correction = decode_and_correct(representative_record({1, 2}))
    assert correction == frozenset({5})
    assert corrected == -1


def test_single_error_completeness():
    for q in FACE_QUBITS:
        corrected, _ = decode_and_correct(representative_record({q}))
        assert corrected == 1


def test_analytic_unprotected_values():
    assert analytic_unprotected(0.0) == pytest.approx(0.0)
    assert analytic_unprotected(0.5) == pytest.approx(0.5)
    assert analytic_unprotected(0.25) == pytest.approx(0.375)
    assert analytic_unprotected(0.1) == pytest.approx(0.18)


def test_analytic_protected_values():
    assert analytic_protected(0.0) == pytest.approx(0.0)
    assert analytic_protected(0.5) == pytest.approx(0.5)
    assert analytic_protected(0.1) == pytest.approx(0.054432, abs=1e-9)
    assert analytic_protected(1.0) == pytest.approx(0.0)


def test_probability_domain_checks():
    for func in (analytic_protected, analytic_unprotected, exact_enumeration):
        with pytest.raises(ValueError):
            func(-0.01)
        with pytest.raises(ValueError):
            func(1.01)


def test_enumeration_matches_analytic_curve():
    for p in np.linspace(0.0, 1.0, 101):
        assert abs(exact_enumeration(float(p)) - analytic_protected(float(p))) < 1e-12


def test_success_weight_profile():
    assert success_weight_profile() == {0: 1, 1: 6, 2: 9, 4: 9, 5: 6, 6: 1}


def test_success_set_closed_under_complementation():
    def fails(pattern):
        corrected, _ = decode_and_correct(representative_record(pattern))
        return corrected == -1

    full = frozenset(FACE_QUBITS)
    for pattern in ALL_PATTERNS:
        assert fails(pattern) == fails(full - pattern)


def test_crossover_ordering():
    for p in np.linspace(0.01, 0.49, 25):
        assert analytic_protected(float(p)) < analytic_unprotected(float(p))
    for p in (0.0, 0.5, 1.0):
        assert analytic_protected(p) == pytest.approx(analytic_unprotected(p))


def test_tableau_pipeline_matches_classical_map():
    """Every one of the 64 patterns gives the classical syndrome and product."""
    for idx, pattern in enumerate(ALL_PATTERNS):
        corrected, correction, record = run_pattern(
            pattern, philox_generator(40, idx), engine="tableau"
        )
        assert extract_syndrome(record) == syndrome_of_pattern(pattern)
        assert correction == build_decode_table()[syndrome_of_pattern(pattern)]
        reference, _ = decode_and_correct(representative_record(pattern))
        assert corrected == reference


@pytest.mark.parametrize("engine", ["dense", "tableau"])
def test_frame_equivalence(engine):
    """X flips on the rotated state with Z readout match the Z-flip frame."""
    for idx, pattern in enumerate(ALL_PATTERNS):
        z_corr, z_fix, z_rec = run_pattern(
            pattern, philox_generator(41, idx), engine=engine, frame="z"
        )
        x_corr, x_fix, x_rec = run_pattern(
            pattern, philox_generator(42, idx), engine=engine, frame="x"
        )
        assert extract_syndrome(z_rec) == extract_syndrome(x_rec)
        assert z_fix == x_fix
        assert z_corr == x_corr
        assert {q: b for q, b in x_rec.basis.items()} == {
            q: "z" for q in x_rec.basis
        }


def test_pipeline_determinism_across_seeds():
    for seed in (0, 1, 2):
        corrected, _, record = run_pattern({3}, philox_generator(seed), "tableau")
        assert tuple(extract_syndrome(record)) == SINGLE_ERROR_SYNDROMES[3]
        assert corrected == 1


def test_simulate_trial_reproducible():
    model = NoiseModel(0.3)
    a = simulate_trial(model, philox_generator(9, 0), "tableau")
    b = simulate_trial(model, philox_generator(9, 0), "tableau")
    assert a == b


def test_run_pattern_validation():
    with pytest.raises(ValueError):
        run_pattern(frozenset(), philox_generator(0), engine="fast")
    with pytest.raises(ValueError):
        run_pattern(frozenset(), philox_generator(0), frame="y")


def test_sweep_zero_probability_is_exactly_zero():
    (point,) = monte_carlo_sweep([0.0], 5000, seed=3)
    assert point.mc_protected == 0.0
    assert point.mc_unprotected == 0.0
    assert point.se_protected == 0.0


def test_sweep_is_bitwise_reproducible():
    grid = [0.1, 0.3]
    a = monte_carlo_sweep(grid, 20_000, seed=77)
    b = monte_carlo_sweep(grid, 20_000, seed=77)
    assert a == b
    c = monte_carlo_sweep(grid, 20_000, seed=78)
    assert a != c


def test_sweep_worker_count_does_not_change_results():
    grid = [0.05, 0.2, 0.4]
    serial = monte_carlo_sweep(grid, 10_000, seed=5, workers=1)
    parallel = monte_carlo_sweep(grid, 10_000, seed=5, workers=3)
    assert serial == parallel


def test_sweep_fast_estimates_track_analytic():
    points = monte_carlo_sweep([0.05, 0.15, 0.3], 100_000, seed=11)
    for pt in points:
        assert abs(pt.mc_protected - pt.analytic_protected) < 3 * pt.se_protected
        assert abs(pt.mc_unprotected - pt.analytic_unprotected) < 3 * pt.se_unprotected


@pytest.mark.parametrize("engine,trials,tol_sigma", [("tableau", 400, 4), ("dense", 150, 4)])
def test_sweep_engine_paths_track_analytic(engine, trials, tol_sigma):
    (pt,) = monte_carlo_sweep([0.3], trials, seed=13, engine=engine)
    se = math.sqrt(pt.analytic_protected * (1 - pt.analytic_protected) / trials)
    assert abs(pt.mc_protected - pt.analytic_protected) < tol_sigma * se
    se_u = math.sqrt(pt.analytic_unprotected * (1 - pt.analytic_unprotected) / trials)
    assert abs(pt.mc_unprotected - pt.analytic_unprotected) < tol_sigma * se_u


def test_sweep_validation():
    with pytest.raises(ValueError):
        monte_carlo_sweep([0.1], 0, seed=0)
    with pytest.raises(ValueError):
        monte_carlo_sweep([1.5], 10, seed=0)
    with pytest.raises(ValueError):
        monte_carlo_sweep([0.1], 10, seed=0, engine="warp")
