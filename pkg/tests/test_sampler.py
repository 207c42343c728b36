import numpy as np
import pytest

from entcov._rng import STREAM_TRIAL, derive_seed
from entcov.ensembles import ginibre, separable_mixture
from entcov.jsonio import dumps, loads
from entcov.sampler import (
    MeasurementRecord,
    estimate_g,
    exact_g,
    outcome_probabilities,
    record_from_dict,
    record_to_dict,
    shots_for_verdict,
    simulate_record,
)
from entcov.states import canonical, rho_u


def exact_record(rho, shots, seed=0):
    """Synthetic record whose counts are exactly shots * p(a, b)."""
    counts = np.zeros((3, 3, 4))
    for i in range(1, 4):
        for j in range(1, 4):
            counts[i - 1, j - 1] = shots * outcome_probabilities(rho, i, j)
    return MeasurementRecord(shots_per_setting=shots, counts=counts, seed=seed)


def test_outcome_probabilities_singlet():
    p = outcome_probabilities(canonical("singlet"), 3, 3)
    assert np.max(np.abs(p - np.array([0.0, 0.5, 0.5, 0.0]))) < 1e-12


def test_outcome_probabilities_maximally_mixed():
    mm = canonical("maximally_mixed")
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            assert np.max(np.abs(outcome_probabilities(mm, i, j) - 0.25)) < 1e-12


def test_outcome_probabilities_eigenstate():
    p = outcome_probabilities(canonical("product00"), 3, 3)
    assert np.max(np.abs(p - np.array([1.0, 0.0, 0.0, 0.0]))) < 1e-12


def test_outcome_probabilities_rejects_bad_axes():
    with pytest.raises(ValueError):
        outcome_probabilities(canonical("singlet"), 0, 1)


def test_simulate_record_deterministic_state():
    rec = simulate_record(canonical("product00"), 500, 11)
    assert rec.counts[2, 2, 0] == 500  # setting (3,3): every shot lands in (+,+)
    assert np.all(rec.counts.sum(axis=2) == 500)


def test_simulate_record_repeatable_under_seed():
    a = simulate_record(canonical("singlet"), 1000, 99)
    b = simulate_record(canonical("singlet"), 1000, 99)
    assert np.array_equal(a.counts, b.counts)
    c = simulate_record(canonical("singlet"), 1000, 100)
    assert not np.array_equal(a.counts, c.counts)


def test_settings_draw_from_independent_streams():
    # each setting's table equals a direct draw from its own stream, so the
    # nine settings can be simulated on any workers in any order
    from entcov._rng import STREAM_SETTING, rng_at

    rho = rho_u(0.3, 0.7)
    rec = simulate_record(rho, 400, 31)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            rng = rng_at(31, STREAM_SETTING, i, j)
            direct = rng.multinomial(400, outcome_probabilities(rho, i, j))
            assert np.array_equal(rec.counts[i - 1, j - 1], direct)


def test_empirical_correlations_converge():
    # anticorrelated settings are exact (p(+,+) = p(-,-) = 0); null settings
    # fluctuate within the binomial scale sqrt((1 - t^2)/N)
    shots = 1_000_000
    rec = simulate_record(canonical("singlet"), shots, 2718)
    ab = np.array([1.0, -1.0, -1.0, 1.0])
    for i in range(3):
        for j in range(3):
            t_hat = float(rec.counts[i, j] @ ab) / shots
            if i == j:
                assert t_hat == -1.0
            else:
                assert abs(t_hat) < 4.0 / np.sqrt(shots)


def test_estimate_on_exact_frequencies_singlet():
    est = estimate_g(exact_record(canonical("singlet"), 4))
    assert abs(est.g_hat - 3.0) < 1e-12
    assert np.max(np.abs(est.cov_hat - np.diag([-1.0, -1.0, -1.0]))) < 1e-12


def test_estimate_on_exact_frequencies_rho_u():
    rho = rho_u(0.25, 0.0)
    est = estimate_g(exact_record(rho, 8))
    assert abs(est.g_hat - exact_g(rho)) < 1e-12
    assert abs(est.g_hat - 1.5) < 1e-12


def test_estimate_on_exact_frequencies_random_states():
    # fractional counts shots * p make the plug-in estimate reproduce the
    # exact covariance formula for any state
    for k in range(20):
        rho = ginibre(909, k, k % 4 + 1)
        est = estimate_g(exact_record(rho, 1))
        assert abs(est.g_hat - exact_g(rho)) < 1e-9


def test_estimate_g_hat_is_sum_of_squared_covariances():
    rec = simulate_record(canonical("singlet"), 200, 5)
    est = estimate_g(rec)
    assert est.g_hat == float(np.sum(est.cov_hat**2))


def test_estimate_is_deterministic():
    rec = simulate_record(rho_u(0.3, 0.5), 2000, 13)
    a = estimate_g(rec)
    b = estimate_g(rec)
    assert a.g_hat == b.g_hat and a.stderr == b.stderr


def test_estimator_bias_shrinks_for_zero_g_state():
    # the zero-G state exposes the pure plug-in bias, which decays like 1/N
    mm = canonical("maximally_mixed")

    def mean_ghat(shots, runs=50):
        total = 0.0
        for t in range(runs):
            seed = derive_seed(424242, STREAM_TRIAL, shots, t)
            total += estimate_g(simulate_record(mm, shots, seed)).g_hat
        return total / runs

    coarse = mean_ghat(1000)
    fine = mean_ghat(10000)
    assert 0.0 < fine < coarse
    assert coarse < 0.02  # ~9/N at N = 1e3, with Monte Carlo headroom


def test_shots_for_verdict_singlet_regression():
    assert shots_for_verdict(canonical("singlet"), 3.0, seed=2026) == 17


def test_shots_for_verdict_monotone_near_threshold():
    n_strong = shots_for_verdict(rho_u(0.4, 0.0), 3.0, seed=2026)
    n_weak = shots_for_verdict(rho_u(0.1, 0.0), 3.0, seed=2026)
    assert n_strong == 32
    assert n_weak == 799
    assert n_weak > n_strong > shots_for_verdict(canonical("singlet"), 3.0, seed=2026)


def test_shots_for_verdict_rejects_uncertifiable_states():
    with pytest.raises(ValueError):
        shots_for_verdict(canonical("maximally_mixed"), 3.0, seed=1)
    with pytest.raises(ValueError):
        shots_for_verdict(separable_mixture(7, 0, 3), 3.0, seed=1)


def test_record_json_round_trip():
    rec = simulate_record(canonical("singlet"), 250, 17)
    data = loads(dumps(record_to_dict(rec)))
    back = record_from_dict(data)
    assert back.shots_per_setting == rec.shots_per_setting
    assert back.seed == rec.seed
    assert np.array_equal(back.counts, rec.counts)
    assert set(data["counts"]) == {f"{i}{j}" for i in range(1, 4) for j in range(1, 4)}


def test_record_json_rejects_malformed():
    rec = record_to_dict(simulate_record(canonical("singlet"), 10, 1))
    bad = dict(rec)
    del bad["seed"]
    with pytest.raises(ValueError):
        record_from_dict(bad)
    bad = {"shots": 10, "seed": 1, "counts": {"11": [10, 0, 0, 0]}}
    with pytest.raises(ValueError):
        record_from_dict(bad)


def test_record_validation():
    good = np.zeros((3, 3, 4))
    good[:, :, 0] = 5
    MeasurementRecord(shots_per_setting=5, counts=good, seed=0)
    with pytest.raises(ValueError):
        MeasurementRecord(shots_per_setting=6, counts=good, seed=0)
    bad = good.copy()
    bad[0, 0] = [6, -1, 0, 0]
    with pytest.raises(ValueError):
        MeasurementRecord(shots_per_setting=5, counts=bad, seed=0)
