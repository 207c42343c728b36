"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see every line.

Criterion 4 (the full mixed-state band sweep over ranks 2-4) is expected to
FAIL: the band's lower edge G >= C^2 (2 + C^2) is conjectural and is
genuinely violated by ~0.5% of rank-2 states, as verified in exact rational
arithmetic (see README).  The criterion is asserted as stated anyway; the
companion test pins down exactly which restricted sweeps do hold.
"""

import numpy as np

from entcov.cli import bin_spreads
from entcov.concurrence import (
    concurrence_mixed,
    concurrence_pure,
    g_pure_from_invariants,
    pure_invariants,
)
from entcov.ensembles import ginibre, haar_pure, random_local_unitary, separable_mixture
from entcov.gmeasure import (
    concurrence_interval,
    g_from_covariances,
    g_hilbert_schmidt,
    l3,
    mixed_state_ceiling,
    pure_state_floor,
)
from entcov.linalg import SIGMA0, SIGMA1, partial_transpose
from entcov.observables import correlation_data, correlation_data_of_matrix
from entcov.sampler import MeasurementRecord, estimate_g, exact_g, outcome_probabilities, simulate_record
from entcov.states import apply_local_unitary, canonical, from_pure, purity, rho_u
from entcov._rng import STREAM_TRIAL, derive_seed


def report(num, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"\nACCEPTANCE {num:02d} {status}: {detail}")
    return ok


def g_of(rho):
    return g_from_covariances(correlation_data(rho))


def test_criterion_01_pure_master_relation():
    worst = 0.0
    for k in range(10_000):
        p = haar_pure(20260801, k)
        c = concurrence_pure(p)
        g = g_of(from_pure(p))
        worst = max(worst, abs(g - c * c * (2.0 + c * c)))
    ok = worst <= 1e-9
    assert report(1, ok, f"pure-state relation G = C^2(2+C^2), max |dev| = {worst:.3e} (tol 1e-9)")


def test_criterion_02_form_equivalence():
    worst = 0.0
    for k in range(10_000):
        rho = ginibre(20260802, k, k % 4 + 1)
        worst = max(worst, abs(g_of(rho) - g_hilbert_schmidt(rho)))
    ok = worst <= 1e-10
    assert report(2, ok, f"covariance vs Hilbert-Schmidt form, max |dev| = {worst:.3e} (tol 1e-10)")


def test_criterion_03_rho_u_family():
    worst_g = worst_c = 0.0
    for gamma in np.arange(0.0, 0.5001, 0.05):
        gamma = float(gamma)
        for theta in (0.0, 1.0, 2.5):
            rho = rho_u(gamma, theta)
            worst_g = max(worst_g, abs(g_of(rho) - (1.0 + 8.0 * gamma * gamma)))
            worst_c = max(worst_c, abs(concurrence_mixed(rho) - 2.0 * gamma))
    ok = worst_g <= 1e-10 and worst_c <= 1e-10
    assert report(
        3, ok, f"rho_u family: max |G-(1+8g^2)| = {worst_g:.3e}, max |C-2g| = {worst_c:.3e} (tol 1e-10)"
    )


def _band_violation(c, g):
    lo_gap = pure_state_floor(c) - g
    hi_gap = g - mixed_state_ceiling(c)
    return max(lo_gap, hi_gap)


def test_criterion_04_mixed_state_band_as_stated():
    # Faithful statement: >= 1e5 mixed states of ranks 2-4 plus separable
    # mixtures, zero violations of the full band at 1e-9.  Expected to FAIL:
    # the lower edge is violated by a small fraction of rank-2 states (a
    # counterexample verified in exact rational arithmetic; see README).
    violations = 0
    worst = 0.0
    worst_case = None
    total = 0
    for rank in (2, 3, 4):
        for k in range(30_000):
            rho = ginibre(20260804 + rank, k, rank)
            gap = _band_violation(concurrence_mixed(rho), g_of(rho))
            total += 1
            if gap > 1e-9:
                violations += 1
                if gap > worst:
                    worst, worst_case = gap, (rank, k)
    for k in range(15_000):
        rho = separable_mixture(20260808, k, k % 8 + 1)
        gap = _band_violation(concurrence_mixed(rho), g_of(rho))
        total += 1
        if gap > 1e-9:
            violations += 1
            if gap > worst:
                worst, worst_case = gap, ("separable", k)
    ok = violations == 0
    assert report(
        4,
        ok,
        f"full band sweep over {total} states (ranks 2-4 + separable): "
        f"{violations} violations, worst gap {worst:.4f} at {worst_case}; "
        "the lower edge G >= C^2(2+C^2) is conjectural and fails for some rank-2 "
        "states, so this criterion cannot pass as stated",
    )


def test_criterion_04s_band_where_it_holds():
    # Supplementary: the same sweep is clean once rank 2 is excluded, and the
    # upper edge alone is clean everywhere including rank 2.
    violations = 0
    total = 0
    for rank in (1, 3, 4):
        for k in range(30_000):
            rho = ginibre(20260814 + rank, k, rank)
            total += 1
            if _band_violation(concurrence_mixed(rho), g_of(rho)) > 1e-9:
                violations += 1
    for k in range(15_000):
        rho = separable_mixture(20260818, k, k % 8 + 1)
        total += 1
        if _band_violation(concurrence_mixed(rho), g_of(rho)) > 1e-9:
            violations += 1
    upper_violations = 0
    for k in range(30_000):
        rho = ginibre(20260819, k, 2)
        if g_of(rho) > mixed_state_ceiling(concurrence_mixed(rho)) + 1e-9:
            upper_violations += 1
    ok = violations == 0 and upper_violations == 0
    assert report(
        4,
        ok,
        f"(supplementary) band clean over {total} rank-1/3/4 + separable states; "
        f"upper edge clean over 30000 rank-2 states",
    )


def test_criterion_05_interval_example():
    c_min, c_max = concurrence_interval(2.5)
    ok = (
        abs(c_min - 0.86603) <= 5e-5
        and abs(c_max - 0.93315) <= 5e-5
        and round(c_min, 2) == 0.87
        and round(c_max, 2) == 0.93
    )
    assert report(
        5, ok, f"interval at G=2.5: ({c_min:.5f}, {c_max:.5f}) vs (0.86603, 0.93315) tol 5e-5"
    )


def test_criterion_06_lur_behaviour():
    singlet = canonical("singlet")
    flipped = apply_local_unitary(singlet, SIGMA1, SIGMA0)
    l3_singlet = l3(singlet)
    l3_flipped = l3(flipped)
    floor_ok = True
    min_l3 = np.inf
    for k in range(10_000):
        value = l3(separable_mixture(20260806, k, k % 8 + 1))
        min_l3 = min(min_l3, value)
        if value < 4.0 - 1e-9:
            floor_ok = False
    ok = l3_singlet <= 1e-9 and abs(l3_flipped - 8.0) <= 1e-9 and floor_ok
    assert report(
        6,
        ok,
        f"L3(singlet) = {l3_singlet:.2e}, L3(flipped) = {l3_flipped:.12f}, "
        f"min L3 over 1e4 separable mixtures = {min_l3:.6f} (floor 4)",
    )


def test_criterion_07_invariance_suite():
    worst_g = worst_c = 0.0
    for k in range(10_000):
        if k % 5 == 0:
            rho = from_pure(haar_pure(20260807, k))
        else:
            rho = ginibre(20260807, k, k % 4 + 1)
        u_a, u_b = random_local_unitary(20260817, k)
        rotated = apply_local_unitary(rho, u_a, u_b)
        worst_g = max(worst_g, abs(g_of(rotated) - g_of(rho)))
        worst_c = max(worst_c, abs(concurrence_mixed(rotated) - concurrence_mixed(rho)))
    worst_pt = 0.0
    for k in range(10_000):
        rho = ginibre(20260827, k, k % 4 + 1)
        g_pt = g_from_covariances(correlation_data_of_matrix(partial_transpose(rho.mat, "B")))
        worst_pt = max(worst_pt, abs(g_pt - g_of(rho)))
    # the LUR witness pair: detection flips across the threshold, G does not move
    singlet = canonical("singlet")
    flipped = apply_local_unitary(singlet, SIGMA1, SIGMA0)
    witness_ok = l3(singlet) < 4.0 <= l3(flipped) and abs(g_of(singlet) - g_of(flipped)) <= 1e-9
    ok = worst_g <= 1e-9 and worst_c <= 1e-9 and worst_pt <= 1e-9 and witness_ok
    assert report(
        7,
        ok,
        f"local-unitary invariance: max |dG| = {worst_g:.3e}, max |dC| = {worst_c:.3e}; "
        f"partial-transpose invariance: max |dG| = {worst_pt:.3e}; L3 witness crosses 4",
    )


def test_criterion_08_detection_threshold():
    max_sep_g = 0.0
    for k in range(10_000):
        max_sep_g = max(max_sep_g, g_of(separable_mixture(20260828, k, k % 8 + 1)))
    implication_ok = True
    certified = 0
    for k in range(10_000):
        rho = ginibre(20260838, k, k % 3 + 2)
        if g_of(rho) > 1.0 + 1e-9:
            certified += 1
            if concurrence_mixed(rho) <= 0.0:
                implication_ok = False
    ok = max_sep_g <= 1.0 + 1e-9 and implication_ok
    assert report(
        8,
        ok,
        f"max G over 1e4 separable mixtures = {max_sep_g:.9f} (cap 1); "
        f"all {certified} certified states (G > 1) have C > 0",
    )


def test_criterion_09_pure_invariant_algebra():
    worst_alpha = worst_beta = worst_c2 = worst_g = 0.0
    for k in range(10_000):
        p = haar_pure(20260809, k)
        inv = pure_invariants(p)
        worst_alpha = max(worst_alpha, abs(inv.i_alpha - 1.0))
        worst_beta = max(worst_beta, abs(inv.i_beta - (inv.i1**2 - inv.i2) / 2.0))
        worst_c2 = max(worst_c2, abs(4.0 * inv.i_beta - concurrence_pure(p) ** 2))
        worst_g = max(worst_g, abs(g_pure_from_invariants(inv) - g_of(from_pure(p))))
    ok = worst_alpha <= 1e-10 and worst_beta <= 1e-12 and worst_c2 <= 1e-10 and worst_g <= 1e-10
    assert report(
        9,
        ok,
        f"pure invariants: |i_alpha-1| <= {worst_alpha:.2e}, "
        f"|i_beta-(i1^2-i2)/2| <= {worst_beta:.2e}, |4 i_beta - C^2| <= {worst_c2:.2e}, "
        f"|G(invariants) - G(cov)| <= {worst_g:.2e}",
    )


def test_criterion_10_area_not_a_line():
    from entcov.ensembles import fixed_purity

    cs, gs = [], []
    for k in range(5000):
        rho = fixed_purity(20260810, k, 0.46, 0.005)
        cs.append(concurrence_mixed(rho))
        gs.append(g_of(rho))
    mixed_max = max(s for *_, s in bin_spreads(cs, gs))

    cs, gs = [], []
    for k in range(5000):
        p = haar_pure(20260820, k)
        rho = from_pure(p)
        assert abs(purity(rho) - 1.0) <= 1e-6
        cs.append(concurrence_pure(p))
        gs.append(g_of(rho))
    pure_max = max(s for *_, s in bin_spreads(cs, gs))

    ok = mixed_max > 0.05 and pure_max <= 1e-6
    assert report(
        10,
        ok,
        f"G-spread above the pure curve per 0.05-wide C bin: purity 0.46 slice max = "
        f"{mixed_max:.3f} (> 0.05: area), pure slice max = {pure_max:.2e} (<= 1e-6: line)",
    )


def _exact_record(rho, shots):
    counts = np.zeros((3, 3, 4))
    for i in range(1, 4):
        for j in range(1, 4):
            counts[i - 1, j - 1] = shots * outcome_probabilities(rho, i, j)
    return MeasurementRecord(shots_per_setting=shots, counts=counts, seed=0)


def test_criterion_11_estimator_consistency():
    worst_exact = 0.0
    states = [canonical("singlet"), canonical("maximally_mixed"), rho_u(0.3, 0.9)]
    states += [ginibre(20260811, k, k % 4 + 1) for k in range(20)]
    for rho in states:
        est = estimate_g(_exact_record(rho, 1))
        worst_exact = max(worst_exact, abs(est.g_hat - exact_g(rho)))

    singlet = canonical("singlet")

    def mean_ghat(shots, runs=100):
        values = np.empty(runs)
        for t in range(runs):
            seed = derive_seed(424242, STREAM_TRIAL, shots, t)
            values[t] = estimate_g(simulate_record(singlet, shots, seed)).g_hat
        return values.mean(), values.std(ddof=1) / np.sqrt(runs)

    mean_hi, se_hi = mean_ghat(100_000)
    mean_lo, _ = mean_ghat(1_000)
    bias_hi = abs(mean_hi - 3.0)
    bias_lo = abs(mean_lo - 3.0)
    ok = worst_exact <= 1e-9 and bias_hi <= 3.0 * se_hi and bias_lo > bias_hi
    assert report(
        11,
        ok,
        f"exact-frequency records reproduce G to {worst_exact:.2e}; singlet at 1e5 shots: "
        f"|mean-3| = {bias_hi:.2e} <= 3 se = {3*se_hi:.2e}; bias decays "
        f"{bias_lo:.2e} (1e3 shots) -> {bias_hi:.2e} (1e5 shots)",
    )
