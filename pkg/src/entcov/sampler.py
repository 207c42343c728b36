"""Finite-shot simulation of the 9-setting local coincidence protocol.

For each pair of Pauli axes (i, j) both sides project onto the +-1
eigenbasis; the joint outcome table n(a, b) is all that is recorded.
Singles marginals are read off each setting's own coincidence table
rather than measured separately, so nine settings suffice; this
correlates the marginal and joint estimates within a setting, an effect
the bias study quantifies.  The plug-in estimator is kept without bias
correction; detectors are ideal (no inefficiency, dark counts or
accidentals).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._rng import STREAM_BOOTSTRAP, STREAM_SETTING, STREAM_TRIAL, derive_seed, rng_at
from .linalg import PAULIS, SIGMA0
from .observables import correlation_data
from .states import DensityMatrix

# Fixed outcome order (+ +), (+ -), (- +), (- -); all tables use it.
OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))
_AB = np.array([a * b for a, b in OUTCOMES], dtype=float)
_A = np.array([a for a, _ in OUTCOMES], dtype=float)
_B = np.array([b for _, b in OUTCOMES], dtype=float)

COUNT_SUM_TOL = 1e-6
DEFAULT_BOOTSTRAP = 200


@dataclass(frozen=True)
class MeasurementRecord:
    """Per-setting coincidence counts of one simulated (or real) run.

    counts has shape (3, 3, 4): axes i, j (0-based Pauli axes minus one) and
    the fixed outcome order above.  Exact-frequency synthetic records may
    carry non-integer counts; every table still sums to shots_per_setting.
    """

    shots_per_setting: int
    counts: np.ndarray
    seed: int

    def __post_init__(self):
        if self.shots_per_setting < 1:
            raise ValueError(f"shots_per_setting must be >= 1, got {self.shots_per_setting}")
        c = np.asarray(self.counts, dtype=float)
        if c.shape != (3, 3, 4):
            raise ValueError(f"counts must have shape (3, 3, 4), got {c.shape}")
        if np.any(c < 0):
            raise ValueError("counts must be nonnegative")
        sums = c.sum(axis=2)
        if np.max(np.abs(sums - self.shots_per_setting)) > COUNT_SUM_TOL:
            raise ValueError("every setting's counts must sum to shots_per_setting")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)


@dataclass(frozen=True)
class GEstimate:
    """Plug-in estimate of G from one record, with a bootstrap standard error."""

    g_hat: float
    cov_hat: np.ndarray
    stderr: float
    shots_per_setting: int


def outcome_probabilities(rho: DensityMatrix, i: int, j: int) -> np.ndarray:
    """The four joint probabilities p(a, b) of setting (i, j), fixed order."""
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"axes must be in 1..3, got ({i}, {j})")
    probs = np.empty(4)
    for k, (a, b) in enumerate(OUTCOMES):
        proj = np.kron((SIGMA0 + a * PAULIS[i]) / 2, (SIGMA0 + b * PAULIS[j]) / 2)
        probs[k] = float(np.real(np.trace(rho.mat @ proj)))
    probs = np.where(probs < 0, 0.0, probs)
    total = probs.sum()
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"probabilities sum to {total}, expected 1")
    return probs / total


def simulate_record(rho: DensityMatrix, shots: int, seed: int) -> MeasurementRecord:
    """Draw ``shots`` outcomes per setting; per-setting streams allow the nine
    settings to be simulated in parallel without changing the result."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    counts = np.zeros((3, 3, 4))
    for i in range(1, 4):
        for j in range(1, 4):
            p = outcome_probabilities(rho, i, j)
            rng = rng_at(seed, STREAM_SETTING, i, j)
            counts[i - 1, j - 1] = rng.multinomial(shots, p)
    return MeasurementRecord(shots_per_setting=shots, counts=counts, seed=seed)


def _covariances_from_counts(counts: np.ndarray) -> np.ndarray:
    """Plug-in covariance of each setting from its own table and marginals."""
    totals = counts.sum(axis=2)
    e_ab = counts @ _AB / totals
    a_marg = counts @ _A / totals
    b_marg = counts @ _B / totals
    return e_ab - a_marg * b_marg


def estimate_g(rec: MeasurementRecord, n_boot: int = DEFAULT_BOOTSTRAP) -> GEstimate:
    """Plug-in G with a bootstrap standard error.

    Each bootstrap replicate redraws every setting's table multinomially at
    the empirical frequencies; stderr is the standard deviation of the
    replicate G values.
    """
    if n_boot < 2:
        raise ValueError(f"n_boot must be >= 2, got {n_boot}")
    cov_hat = _covariances_from_counts(rec.counts)
    g_hat = float(np.sum(cov_hat**2))

    n = int(round(rec.shots_per_setting))
    freqs = rec.counts / rec.counts.sum(axis=2, keepdims=True)
    rng = rng_at(rec.seed, STREAM_BOOTSTRAP)
    replicates = np.empty(n_boot)
    boot_counts = np.empty((3, 3, 4))
    for r in range(n_boot):
        for i in range(3):
            for j in range(3):
                boot_counts[i, j] = rng.multinomial(n, freqs[i, j])
        cov_r = _covariances_from_counts(boot_counts)
        replicates[r] = np.sum(cov_r**2)
    stderr = float(np.std(replicates, ddof=1))
    return GEstimate(
        g_hat=g_hat,
        cov_hat=cov_hat,
        stderr=stderr,
        shots_per_setting=rec.shots_per_setting,
    )


def exact_g(rho: DensityMatrix) -> float:
    """Exact G through the same covariance formula the estimator uses."""
    cov = correlation_data(rho).cov
    return float(np.sum(cov**2))


def shots_for_verdict(
    rho: DensityMatrix,
    confidence_sigma: float,
    seed: int,
    trials: int = 100,
    required: int = 95,
    max_shots: int = 2**22,
) -> int:
    """Smallest shots-per-setting that certifies entanglement reliably.

    Success at a given shot count means g_hat - confidence_sigma * stderr > 1
    in at least ``required`` of ``trials`` seeded runs.  The count is located
    on a doubling grid and then refined by bisection.  States with G <= 1
    cannot be certified by this measure and are rejected.
    """
    g = exact_g(rho)
    if g <= 1.0 + 1e-9:
        raise ValueError(f"state has G = {g:.6g} <= 1 and cannot be certified")

    trial_seeds = [derive_seed(seed, STREAM_TRIAL, t) for t in range(trials)]

    def succeeds(shots: int) -> bool:
        hits = 0
        for t_seed in trial_seeds:
            est = estimate_g(simulate_record(rho, shots, t_seed))
            if est.g_hat - confidence_sigma * est.stderr > 1.0:
                hits += 1
        return hits >= required

    shots = 1
    while not succeeds(shots):
        shots *= 2
        if shots > max_shots:
            raise RuntimeError(f"no shot count up to {max_shots} certifies this state")
    if shots == 1:
        return 1
    lo, hi = shots // 2, shots  # lo fails, hi succeeds
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if succeeds(mid):
            hi = mid
        else:
            lo = mid
    return hi


def record_to_dict(rec: MeasurementRecord) -> dict:
    """JSON form {"shots": N, "seed": s, "counts": {"11": [...], ..., "33": [...]}}."""
    counts = {}
    for i in range(3):
        for j in range(3):
            row = []
            for value in rec.counts[i, j]:
                value = float(value)
                row.append(int(value) if value.is_integer() else value)
            counts[f"{i + 1}{j + 1}"] = row
    return {"shots": rec.shots_per_setting, "seed": rec.seed, "counts": counts}


def record_from_dict(data: dict) -> MeasurementRecord:
    if not isinstance(data, dict) or set(data) != {"shots", "seed", "counts"}:
        raise ValueError('record JSON must have exactly the fields "shots", "seed", "counts"')
    keys = {f"{i}{j}" for i in range(1, 4) for j in range(1, 4)}
    if not isinstance(data["counts"], dict) or set(data["counts"]) != keys:
        raise ValueError('record "counts" must have exactly the keys "11".."33"')
    counts = np.zeros((3, 3, 4))
    for key, row in data["counts"].items():
        arr = np.asarray(row, dtype=float)
        if arr.shape != (4,):
            raise ValueError(f'counts["{key}"] must have 4 entries')
        counts[int(key[0]) - 1, int(key[1]) - 1] = arr
    return MeasurementRecord(
        shots_per_setting=int(data["shots"]),
        counts=counts,
        seed=int(data["seed"]),
    )


def estimate_to_dict(est: GEstimate) -> dict:
    return {
        "g_hat": est.g_hat,
        "cov_hat": est.cov_hat.tolist(),
        "stderr": est.stderr,
        "shots_per_setting": est.shots_per_setting,
    }
