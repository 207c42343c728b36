"""Pauli expectation values, variances, covariances and correlation data.

Axes are the three Pauli directions, indexed 1..3 as in the operator
subscripts.  Arbitrary-direction observables are out of scope: one fixed
mutually unbiased triple suffices for the measure, and any local unitary
relabelling of it is covered by the invariance of G.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import PAULIS, herm_defect, tensor
from .states import DensityMatrix

IMAG_TOL = 1e-10
CONSISTENCY_TOL = 1e-12

# PAIR_OBS[m, n] = sigma_m (x) sigma_n, m, n in 0..3
PAIR_OBS = np.stack(
    [np.stack([tensor(PAULIS[m], PAULIS[n]) for n in range(4)]) for m in range(4)]
)
PAIR_OBS.setflags(write=False)


@dataclass(frozen=True)
class CorrelationData:
    """All second moments of one state in the fixed Pauli frame.

    cov[i][j] holds the covariance of sigma_(i+1) on A with sigma_(j+1) on B;
    corrT holds the raw joint moments <sigma_(i+1) (x) sigma_(j+1)>, and
    blochA/blochB the local first moments.  Raw correlations are kept next to
    the covariances because the finite-shot estimator forms them separately.
    """

    cov: np.ndarray
    blochA: np.ndarray
    blochB: np.ndarray
    corrT: np.ndarray

    def __post_init__(self):
        cov = np.asarray(self.cov, dtype=float)
        bloch_a = np.asarray(self.blochA, dtype=float)
        bloch_b = np.asarray(self.blochB, dtype=float)
        corr = np.asarray(self.corrT, dtype=float)
        if cov.shape != (3, 3) or corr.shape != (3, 3):
            raise ValueError("cov and corrT must be 3x3")
        if bloch_a.shape != (3,) or bloch_b.shape != (3,):
            raise ValueError("Bloch vectors must have 3 components")
        defect = np.max(np.abs(cov - (corr - np.outer(bloch_a, bloch_b))))
        if defect > CONSISTENCY_TOL:
            raise ValueError(f"cov != corrT - blochA blochB^T (defect {defect:.3e})")
        for arr in (cov, bloch_a, bloch_b, corr):
            arr.setflags(write=False)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "blochA", bloch_a)
        object.__setattr__(self, "blochB", bloch_b)
        object.__setattr__(self, "corrT", corr)


def expectation(rho: DensityMatrix, obs) -> float:
    """<obs> = Tr(rho obs) for a Hermitian observable."""
    obs = np.asarray(obs, dtype=complex)
    defect = herm_defect(obs)
    if defect > IMAG_TOL:
        raise ValueError(f"observable is not Hermitian (defect {defect:.3e})")
    val = complex(np.trace(rho.mat @ obs))
    if abs(val.imag) > IMAG_TOL:
        raise ValueError(f"expectation has imaginary residue {val.imag:.3e}")
    return val.real


def variance(rho: DensityMatrix, obs) -> float:
    """<obs^2> - <obs>^2, clamped at zero against rounding."""
    mean = expectation(rho, obs)
    obs = np.asarray(obs, dtype=complex)
    second = expectation(rho, obs @ obs)
    return max(second - mean * mean, 0.0)


def _check_axis(i: int) -> int:
    if i not in (1, 2, 3):
        raise ValueError(f"Pauli axis must be 1, 2 or 3, got {i}")
    return i


def covariance(rho: DensityMatrix, i: int, j: int) -> float:
    """C(sigma_i on A, sigma_j on B) = <sigma_i (x) sigma_j> - <sigma_i><sigma_j>."""
    _check_axis(i)
    _check_axis(j)
    joint = expectation(rho, PAIR_OBS[i, j])
    a = expectation(rho, PAIR_OBS[i, 0])
    b = expectation(rho, PAIR_OBS[0, j])
    return joint - a * b


def pauli_moments(mat: np.ndarray) -> np.ndarray:
    """4x4 table t[m, n] = Tr(M sigma_m (x) sigma_n) of a Hermitian matrix.

    Works on any Hermitian matrix, not only physical states; this is what
    lets G be evaluated algebraically on partial transposes.
    """
    defect = herm_defect(np.asarray(mat, dtype=complex))
    if defect > IMAG_TOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    t = np.einsum("mnij,ji->mn", PAIR_OBS, mat)
    residue = float(np.max(np.abs(t.imag)))
    if residue > IMAG_TOL:
        raise ValueError(f"Pauli moments have imaginary residue {residue:.3e}")
    return np.real(t)


def correlation_data_from_moments(t: np.ndarray) -> CorrelationData:
    corr = t[1:, 1:]
    bloch_a = t[1:, 0]
    bloch_b = t[0, 1:]
    return CorrelationData(
        cov=corr - np.outer(bloch_a, bloch_b),
        blochA=bloch_a,
        blochB=bloch_b,
        corrT=corr,
    )


def correlation_data(rho: DensityMatrix) -> CorrelationData:
    """All 9 covariances, 9 raw correlations and both Bloch vectors of a state."""
    return correlation_data_from_moments(pauli_moments(rho.mat))


def correlation_data_of_matrix(mat) -> CorrelationData:
    """Correlation data of a possibly unphysical Hermitian unit-trace matrix."""
    return correlation_data_from_moments(pauli_moments(mat))
