"""The covariance measure G, the three-setting uncertainty sum L3, verdicts,
and inversion of G to a concurrence interval.

G is the sum of the nine squared Pauli covariances between the two qubits.
It equals 4 Tr{(rho - rhoA (x) rhoB)^2}, is invariant under local unitaries
and under partial transposition, and G > 1 certifies entanglement.  The
band C^2 (2 + C^2) <= G <= 1 + 2 C^2 relating G to the concurrence of
mixed states is conjectural and carries no proof; Monte Carlo here supports
the upper edge across all ranks, but the lower edge is violated by a small
fraction of rank-2 states (see README), so interval statements derived from
it hold only for states inside the band.

L3 sums the variances of sigma_i(A) + sigma_i(B) over the three Pauli
settings.  The polarization settings map to Pauli axes as 0/90 -> sigma3,
45/135 -> sigma1, R/L -> sigma2; any consistent assignment gives the same
sum.  Separable mixtures satisfy L3 >= 4, but unlike G the violation is not
invariant under local unitaries.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .linalg import PAULIS, SIGMA0, partial_trace, tensor
from .observables import CorrelationData, correlation_data, variance
from .states import DensityMatrix

logger = logging.getLogger(__name__)

G_MAX = 3.0
CLAMP_TOL = 1e-10
FORM_TOL = 1e-10
CERT_MARGIN = 1e-9

VERDICT_CERTIFIED = "entangled_certified"
VERDICT_NOT_CERTIFIED = "not_certified"

# L3 settings: sigma_i (x) 1 + 1 (x) sigma_i for i = 3, 1, 2
# (polarization bases 0/90, 45/135, R/L respectively).
_L3_OBSERVABLES = tuple(
    tensor(PAULIS[i], SIGMA0) + tensor(SIGMA0, PAULIS[i]) for i in (3, 1, 2)
)


@dataclass(frozen=True)
class GReport:
    """Everything the measure says about one state."""

    g: float
    g_hs: float
    l3: float
    verdict: str
    conc_interval: tuple[float, float]

    def __post_init__(self):
        if abs(self.g - self.g_hs) > FORM_TOL:
            raise ValueError(
                f"covariance and Hilbert-Schmidt forms disagree: {self.g} vs {self.g_hs}"
            )
        c_min, c_max = self.conc_interval
        if not 0.0 <= c_min <= c_max <= 1.0:
            raise ValueError(f"invalid concurrence interval {self.conc_interval}")
        expected = VERDICT_CERTIFIED if self.g > 1.0 + CERT_MARGIN else VERDICT_NOT_CERTIFIED
        if self.verdict != expected:
            raise ValueError(f"verdict {self.verdict!r} inconsistent with g = {self.g}")


def _clamp_g(g: float) -> float:
    if g > G_MAX + CERT_MARGIN:
        # A value this far out signals an invalid input, not a rounding issue;
        # pass it through rather than truncating silently.
        logger.debug("G = %.17g exceeds 3 beyond tolerance; returning unclamped", g)
        return g
    return min(max(g, 0.0), G_MAX)


def g_from_covariances(cd: CorrelationData) -> float:
    """Sum of the nine squared covariances."""
    return _clamp_g(float(np.sum(cd.cov**2)))


def g_hilbert_schmidt(rho: DensityMatrix) -> float:
    """G as 4 Tr{(rho - rhoA (x) rhoB)^2}; equals the covariance form."""
    rho_a = partial_trace(rho.mat, "A")
    rho_b = partial_trace(rho.mat, "B")
    diff = rho.mat - np.kron(rho_a, rho_b)
    return _clamp_g(4.0 * float(np.real(np.trace(diff @ diff))))


def l3(rho: DensityMatrix) -> float:
    """Sum of the variances of sigma_i(A) + sigma_i(B) over the three settings.

    Separable mixtures give at least 4; the singlet reaches 0 and the
    sigma1-flipped singlet reaches the maximum 8.
    """
    return float(sum(variance(rho, obs) for obs in _L3_OBSERVABLES))


def concurrence_interval(g: float) -> tuple[float, float]:
    """Concurrence range compatible with a measured G.

    Inverts the mixed-state band: the upper concurrence comes from
    C^2 (2 + C^2) = G and the lower one from 1 + 2 C^2 = G (zero when
    G <= 1, where nothing is certified).  c_min is reliable (the upper
    edge holds empirically everywhere); c_max inverts the conjectural
    lower edge and can undershoot the true concurrence for the rank-2
    states that fall below it.
    """
    if not -CERT_MARGIN <= g <= G_MAX + CERT_MARGIN:
        raise ValueError(f"G must lie in [0, 3], got {g}")
    g = min(max(g, 0.0), G_MAX)
    c_max = min(np.sqrt(np.sqrt(1.0 + g) - 1.0), 1.0)
    c_min = np.sqrt((g - 1.0) / 2.0) if g > 1.0 else 0.0
    return float(min(c_min, c_max)), float(c_max)


def analyze(rho: DensityMatrix) -> GReport:
    """Compute both G forms, L3, the verdict and the concurrence interval."""
    g = g_from_covariances(correlation_data(rho))
    g_hs = g_hilbert_schmidt(rho)
    verdict = VERDICT_CERTIFIED if g > 1.0 + CERT_MARGIN else VERDICT_NOT_CERTIFIED
    return GReport(
        g=g,
        g_hs=g_hs,
        l3=l3(rho),
        verdict=verdict,
        conc_interval=concurrence_interval(g),
    )


def greport_to_dict(report: GReport) -> dict:
    """JSON form with the fixed field names g, g_hs, l3, verdict, c_min, c_max."""
    c_min, c_max = report.conc_interval
    return {
        "g": report.g,
        "g_hs": report.g_hs,
        "l3": report.l3,
        "verdict": report.verdict,
        "c_min": c_min,
        "c_max": c_max,
    }


def pure_state_floor(c: float) -> float:
    """The pure-state value C^2 (2 + C^2): the lower bound of G at concurrence c."""
    return c * c * (2.0 + c * c)


def mixed_state_ceiling(c: float) -> float:
    """The upper bound 1 + 2 C^2 of G at concurrence c."""
    return 1.0 + 2.0 * c * c


def bounds_violated(c: float, g: float, tol: float = CERT_MARGIN) -> bool:
    """True when (c, g) falls outside the mixed-state band beyond ``tol``."""
    return g < pure_state_floor(c) - tol or g > mixed_state_ceiling(c) + tol
