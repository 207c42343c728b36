"""Covariance-based entanglement quantification for two-qubit states.

The central quantity is the sum G of the nine squared Pauli covariances
between the two qubits.  G is measurable with nine local settings, is
invariant under local unitaries, certifies entanglement whenever G > 1,
determines the concurrence exactly for pure states through
G = C^2 (2 + C^2), and brackets it for mixed states via
C^2 (2 + C^2) <= G <= 1 + 2 C^2.
"""

from .concurrence import (
    PureInvariants,
    concurrence_mixed,
    concurrence_pure,
    g_pure_from_invariants,
    pure_invariants,
)
from .ensembles import (
    EnsembleSpec,
    fixed_purity,
    generate,
    ginibre,
    haar_pure,
    random_local_unitary,
    separable_mixture,
)
from .gmeasure import (
    GReport,
    analyze,
    concurrence_interval,
    g_from_covariances,
    g_hilbert_schmidt,
    l3,
)
from .linalg import (
    PAULIS,
    SIGMA0,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    eig_hermitian,
    partial_trace,
    partial_transpose,
    sqrt_psd,
    tensor,
)
from .observables import (
    CorrelationData,
    correlation_data,
    covariance,
    expectation,
    variance,
)
from .sampler import (
    GEstimate,
    MeasurementRecord,
    estimate_g,
    outcome_probabilities,
    shots_for_verdict,
    simulate_record,
)
from .states import (
    DensityMatrix,
    PureState,
    apply_local_unitary,
    canonical,
    from_pure,
    purity,
    rho_u,
)

__version__ = "0.1.0"

__all__ = [
    "CorrelationData",
    "DensityMatrix",
    "EnsembleSpec",
    "GEstimate",
    "GReport",
    "MeasurementRecord",
    "PAULIS",
    "PureInvariants",
    "PureState",
    "SIGMA0",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "analyze",
    "apply_local_unitary",
    "canonical",
    "concurrence_interval",
    "concurrence_mixed",
    "concurrence_pure",
    "correlation_data",
    "covariance",
    "eig_hermitian",
    "estimate_g",
    "expectation",
    "fixed_purity",
    "from_pure",
    "g_from_covariances",
    "g_hilbert_schmidt",
    "g_pure_from_invariants",
    "generate",
    "ginibre",
    "haar_pure",
    "l3",
    "outcome_probabilities",
    "partial_trace",
    "partial_transpose",
    "pure_invariants",
    "purity",
    "random_local_unitary",
    "rho_u",
    "separable_mixture",
    "shots_for_verdict",
    "simulate_record",
    "sqrt_psd",
    "tensor",
    "variance",
]
