"""Wootters concurrence and the pure-state local-unitary invariant algebra.

The mixed-state concurrence is computed through the manifestly Hermitian
PSD matrix sqrt(rho) rho_tilde sqrt(rho), which shares its spectrum with
rho rho_tilde, so only a Hermitian eigensolver is ever needed.  Complex
conjugation is taken entrywise in the fixed computational basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import SIGMA2, eig_hermitian, sqrt_psd, tensor
from .states import DensityMatrix, PureState

_YY = tensor(SIGMA2, SIGMA2)
_YY.setflags(write=False)

INVARIANT_TOL = 1e-12


@dataclass(frozen=True)
class PureInvariants:
    """Local-unitary invariants (i1, i2) and derived quantities of a pure state.

    For any normalized state i_alpha equals i1 and is the normalization
    constant (so it is 1), and i_beta equals (i1^2 - i2)/2; both identities
    are enforced here.
    """

    i1: float
    i2: float
    i_alpha: float
    i_beta: float

    def __post_init__(self):
        if abs(self.i_alpha - self.i1) > INVARIANT_TOL:
            raise ValueError(f"i_alpha != i1 ({self.i_alpha} vs {self.i1})")
        if abs(self.i_beta - (self.i1**2 - self.i2) / 2) > INVARIANT_TOL:
            raise ValueError("i_beta != (i1^2 - i2)/2")
        if self.i_beta < -INVARIANT_TOL:
            raise ValueError(f"i_beta must be nonnegative, got {self.i_beta}")


def pure_invariants(p: PureState) -> PureInvariants:
    """Evaluate i1, the quadruple-sum invariant i2, i_alpha and i_beta."""
    a = p.amps.reshape(2, 2)
    i1 = float(np.sum((a * a.conj()).real))
    i2 = complex(np.einsum("km,kn,ln,lm->", a, a.conj(), a, a.conj()))
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    i_alpha = float(sum(abs(z) ** 2 for z in p.amps))
    i_beta = float(abs(det) ** 2)
    return PureInvariants(i1=i1, i2=i2.real, i_alpha=i_alpha, i_beta=i_beta)


def g_pure_from_invariants(inv: PureInvariants) -> float:
    """Closed-form G of a pure state in terms of its invariants.

    Evaluates (Ia^2 + 8 Ib) - 2 Ia (Ia^2 - 4 Ib) + (Ia^2 - 4 Ib)^2 literally;
    for normalized states this reduces to 8 Ib + 16 Ib^2.
    """
    ia, ib = inv.i_alpha, inv.i_beta
    gap = ia**2 - 4 * ib
    return (ia**2 + 8 * ib) - 2 * ia * gap + gap**2


def concurrence_pure(p: PureState) -> float:
    """C = 2 |a00 a11 - a01 a10| for a normalized pure state."""
    a = p.amps
    return 2.0 * abs(a[0] * a[3] - a[1] * a[2])


# trace(rho rho_tilde) <= 1, so eigenvalues of the spin-flip spectrum below
# this are rounding noise; sqrt would blow them up to ~1e-6 otherwise.
SPECTRUM_FLOOR = 1e-12


def concurrence_mixed(rho: DensityMatrix) -> float:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state.

    The l_k are the descending square roots of the eigenvalues of
    rho rho_tilde with rho_tilde = (sigma2 (x) sigma2) rho* (sigma2 (x) sigma2),
    obtained from the Hermitian matrix sqrt(rho) rho_tilde sqrt(rho), which
    shares that spectrum.
    """
    rho_tilde = _YY @ rho.mat.conj() @ _YY
    s = sqrt_psd(rho.mat)
    m = s @ rho_tilde @ s
    # Hermitian up to rounding since s and rho_tilde both are.
    w, _ = eig_hermitian((m + m.conj().T) / 2)
    w = np.maximum(w, 0.0)
    w[w < SPECTRUM_FLOOR] = 0.0
    lam = np.sqrt(w)
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))
