"""Dense complex linear algebra for 2x2 and 4x4 operators.

Index convention, used everywhere in this package: subsystem A is the
slow (leftmost) tensor factor, so a 4x4 row index r splits as
r = 2*iA + iB.
"""

from __future__ import annotations

import numpy as np

HERM_TOL = 1e-10
PSD_TOL = 1e-10

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)

for _m in PAULIS:
    _m.setflags(write=False)


def as_cmat(m, dims=(2, 4)) -> np.ndarray:
    """Coerce to a square complex matrix of an allowed dimension; reject NaN/Inf."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] not in dims:
        raise ValueError(f"expected matrix dimension in {dims}, got {a.shape[0]}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def herm_defect(m: np.ndarray) -> float:
    """Max entrywise deviation from Hermiticity."""
    return float(np.max(np.abs(m - m.conj().T)))


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, A as the slow factor.

    Element ((2i+k), (2j+l)) equals a[i, j] * b[k, l].
    """
    a = as_cmat(a, dims=(2,))
    b = as_cmat(b, dims=(2,))
    return np.kron(a, b)


def partial_trace(m, keep: str) -> np.ndarray:
    """Reduced 2x2 matrix of subsystem ``keep`` ("A" or "B") of a 4x4 matrix."""
    m = as_cmat(m, dims=(4,))
    r = m.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ikjk->ij", r)
    if keep == "B":
        return np.einsum("ikil->kl", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(m, sub: str) -> np.ndarray:
    """Transpose the indices of one subsystem ("A" or "B") of a 4x4 matrix."""
    m = as_cmat(m, dims=(4,))
    r = m.reshape(2, 2, 2, 2)
    if sub == "A":
        out = r.transpose(2, 1, 0, 3)
    elif sub == "B":
        out = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"sub must be 'A' or 'B', got {sub!r}")
    return out.reshape(4, 4).copy()


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.

    Returns (w, v) with real w and v[:, k] the eigenvector belonging to w[k],
    so that v @ diag(w) @ v.conj().T reconstructs the input.
    """
    m = as_cmat(m)
    defect = herm_defect(m)
    if defect > HERM_TOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return w[::-1].copy(), v[:, ::-1].copy()


RELATIVE_EIG_FLOOR = 1e-13


def sqrt_psd(m) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues in [-PSD_TOL, 0) are clamped to zero; anything more negative
    is rejected.  Eigenvalues below RELATIVE_EIG_FLOOR of the largest are
    also zeroed: they are eigensolver noise, and letting sqrt amplify them
    (sqrt(1e-16) = 1e-8) would poison downstream spectra of rank-deficient
    inputs.
    """
    w, v = eig_hermitian(m)
    if w[-1] < -PSD_TOL:
        raise ValueError(f"matrix is not PSD (min eigenvalue {w[-1]:.3e})")
    w = np.maximum(w, 0.0)
    w[w < RELATIVE_EIG_FLOOR * w[0]] = 0.0
    return (v * np.sqrt(w)) @ v.conj().T
