"""Dense complex linear algebra used by every other module.

All routines are deterministic for a fixed input.  Matrices are plain
``numpy`` arrays of dtype ``complex128``; :func:`as_matrix` and
:func:`as_vector` are the validating entry points.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DimMismatch, NotHermitian, NotOrthonormalInput, NotPSD

RANK_FLOOR = 1e-12


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimMismatch(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_vector(a, name: str = "vector") -> np.ndarray:
    v = np.array(a, dtype=np.complex128)
    if v.ndim != 1:
        raise DimMismatch(f"{name} must be 1-D, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def adjoint(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def singular_values(m) -> np.ndarray:
    """Singular values in descending order (empty matrices give an empty array)."""
    m = np.asarray(m, dtype=np.complex128)
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def numerical_rank(m, tol: float = 1e-10) -> int:
    """Count of singular values above ``tol * sigma_max``.

    Returns 0 when ``sigma_max`` itself is below the absolute floor ``RANK_FLOOR``.
    """
    sv = singular_values(m)
    if sv.size == 0 or sv[0] <= RANK_FLOOR:
        return 0
    return int(np.count_nonzero(sv > tol * sv[0]))


def operator_norm_2(m) -> float:
    sv = singular_values(m)
    return float(sv[0]) if sv.size else 0.0


def _phase_fix(q: np.ndarray, r: np.ndarray | None = None):
    # first non-negligible entry of each column made real and >= 0
    q = q.copy()
    phases = np.ones(q.shape[1], dtype=np.complex128)
    for j in range(q.shape[1]):
        col = q[:, j]
        scale = np.abs(col).max() if col.size else 0.0
        if scale == 0.0:
            continue
        k = int(np.argmax(np.abs(col) > 1e-12 * scale))
        phases[j] = np.conj(col[k]) / abs(col[k])
    q *= phases
    if r is None:
        return q
    return q, r * np.conj(phases)[:, None]


def hermitian_sqrt(m, tol: float = 1e-12) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-tol*max(1, |M|), 0)`` are clamped to zero.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimMismatch(f"square matrix required, got {m.shape}")
    scale = max(1.0, operator_norm_2(m))
    asym = operator_norm_2(m - adjoint(m))
    if asym > tol * scale:
        raise NotHermitian(f"|M - M*| = {asym:.3e} exceeds {tol * scale:.3e}")
    w, v = np.linalg.eigh(0.5 * (m + adjoint(m)))
    if w.size and w[0] < -tol * scale:
        raise NotPSD(f"eigenvalue {w[0]:.3e} below -{tol * scale:.3e}")
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ adjoint(v)
    return 0.5 * (root + adjoint(root))


def orthonormal_basis(cols, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of the column space (pivoted QR, rank from the SVD)."""
    a = as_matrix(cols)
    rank = numerical_rank(a, tol)
    if rank == 0:
        return np.zeros((a.shape[0], 0), dtype=np.complex128)
    q, _, _ = scipy.linalg.qr(a, mode="economic", pivoting=True)
    return _phase_fix(q[:, :rank])


def orthonormal_complement(basis, ambient_dim: int, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(basis) in C^ambient_dim."""
    b = np.asarray(basis, dtype=np.complex128).reshape(ambient_dim, -1)
    k = b.shape[1]
    if k:
        gram_err = operator_norm_2(adjoint(b) @ b - np.eye(k))
        if gram_err > tol:
            raise NotOrthonormalInput(f"Gram residual {gram_err:.3e} > {tol:.3e}")
    if k == 0:
        return np.eye(ambient_dim, dtype=np.complex128)
    if k == ambient_dim:
        return np.zeros((ambient_dim, 0), dtype=np.complex128)
    q, _ = np.linalg.qr(b, mode="complete")
    return _phase_fix(q[:, k:])


def qr_phased(a) -> tuple[np.ndarray, np.ndarray]:
    """Reduced QR with the package phase convention applied to Q (R adjusted to match)."""
    q, r = np.linalg.qr(as_matrix(a), mode="reduced")
    return _phase_fix(q, r)
