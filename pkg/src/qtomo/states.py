"""Density matrices, the qubit Bloch parametrization, and random states."""

from __future__ import annotations

import numpy as np

from .linalg import (
    PSD_ATOL,
    TRACE_ATOL,
    InvariantError,
    is_psd,
    require_hermitian,
)

__all__ = [
    "SIGMA_0",
    "PAULI",
    "bloch_to_matrix",
    "matrix_to_bloch",
    "is_bloch_state",
    "require_trace_one",
    "require_density",
    "haar_unitary",
    "random_density",
]

SIGMA_0 = np.eye(2, dtype=complex)
# Pauli basis, indexed 0..2 for sigma_1, sigma_2, sigma_3.
PAULI = np.array(
    [
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=complex,
)

# Slack on the unit-ball check for Bloch vectors.
BLOCH_ATOL = 1e-12


def bloch_to_matrix(theta) -> np.ndarray:
    """Map a Bloch vector to the 2x2 matrix (I + theta . sigma) / 2.

    The result is Hermitian with unit trace for any real 3-vector; it is a
    density matrix exactly when ``|theta| <= 1``.
    """
    t = np.asarray(theta, dtype=float)
    if t.shape != (3,):
        raise InvariantError(f"Bloch vector must have shape (3,), got {t.shape}")
    if not np.all(np.isfinite(t)):
        raise InvariantError("Bloch vector entries must be finite")
    return 0.5 * (SIGMA_0 + np.tensordot(t, PAULI, axes=1))


def matrix_to_bloch(matrix, trace_tol: float = TRACE_ATOL) -> np.ndarray:
    """Bloch coordinates ``theta_i = Tr(M sigma_i)`` of a 2x2 trace-one Hermitian."""
    m = require_trace_one(matrix, trace_tol)
    if m.shape != (2, 2):
        raise InvariantError(f"Bloch coordinates need a 2x2 matrix, got {m.shape}")
    return np.einsum("aij,ji->a", PAULI, m).real


def is_bloch_state(theta, tol: float = BLOCH_ATOL) -> bool:
    """Whether a Bloch vector lies in the closed unit ball (within ``tol``)."""
    t = np.asarray(theta, dtype=float)
    if t.shape != (3,):
        raise InvariantError(f"Bloch vector must have shape (3,), got {t.shape}")
    return float(np.linalg.norm(t)) <= 1.0 + tol


def require_trace_one(matrix, tol: float = TRACE_ATOL) -> np.ndarray:
    """Validate a Hermitian matrix with trace one (within ``tol``)."""
    m = require_hermitian(matrix)
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > tol:
        raise InvariantError(f"trace is {tr!r}, expected 1 within {tol:.1e}")
    return m


def require_density(matrix, trace_tol: float = TRACE_ATOL, psd_tol: float = PSD_ATOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, PSD."""
    m = require_trace_one(matrix, trace_tol)
    if not is_psd(m, psd_tol):
        raise InvariantError("matrix is not positive semidefinite")
    return m


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed random unitary via QR of a complex Gaussian matrix.

    The R factor's diagonal phases are divided out so the distribution is
    exactly the Haar measure rather than the raw QR output.
    """
    if dim < 2:
        raise InvariantError("dimension must be at least 2")
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases.conj()


def random_density(
    dim: int,
    rng: np.random.Generator,
    eigenvalues=None,
) -> np.ndarray:
    """Random density matrix of the given dimension.

    Parameters
    ----------
    dim : int
        Dimension, at least 2.
    rng : numpy.random.Generator
        Source of randomness; callers own seeding and stream splitting.
    eigenvalues : array_like, optional
        Fixed spectrum to use.  Entries must be nonnegative and sum to one
        within 1e-9.  When omitted the spectrum is drawn uniformly from the
        probability simplex.

    Returns
    -------
    numpy.ndarray
        ``U diag(w) U*`` for a Haar-random unitary U.
    """
    if dim < 2:
        raise InvariantError("dimension must be at least 2")
    if eigenvalues is None:
        w = rng.dirichlet(np.ones(dim))
    else:
        w = np.asarray(eigenvalues, dtype=float)
        if w.shape != (dim,):
            raise InvariantError(f"expected {dim} eigenvalues, got shape {w.shape}")
        if np.any(w < 0):
            raise InvariantError("fixed spectrum must be nonnegative")
        if abs(float(w.sum()) - 1.0) > TRACE_ATOL:
            raise InvariantError(f"fixed spectrum sums to {w.sum()!r}, expected 1")
    u = haar_unitary(dim, rng)
    rho = (u * w) @ u.conj().T
    # Reconstruction noise is ~1e-16; round back to exact Hermiticity.
    rho = 0.5 * (rho + rho.conj().T)
    idx = np.arange(dim)
    rho[idx, idx] = rho[idx, idx].real
    return rho
