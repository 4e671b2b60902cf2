"""Dense complex linear algebra for small Hermitian matrices.

Operators are plain square ``numpy`` arrays of ``complex128``.  The helpers
here validate structure (Hermiticity, positive semidefiniteness), expose the
spectral decomposition the estimators are built on, and provide the two
figures of merit used throughout: Hilbert-Schmidt distance and fidelity.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

__all__ = [
    "InvariantError",
    "EigenDecompositionError",
    "Spectrum",
    "HERMITIAN_ATOL",
    "PSD_ATOL",
    "TRACE_ATOL",
    "require_square",
    "require_hermitian",
    "hermitian_eig",
    "is_psd",
    "determinant",
    "hs_distance",
    "fidelity",
]

# Hermiticity is checked entrywise; inputs beyond this are rejected, never
# silently symmetrized.
HERMITIAN_ATOL = 1e-12
# Default slack on eigenvalues when deciding positive semidefiniteness.
PSD_ATOL = 1e-9
# Default slack on unit-trace checks.
TRACE_ATOL = 1e-9
# A spectral decomposition must reproduce its input to this relative accuracy.
_RECONSTRUCTION_RTOL = 1e-10


class InvariantError(ValueError):
    """An input violates a structural invariant (shape, Hermiticity, trace)."""


class EigenDecompositionError(RuntimeError):
    """The iterative eigensolver failed or missed the accuracy target.

    Carries the reconstruction residual ``||U diag(w) U* - H||`` when the
    decomposition converged but was not accurate enough.
    """

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class Spectrum(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and sorted in descending order;
    ``eigenvectors[:, s]`` is the unit eigenvector for ``eigenvalues[s]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def require_square(matrix) -> np.ndarray:
    """Coerce to a complex square array of dimension >= 2 with finite entries."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvariantError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 2:
        raise InvariantError("matrix dimension must be at least 2")
    if not np.all(np.isfinite(m)):
        raise InvariantError("matrix entries must be finite")
    return m


def require_hermitian(matrix, tol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate Hermiticity entrywise and return the matrix as complex128.

    Parameters
    ----------
    matrix : array_like
        Square matrix to validate.
    tol : float
        Largest tolerated entrywise deviation between the matrix and its
        conjugate transpose.

    Returns
    -------
    numpy.ndarray
        The input as a fresh complex array with an exactly real diagonal.

    Raises
    ------
    InvariantError
        If the matrix is not square or not Hermitian within ``tol``.
    """
    m = require_square(matrix)
    gap = np.abs(m - m.conj().T).max()
    if gap > tol:
        raise InvariantError(
            f"matrix is not Hermitian: max |H - H*| = {gap:.3e} exceeds {tol:.1e}"
        )
    out = m.copy()
    # Diagonal imaginary parts are below tol by the check above; store zeros.
    idx = np.arange(out.shape[0])
    out[idx, idx] = out[idx, idx].real
    return out


def hermitian_eig(matrix, tol: float = HERMITIAN_ATOL) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix.

    Uses an iterative orthogonal-similarity solver and verifies the result:
    the reconstruction ``U diag(w) U*`` must match the input to relative
    accuracy 1e-10, otherwise an ``EigenDecompositionError`` is raised with
    the residual attached.

    Returns
    -------
    Spectrum
        Real eigenvalues in descending order with matching eigenvector
        columns.
    """
    h = require_hermitian(matrix, tol)
    try:
        w, u = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigenDecompositionError(f"eigensolver did not converge: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    w = w[order]
    u = u[:, order]
    recon = (u * w) @ u.conj().T
    residual = float(np.linalg.norm(recon - h))
    if residual > _RECONSTRUCTION_RTOL * (1.0 + float(np.linalg.norm(h))):
        raise EigenDecompositionError(
            f"eigendecomposition residual {residual:.3e} above tolerance",
            residual=residual,
        )
    return Spectrum(eigenvalues=w, eigenvectors=u)


def is_psd(matrix, tol: float = PSD_ATOL) -> bool:
    """Whether a Hermitian matrix is positive semidefinite.

    True when the smallest eigenvalue is >= ``-tol``.  ``tol`` must be
    nonnegative.
    """
    if tol < 0:
        raise InvariantError("PSD tolerance must be nonnegative")
    h = require_hermitian(matrix)
    smallest = float(np.linalg.eigvalsh(h)[0])
    return smallest >= -tol


def determinant(matrix) -> float:
    """Determinant of a Hermitian matrix, returned as a real number."""
    h = require_hermitian(matrix)
    return float(np.linalg.det(h).real)


def hs_distance(a, b) -> float:
    """Hilbert-Schmidt distance ``sqrt(Tr (A - B)^2)`` between Hermitian A, B."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise InvariantError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def _psd_sqrt(matrix, tol: float) -> np.ndarray:
    w, u = np.linalg.eigh(matrix)
    if w[0] < -tol:
        raise InvariantError(
            f"matrix is not positive semidefinite: smallest eigenvalue {w[0]:.3e}"
        )
    return (u * np.sqrt(np.clip(w, 0.0, None))) @ u.conj().T


def fidelity(a, b, trace_tol: float = TRACE_ATOL, psd_tol: float = PSD_ATOL) -> float:
    """Fidelity between two trace-one Hermitian matrices.

    For positive semidefinite inputs this is the square of
    ``Tr sqrt(sqrt(A) B sqrt(A))``, lies in [0, 1], and equals 1 exactly
    when A = B.  For dimension 2 the equivalent closed form

        Re(Tr AB + 2 sqrt(det A * det B))

    is used instead (principal branch of the complex square root).  The
    closed form stays defined when a 2x2 input is indefinite, in which case
    the value may exceed 1; larger dimensions require PSD inputs.

    Raises
    ------
    InvariantError
        On dimension mismatch, trace away from one beyond ``trace_tol``, or
        (for dimension > 2) inputs that are not PSD within ``psd_tol``.
    """
    a = require_hermitian(a)
    b = require_hermitian(b)
    if a.shape != b.shape:
        raise InvariantError(f"dimension mismatch: {a.shape} vs {b.shape}")
    for name, m in (("first", a), ("second", b)):
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > trace_tol:
            raise InvariantError(f"{name} argument has trace {tr!r}, expected 1")
    if a.shape[0] == 2:
        cross = float(np.trace(a @ b).real)
        dets = complex(np.linalg.det(a).real * np.linalg.det(b).real)
        return cross + 2.0 * float(np.sqrt(dets).real)
    root = _psd_sqrt(a, psd_tol)
    if not is_psd(b, psd_tol):
        raise InvariantError("fidelity beyond dimension 2 requires PSD inputs")
    w = np.linalg.eigvalsh(root @ b @ root)
    value = float(np.sum(np.sqrt(np.clip(w, 0.0, None))) ** 2)
    return min(max(value, 0.0), 1.0)
