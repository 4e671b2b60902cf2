"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written along a different route than the
library code: entrywise loops instead of norms, sort-based and bisection
projections instead of iterative redistribution, and eigenvalue-based
fidelity instead of the qubit closed form.
"""

import numpy as np


def hs_distance_brute(a, b) -> float:
    """Hilbert-Schmidt distance by an explicit entrywise sum."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    total = 0.0
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            d = a[i, j] - b[i, j]
            total += (d * d.conjugate()).real
    return float(np.sqrt(total))


def fidelity_eig(a, b) -> float:
    """(Tr sqrt(sqrt(A) B sqrt(A)))^2 via explicit eigendecompositions."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    wa, ua = np.linalg.eigh(a)
    root = (ua * np.sqrt(np.clip(wa, 0.0, None))) @ ua.conj().T
    inner = root @ b @ root
    w = np.linalg.eigvalsh(inner)
    return float(np.sum(np.sqrt(np.clip(w, 0.0, None))) ** 2)


def project_simplex_sort(v) -> np.ndarray:
    """Euclidean projection onto the probability simplex, sort based."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    cumulative = np.cumsum(u)
    ranks = np.arange(1, v.size + 1)
    support = np.nonzero(u * ranks > cumulative - 1.0)[0][-1]
    tau = (cumulative[support] - 1.0) / (support + 1.0)
    return np.maximum(v - tau, 0.0)


def project_simplex_bisect(v, iterations: int = 200) -> np.ndarray:
    """Euclidean projection via bisection on the dual threshold."""
    v = np.asarray(v, dtype=float)
    lo, hi = float(v.min()) - 1.0, float(v.max())
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if np.maximum(v - mid, 0.0).sum() > 1.0:
            lo = mid
        else:
            hi = mid
    return np.maximum(v - 0.5 * (lo + hi), 0.0)


def random_trace_one_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0):
    """Random Hermitian matrix normalized to unit trace, often indefinite."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = 0.5 * (z + z.conj().T) * scale
    h += (1.0 - np.trace(h).real) / dim * np.eye(dim)
    idx = np.arange(dim)
    h[idx, idx] = h[idx, idx].real
    return h


def random_ball_point(rng: np.random.Generator) -> np.ndarray:
    """Uniform point of the closed unit ball in R^3."""
    direction = rng.standard_normal(3)
    direction /= np.linalg.norm(direction)
    radius = rng.uniform() ** (1.0 / 3.0)
    return direction * radius


def random_unit_rows(rng: np.random.Generator) -> np.ndarray:
    """Random 3x3 matrix with unit rows, redrawn until comfortably invertible."""
    while True:
        t = rng.standard_normal((3, 3))
        t /= np.linalg.norm(t, axis=1, keepdims=True)
        if abs(np.linalg.det(t)) > 1e-3:
            return t


def linear_estimator_mse(probs, estimator_rows, n: int) -> np.ndarray:
    """Exact MSE of an unbiased linear read-out of multinomial frequencies.

    For theta_hat = sum_s nu_s estimator_rows[s] with nu the frequencies of
    n multinomial draws from ``probs``, the MSE equals the covariance
    R^T (diag(p) - p p^T) R / n.
    """
    p = np.asarray(probs, dtype=float)
    rows = np.asarray(estimator_rows, dtype=float)
    cov = (np.diag(p) - np.outer(p, p)) / n
    return rows.T @ cov @ rows
