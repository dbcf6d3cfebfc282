"""Singular values of 4x4 real matrices.

Singular values are the square roots of the eigenvalues of ``M.T @ M``.
Cyclic Jacobi rotations diagonalise that product, but implicitly: each
rotation is applied to a pair of columns of ``M`` (Hestenes' one-sided
form), so the Gram matrix is never rounded and small singular values keep
full relative accuracy. Once the columns are orthogonal their norms are the
singular values. Singular vectors are never formed.

Everything is vectorised over a leading batch axis. A converged matrix only
sees exact identity rotations, so each result depends on its own matrix
alone and never on the rest of the batch.
"""
from __future__ import annotations

import numpy as np

MAX_SWEEPS = 50
REL_TOL = 1e-12
_PAIRS = [(p, q) for p in range(4) for q in range(p + 1, 4)]


def _dot(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    # fixed summation order keeps every batch element reproducible
    return ((u[:, 0] * v[:, 0] + u[:, 1] * v[:, 1]) + u[:, 2] * v[:, 2]) + u[:, 3] * v[:, 3]


def _gram(cols: np.ndarray) -> np.ndarray:
    """Gram matrix of the columns, shape ``(n, 4, 4)``."""
    g = np.empty(cols.shape[:1] + (4, 4))
    for p in range(4):
        for q in range(p, 4):
            g[:, p, q] = g[:, q, p] = _dot(cols[:, :, p], cols[:, :, q])
    return g


def _off_norm(g: np.ndarray) -> np.ndarray:
    sq = np.zeros(g.shape[0])
    for p, q in _PAIRS:
        sq += 2.0 * g[:, p, q] * g[:, p, q]
    return np.sqrt(sq)


def orthogonalize_columns(m) -> np.ndarray:
    """Rotate the columns of each 4x4 matrix until ``M.T @ M`` is diagonal.

    Stops per matrix once the off-diagonal Frobenius mass of the Gram matrix
    drops to ``REL_TOL`` times its Frobenius norm, or after ``MAX_SWEEPS``.
    """
    cols = np.array(m, dtype=np.float64)
    g0 = _gram(cols)
    tol = REL_TOL * np.sqrt((g0 * g0).sum(axis=(1, 2)))
    for _ in range(MAX_SWEEPS):
        active = _off_norm(_gram(cols)) > tol
        if not active.any():
            break
        for p, q in _PAIRS:
            cp = cols[:, :, p]
            cq = cols[:, :, q]
            alpha = _dot(cp, cp)
            beta = _dot(cq, cq)
            gamma = _dot(cp, cq)
            rot = active & (gamma != 0.0)
            safe = np.where(rot, gamma, 1.0)
            # a subnormal gamma overflows zeta to inf, which correctly yields t = 0
            with np.errstate(over="ignore"):
                zeta = (beta - alpha) / (2.0 * safe)
            t = np.where(zeta >= 0.0, 1.0, -1.0) / (np.abs(zeta) + np.hypot(zeta, 1.0))
            t = np.where(rot, t, 0.0)
            c = (1.0 / np.sqrt(t * t + 1.0))[:, None]
            s = (t[:, None]) * c
            new_p = c * cp - s * cq
            new_q = s * cp + c * cq
            cols[:, :, p] = new_p
            cols[:, :, q] = new_q
    return cols


def singular_values_batch(m) -> np.ndarray:
    """Singular values, descending, for an ``(n, 4, 4)`` batch."""
    m = np.asarray(m)
    if m.ndim != 3 or m.shape[1:] != (4, 4):
        raise ValueError(f"expected a batch of 4x4 matrices, got shape {m.shape}")
    cols = orthogonalize_columns(m)
    lam = np.stack([_dot(cols[:, :, j], cols[:, :, j]) for j in range(4)], axis=1)
    sigma = np.sqrt(np.maximum(lam, 0.0))
    return -np.sort(-sigma, axis=1)


def singular_values(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.size != 16:
        raise ValueError("expected 16 entries")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return singular_values_batch(m.reshape(1, 4, 4))[0]


def sv_trace_batch(m) -> np.ndarray:
    s = singular_values_batch(m)
    return ((s[:, 0] + s[:, 1]) + s[:, 2]) + s[:, 3]


def sv_trace(m) -> float:
    """Sum of singular values (nuclear norm) of one 4x4 matrix."""
    return float(sv_trace_batch(np.asarray(m, dtype=np.float64).reshape(1, 4, 4))[0])
