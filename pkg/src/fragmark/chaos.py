"""Logistic-map sequences, rank permutations and the block-level Arnold map."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MU_MIN = 3.5699


@dataclass(frozen=True)
class LogisticParams:
    x0: float
    mu: float

    def __post_init__(self):
        if not 0.0 < self.x0 < 1.0:
            raise ValueError(f"x0 must lie in (0, 1), got {self.x0}")
        if not MU_MIN <= self.mu < 4.0:
            raise ValueError(f"mu must lie in [{MU_MIN}, 4), got {self.mu}")


@dataclass(frozen=True)
class ArnoldKey:
    """Arnold map ``[[1, a], [b, ab+1]]`` on an ``n`` x ``n`` grid, iterated ``k`` times."""

    a: int
    b: int
    k: int
    n: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("Arnold parameters a and b must be positive")
        if self.n < 2:
            raise ValueError("Arnold grid side must be at least 2")
        if self.k < 0:
            raise ValueError("scrambling count k must be non-negative")
        if self.k >= self.period:
            raise ValueError(f"k={self.k} must be smaller than the period {self.period}")

    @property
    def period(self) -> int:
        return arnold_period(self.a, self.b, self.n)


def logistic_iterate(x0, mu, n: int) -> np.ndarray:
    """Iterate ``x <- mu * x * (1 - x)`` n times for scalars or arrays.

    Returns an array with the iterate axis last. The first element is the
    first iterate after ``x0`` (no transient is discarded).
    """
    x = np.asarray(x0, dtype=np.float64)
    mu = np.asarray(mu, dtype=np.float64)
    out = np.empty(np.broadcast(x, mu).shape + (n,), dtype=np.float64)
    for i in range(n):
        x = mu * x * (1.0 - x)
        out[..., i] = x
    return out


def logistic_sequence(params: LogisticParams, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("sequence length must be at least 1")
    return logistic_iterate(params.x0, params.mu, n)


def rank_permutation(seq) -> np.ndarray:
    """Indices of ``seq`` ordered from largest to smallest value.

    Works along the last axis. Exact ties keep the smaller index first.
    """
    seq = np.asarray(seq, dtype=np.float64)
    return np.argsort(-seq, axis=-1, kind="stable")


def arnold_step(x, y, a: int, b: int, n: int):
    return (x + a * y) % n, (b * x + (a * b + 1) * y) % n


def arnold_period(a: int, b: int, n: int) -> int:
    """Smallest T >= 1 with ``[[1, a], [b, ab+1]]**T == I (mod n)``."""
    if n < 2:
        raise ValueError("grid side must be at least 2")
    if a < 1 or b < 1:
        raise ValueError("Arnold parameters a and b must be positive")
    m00, m01, m10, m11 = 1, a % n, b % n, (a * b + 1) % n
    p00, p01, p10, p11 = m00, m01, m10, m11
    cap = 6 * n * n
    for t in range(1, cap + 1):
        if p00 == 1 and p01 == 0 and p10 == 0 and p11 == 1:
            return t
        p00, p01, p10, p11 = (
            (p00 * m00 + p01 * m10) % n,
            (p00 * m01 + p01 * m11) % n,
            (p10 * m00 + p11 * m10) % n,
            (p10 * m01 + p11 * m11) % n,
        )
    raise ArithmeticError(f"Arnold period exceeds cap {cap} for a={a}, b={b}, n={n}")


def scramble_grid(grid, a: int, b: int, times: int) -> np.ndarray:
    """Move the cell at ``(x, y)`` to ``arnold_step`` applied ``times`` times.

    ``x`` is the row and ``y`` the column. Trailing axes (e.g. 4x4 pixel
    blocks) travel with their cell.
    """
    grid = np.asarray(grid)
    if grid.ndim < 2 or grid.shape[0] != grid.shape[1]:
        raise ValueError(f"Arnold scrambling needs a square grid, got shape {grid.shape[:2]}")
    n = grid.shape[0]
    x, y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    tx, ty = x, y
    for _ in range(times):
        tx, ty = arnold_step(tx, ty, a, b, n)
    out = np.empty_like(grid)
    out[tx, ty] = grid[x, y]
    return out
