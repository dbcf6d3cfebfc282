"""Per-block authentication numbers and their placement in the LSB plane.

Each 4x4 block carries 16 bits: a 10-bit block authentication number (BAN)
derived from the singular values of its LSB-free pixels, and a 6-bit group
authentication number (GAN) shared by a run of five consecutive blocks. The
bit positions inside the block follow the rank order of a logistic sequence
seeded from the block's own mean and standard deviation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .chaos import MU_MIN, LogisticParams, logistic_iterate, rank_permutation
from .svd4 import sv_trace_batch

BLOCK = 4
GROUP_SIZE = 5
BAN_BITS = 10
GAN_BITS = 6
PAYLOAD_BITS = BAN_BITS + GAN_BITS
# traces that are exact integers (constant or diagonal blocks) come back a
# few ulps low; this guard keeps floor() on the right side of the integer
TRACE_EPS = 1e-7


@dataclass(frozen=True)
class AuthBits:
    ban: int
    gan: int

    def __post_init__(self):
        if not 0 <= self.ban < 1 << BAN_BITS:
            raise ValueError(f"BAN out of range: {self.ban}")
        if not 0 <= self.gan < 1 << GAN_BITS:
            raise ValueError(f"GAN out of range: {self.gan}")


class GroupRange(NamedTuple):
    """Inclusive, 1-based run of linear block indices."""

    start: int
    end: int

    @property
    def size(self) -> int:
        return self.end - self.start + 1


def split_blocks(image) -> np.ndarray:
    """Tile an image into a ``(rows, cols, 4, 4)`` block grid."""
    image = np.asarray(image)
    if image.ndim != 2:
        raise ValueError("expected a 2-D image")
    h, w = image.shape
    if h == 0 or w == 0 or h % BLOCK or w % BLOCK:
        raise ValueError(f"image dimensions {w}x{h} must be positive multiples of {BLOCK}")
    return image.reshape(h // BLOCK, BLOCK, w // BLOCK, BLOCK).swapaxes(1, 2).copy()


def merge_blocks(grid) -> np.ndarray:
    grid = np.asarray(grid)
    rows, cols = grid.shape[:2]
    return grid.swapaxes(1, 2).reshape(rows * BLOCK, cols * BLOCK).copy()


def zero_lsb(block) -> np.ndarray:
    return np.asarray(block) & np.uint8(0xFE)


def block_ban_batch(blocks7) -> np.ndarray:
    """BAN for an ``(n, 4, 4)`` batch of LSB-zeroed blocks."""
    trace = sv_trace_batch(np.asarray(blocks7).reshape(-1, 4, 4))
    return np.floor(trace + TRACE_EPS).astype(np.int64) % 1024


def block_ban(block7) -> int:
    return int(block_ban_batch(np.asarray(block7).reshape(1, 4, 4))[0])


def group_ranges(total_blocks: int) -> list[GroupRange]:
    if total_blocks < 1:
        raise ValueError("need at least one block")
    return [
        GroupRange(start, min(start + GROUP_SIZE - 1, total_blocks))
        for start in range(1, total_blocks + 1, GROUP_SIZE)
    ]


def group_gan(bans) -> int:
    """Mean BAN of the group reduced mod 64, in exact integer arithmetic.

    The divisor is the actual group size, so a short trailing group uses the
    mean of its own members.
    """
    bans = [int(b) for b in bans]
    g = len(bans)
    if g == 0:
        raise ValueError("empty group")
    return (sum(bans) % (64 * g)) // g


def group_gans(bans) -> np.ndarray:
    """GAN for every group of a linear BAN array (one value per group)."""
    bans = np.asarray(bans, dtype=np.int64)
    n = bans.size
    starts = np.arange(0, n, GROUP_SIZE)
    sums = np.add.reduceat(bans, starts)
    sizes = np.minimum(GROUP_SIZE, n - starts)
    return (sums % (64 * sizes)) // sizes


def block_stats_batch(blocks7):
    """Mean and population standard deviation of each block's 16 pixels."""
    px = np.asarray(blocks7).reshape(-1, 16).astype(np.int64)
    s1 = px.sum(axis=1)
    s2 = (px * px).sum(axis=1)
    mean = s1 / 16.0
    # 256 * variance, exact in integers
    var256 = 16 * s2 - s1 * s1
    std = np.sqrt(var256.astype(np.float64)) / 16.0
    return mean, std


def chaotic_params_batch(blocks7):
    """Logistic seed ``x0`` and parameter ``mu`` for each block."""
    mean, std = block_stats_batch(blocks7)
    x0 = (mean + 1.0) / 257.0
    mu = MU_MIN + (std - np.floor(std)) * 0.43
    return x0, mu


def chaotic_params(block7) -> LogisticParams:
    x0, mu = chaotic_params_batch(np.asarray(block7).reshape(1, 16))
    return LogisticParams(float(x0[0]), float(mu[0]))


def block_permutations(blocks7) -> np.ndarray:
    """Rank permutation of the 16-term logistic sequence of every block."""
    x0, mu = chaotic_params_batch(blocks7)
    return rank_permutation(logistic_iterate(x0, mu, PAYLOAD_BITS))


def payload_bits(ban, gan) -> np.ndarray:
    """16 payload bits per block in insertion order: BAN MSB first, GAN LSB last."""
    ban = np.asarray(ban, dtype=np.int64)
    gan = np.asarray(gan, dtype=np.int64)
    shifts_ban = np.arange(BAN_BITS - 1, -1, -1)
    shifts_gan = np.arange(GAN_BITS - 1, -1, -1)
    return np.concatenate(
        [(ban[..., None] >> shifts_ban) & 1, (gan[..., None] >> shifts_gan) & 1], axis=-1
    ).astype(np.uint8)


def pack_tiles(ban, gan, perm) -> np.ndarray:
    """Place payload bit ``r`` at row-major block position ``perm[r]``.

    Returns ``(..., 16)`` bit tiles.
    """
    perm = np.asarray(perm)
    bits = payload_bits(ban, gan)
    tiles = np.empty(perm.shape, dtype=np.uint8)
    np.put_along_axis(tiles, perm, bits, axis=-1)
    return tiles


def unpack_tiles(tiles, perm):
    """Inverse of :func:`pack_tiles`; returns ``(ban, gan)`` integer arrays."""
    tiles = np.asarray(tiles).reshape(np.shape(perm))
    bits = np.take_along_axis(tiles, np.asarray(perm), axis=-1).astype(np.int64)
    weights_ban = 1 << np.arange(BAN_BITS - 1, -1, -1)
    weights_gan = 1 << np.arange(GAN_BITS - 1, -1, -1)
    ban = (bits[..., :BAN_BITS] * weights_ban).sum(axis=-1)
    gan = (bits[..., BAN_BITS:] * weights_gan).sum(axis=-1)
    return ban, gan


def pack_auth_bits(auth: AuthBits, perm) -> np.ndarray:
    """Payload of one block as a 4x4 bit tile."""
    return pack_tiles(auth.ban, auth.gan, np.asarray(perm)).reshape(4, 4)


def unpack_auth_bits(tile, perm) -> AuthBits:
    ban, gan = unpack_tiles(np.asarray(tile).reshape(16), np.asarray(perm))
    return AuthBits(int(ban), int(gan))
