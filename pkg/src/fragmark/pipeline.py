"""Watermark embedding and tamper verification."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .blockauth import (
    BLOCK,
    GROUP_SIZE,
    block_ban_batch,
    block_permutations,
    group_gans,
    merge_blocks,
    pack_tiles,
    split_blocks,
    unpack_tiles,
)
from .chaos import ArnoldKey, scramble_grid


@dataclass(frozen=True)
class AuthKey:
    """Secret material: Arnold parameters plus the binary watermark image."""

    a: int
    b: int
    k: int
    watermark: np.ndarray

    def arnold_for(self, image: np.ndarray) -> ArnoldKey:
        _check_host(image)
        w = np.asarray(self.watermark)
        if w.shape != image.shape:
            raise ValueError(
                f"watermark shape {w.shape} does not match image shape {image.shape}"
            )
        if not np.isin(w, (0, 1)).all():
            raise ValueError("watermark must be a binary image")
        return ArnoldKey(self.a, self.b, self.k, image.shape[0] // BLOCK)


@dataclass
class VerifyReport:
    tamper_map: np.ndarray
    """Per-block flags in original coordinates, True = tampered."""
    extracted_watermark: np.ndarray
    total_blocks: int
    ban_mismatch: np.ndarray
    """Blocks whose own BAN check failed, original coordinates."""

    @property
    def flagged_count(self) -> int:
        return int(self.tamper_map.sum())


def _check_host(image: np.ndarray) -> None:
    if image.ndim != 2:
        raise ValueError("image must be 2-D grayscale")
    h, w = image.shape
    if h != w:
        raise ValueError("host must be square")
    if h % BLOCK or h < 2 * BLOCK:
        raise ValueError(f"image side must be a multiple of {BLOCK} and at least {2 * BLOCK}")


def _per_block(fn, flat: np.ndarray, workers: int) -> np.ndarray:
    if workers <= 1 or len(flat) < 2 * workers:
        return fn(flat)
    chunks = np.array_split(flat, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.concatenate(list(pool.map(fn, chunks)))


def _expand_groups(per_group: np.ndarray, total: int) -> np.ndarray:
    return np.repeat(per_group, GROUP_SIZE)[:total]


def embed(host, key: AuthKey, workers: int = 1) -> np.ndarray:
    """Return a watermarked copy of ``host``; only LSBs change."""
    host = np.asarray(host, dtype=np.uint8)
    arnold = key.arnold_for(host)
    a, b, k = arnold.a, arnold.b, arnold.k
    n = arnold.n

    scr7 = scramble_grid(split_blocks(host), a, b, k) & np.uint8(0xFE)
    flat7 = scr7.reshape(-1, 16)
    bans = _per_block(block_ban_batch, flat7, workers)
    gans = _expand_groups(group_gans(bans), len(bans))
    perms = _per_block(block_permutations, flat7, workers)

    abp = merge_blocks(pack_tiles(bans, gans, perms).reshape(n, n, BLOCK, BLOCK))
    bai = abp ^ np.asarray(key.watermark, dtype=np.uint8)
    marked = merge_blocks(scr7) | bai
    return merge_blocks(scramble_grid(split_blocks(marked), a, b, arnold.period - k))


def _group_mode(values: np.ndarray, levels: int = 64) -> np.ndarray:
    """Most frequent value per group; ties go to the smallest value."""
    group = np.arange(values.size) // GROUP_SIZE
    ngroups = group[-1] + 1
    counts = np.bincount(group * levels + values, minlength=ngroups * levels)
    return counts.reshape(ngroups, levels).argmax(axis=1)


def verify(image, key: AuthKey, workers: int = 1) -> VerifyReport:
    """Extract the authentication bits and locate tampered blocks.

    A block is flagged when its recomputed BAN differs from the extracted
    one, when its extracted GAN differs from the most frequent extracted GAN
    of its group, or when the GAN recomputed for its group differs from that
    mode.
    """
    image = np.asarray(image, dtype=np.uint8)
    arnold = key.arnold_for(image)
    a, b, k = arnold.a, arnold.b, arnold.k
    n = arnold.n
    wm = np.asarray(key.watermark, dtype=np.uint8)
    wm_blocks = split_blocks(wm)

    scr = scramble_grid(split_blocks(image), a, b, k)
    flat7 = (scr & np.uint8(0xFE)).reshape(-1, 16)
    abp_tiles = ((scr & np.uint8(1)) ^ wm_blocks).reshape(-1, 16)

    perms = _per_block(block_permutations, flat7, workers)
    orig_ban, orig_gan = unpack_tiles(abp_tiles, perms)
    bans = _per_block(block_ban_batch, flat7, workers)

    total = len(bans)
    freq = _expand_groups(_group_mode(orig_gan), total)
    recomputed = _expand_groups(group_gans(bans), total)
    flagged = (bans != orig_ban) | (orig_gan != freq) | (recomputed != freq)

    ew = wm_blocks ^ flagged.reshape(n, n, 1, 1).astype(np.uint8)
    w_ext = merge_blocks(ew)
    diff = split_blocks(w_ext ^ wm).any(axis=(2, 3))
    back = arnold.period - k
    return VerifyReport(
        tamper_map=scramble_grid(diff, a, b, back),
        extracted_watermark=w_ext,
        total_blocks=total,
        ban_mismatch=scramble_grid((bans != orig_ban).reshape(n, n), a, b, back),
    )


def group_map(side: int, a: int, b: int, k: int) -> np.ndarray:
    """Group index of every block, in original block coordinates."""
    n = side // BLOCK
    arnold = ArnoldKey(a, b, k, n)
    scrambled_groups = (np.arange(n * n) // GROUP_SIZE).reshape(n, n)
    return scramble_grid(scrambled_groups, a, b, arnold.period - k)


def psnr(x, y) -> float:
    """Peak signal-to-noise ratio in dB for 8-bit images; ``inf`` if identical."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"image shapes differ: {x.shape} vs {y.shape}")
    mse = np.mean((x - y) ** 2)
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)


def render_tamper_map(tamper_map) -> np.ndarray:
    """Full-resolution view: flagged blocks white (255), the rest black."""
    flags = np.asarray(tamper_map, dtype=bool)
    return np.kron(flags, np.ones((BLOCK, BLOCK), dtype=np.uint8)) * np.uint8(255)
