"""Deterministic tampering operations used to exercise the detector."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Rect:
    x: int
    y: int
    w: int
    h: int

    @classmethod
    def parse(cls, text: str) -> "Rect":
        parts = [int(p) for p in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ValueError(f"region must be x,y,w,h, got {text!r}")
        return cls(*parts)

    def check_inside(self, shape) -> None:
        h, w = shape[:2]
        if self.w < 0 or self.h < 0 or self.x < 0 or self.y < 0:
            raise ValueError(f"region {self} has negative components")
        if self.x + self.w > w or self.y + self.h > h:
            raise ValueError(f"region {self} exceeds image bounds {w}x{h}")

    @property
    def slices(self):
        return slice(self.y, self.y + self.h), slice(self.x, self.x + self.w)

    def __str__(self) -> str:
        return f"{self.x} {self.y} {self.w} {self.h}"


def copy_paste(img, src: Rect, dst) -> np.ndarray:
    """Copy the ``src`` rectangle so its top-left corner lands at ``dst = (x, y)``."""
    img = np.asarray(img)
    target = Rect(dst[0], dst[1], src.w, src.h)
    src.check_inside(img.shape)
    target.check_inside(img.shape)
    out = img.copy()
    out[target.slices] = img[src.slices]
    return out


def splice(dst_img, src_img, region: Rect) -> np.ndarray:
    """Position-preserving collage: take ``region`` from ``src_img``."""
    dst_img = np.asarray(dst_img)
    src_img = np.asarray(src_img)
    if dst_img.shape != src_img.shape:
        raise ValueError(f"image shapes differ: {dst_img.shape} vs {src_img.shape}")
    region.check_inside(dst_img.shape)
    out = dst_img.copy()
    out[region.slices] = src_img[region.slices]
    return out


def fill_region(img, region: Rect, value: int) -> np.ndarray:
    img = np.asarray(img)
    region.check_inside(img.shape)
    out = img.copy()
    out[region.slices] = value
    return out


def stamp_bits(img, stamp, at, ink: int) -> np.ndarray:
    """Set pixels under the 1-bits of ``stamp`` (top-left at ``at = (x, y)``) to ``ink``."""
    img = np.asarray(img)
    stamp = np.asarray(stamp, dtype=bool)
    region = Rect(at[0], at[1], stamp.shape[1], stamp.shape[0])
    region.check_inside(img.shape)
    out = img.copy()
    out[region.slices][stamp] = ink
    return out


# 5x7 glyphs, one string of 7 rows per character, '#' = ink
_FONT = {
    "A": " ### #   ##   #######   ##   ##   #",
    "B": "#### #   ##   ##### #   ##   ##### ",
    "C": " ### #   ##    #    #    #   # ### ",
    "D": "#### #   ##   ##   ##   ##   ##### ",
    "E": "######    #    #### #    #    #####",
    "F": "######    #    #### #    #    #    ",
    "G": " ### #   ##    # ####   ##   # ####",
    "H": "#   ##   ##   #######   ##   ##   #",
    "I": " ###   #    #    #    #    #   ### ",
    "J": "  ###   #    #    # #  # #  #  ##  ",
    "K": "#   ##  # # #  ##   # #  #  # #   #",
    "L": "#    #    #    #    #    #    #####",
    "M": "#   ### ### # ##   ##   ##   ##   #",
    "N": "#   ###  ## # ##  ###   ##   ##   #",
    "O": " ### #   ##   ##   ##   ##   # ### ",
    "P": "#### #   ##   ##### #    #    #    ",
    "Q": " ### #   ##   ##   ## # ##  #  ## #",
    "R": "#### #   ##   ##### # #  #  # #   #",
    "S": " ####    #     ###     #    #####  ",
    "T": "#####  #    #    #    #    #    #  ",
    "U": "#   ##   ##   ##   ##   ##   # ### ",
    "V": "#   ##   ##   ##   ##   # # #   #  ",
    "W": "#   ##   ##   ## # ## # ##### #   #",
    "X": "#   ##   # # #   #   # # #   ##   #",
    "Y": "#   ##   # # #   #    #    #    #  ",
    "Z": "#####    #   #   #   #   #    #####",
    " ": " " * 35,
}


def render_text(text: str, scale: int = 1) -> np.ndarray:
    """Rasterise upper-case text with the built-in 5x7 font into a binary stamp."""
    glyphs = []
    for ch in text.upper():
        if ch not in _FONT:
            raise ValueError(f"no glyph for {ch!r}")
        g = np.array([c == "#" for c in _FONT[ch]], dtype=np.uint8).reshape(7, 5)
        glyphs.append(np.pad(g, ((0, 0), (0, 1))))
    bitmap = np.hstack(glyphs)[:, :-1] if glyphs else np.zeros((7, 0), np.uint8)
    return np.kron(bitmap, np.ones((scale, scale), dtype=np.uint8))
