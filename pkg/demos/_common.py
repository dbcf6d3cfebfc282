"""Shared helpers for the demo scripts: sample images and an output folder."""
from pathlib import Path

import numpy as np
from skimage import data

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)


def gray(name):
    img = getattr(data, name)()
    if img.ndim == 3:
        img = (img[..., :3] @ np.array([0.299, 0.587, 0.114])).round().astype(np.uint8)
    return img


def horse_watermark(side=512):
    horse = ~data.horse()
    canvas = np.zeros((400, 400), dtype=np.uint8)
    canvas[36 : 36 + horse.shape[0], :] = horse
    idx = np.arange(side) * 400 // side
    return canvas[np.ix_(idx, idx)]
