import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fragmark.pipeline import AuthKey

NATURAL = ["camera", "moon", "brick", "grass", "gravel", "astronaut"]

_acceptance_lines = []


def natural_image(name: str) -> np.ndarray:
    from skimage import data

    img = getattr(data, name)()
    if img.ndim == 3:
        img = (img[..., :3] @ np.array([0.299, 0.587, 0.114])).round().astype(np.uint8)
    return img


def shrink(img: np.ndarray, side: int) -> np.ndarray:
    """Box-average a 512x512 image down to ``side`` (a divisor of 512)."""
    f = img.shape[0] // side
    return img.reshape(side, f, side, f).mean(axis=(1, 3)).round().astype(np.uint8)


def horse_watermark(side: int) -> np.ndarray:
    """A visually meaningful binary watermark: the horse silhouette, nearest-neighbour scaled."""
    from skimage import data

    horse = ~data.horse()
    canvas = np.zeros((400, 400), dtype=np.uint8)
    canvas[36 : 36 + horse.shape[0], :] = horse
    idx = np.arange(side) * 400 // side
    return canvas[np.ix_(idx, idx)]


@pytest.fixture(scope="session")
def camera():
    return natural_image("camera")


@pytest.fixture(scope="session")
def wm512():
    return horse_watermark(512)


@pytest.fixture(scope="session")
def paper_key(wm512):
    return AuthKey(1, 1, 30, wm512)


@pytest.fixture
def acceptance():
    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
        _acceptance_lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
