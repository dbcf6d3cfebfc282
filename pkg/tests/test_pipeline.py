import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fragmark.chaos import arnold_period, scramble_grid
from fragmark.pipeline import AuthKey, embed, group_map, psnr, render_tamper_map, verify
from conftest import horse_watermark, shrink


@pytest.fixture(scope="module")
def small(camera):
    img = shrink(camera, 128)
    key = AuthKey(1, 1, 20, horse_watermark(128))
    return img, key, embed(img, key)


def test_embed_touches_only_lsb(small):
    img, _, marked = small
    assert set(np.unique(marked.astype(int) - img.astype(int))) <= {-1, 0, 1}
    np.testing.assert_array_equal(marked >> 1, img >> 1)


def test_embed_deterministic(small):
    img, key, marked = small
    np.testing.assert_array_equal(embed(img, key), marked)


def test_round_trip(small):
    _, key, marked = small
    report = verify(marked, key)
    assert report.flagged_count == 0
    assert report.total_blocks == 1024
    np.testing.assert_array_equal(report.extracted_watermark, key.watermark)


def test_single_bit_flip_flagged(small):
    _, key, marked = small
    tampered = marked.copy()
    tampered[37, 81] ^= 0x10
    report = verify(tampered, key)
    assert report.tamper_map[37 // 4, 81 // 4]


def test_lsb_flip_flagged(small):
    _, key, marked = small
    tampered = marked.copy()
    tampered[5, 5] ^= 1
    assert verify(tampered, key).tamper_map[1, 1]


def test_extracted_watermark_inverted_where_flagged(small):
    _, key, marked = small
    tampered = marked.copy()
    tampered[40:48, 40:48] = 17
    report = verify(tampered, key)
    diff = report.extracted_watermark ^ key.watermark
    assert diff.sum() == 16 * report.flagged_count


def test_wrong_k_flags_almost_everything(small):
    _, key, marked = small
    wrong = AuthKey(key.a, key.b, key.k + 1, key.watermark)
    report = verify(marked, wrong)
    assert report.flagged_count >= 0.95 * report.total_blocks


def test_wrong_watermark_tile_flags_that_block(small):
    _, key, marked = small
    w = key.watermark.copy()
    w[64:68, 32:36] ^= 1
    report = verify(marked, AuthKey(key.a, key.b, key.k, w))
    # the altered tile is scrambled block (16, 8); carry it back to original coordinates
    marker = np.zeros((32, 32), dtype=bool)
    marker[16, 8] = True
    original = scramble_grid(marker, key.a, key.b, arnold_period(key.a, key.b, 32) - key.k)
    assert report.tamper_map[original].all()


def test_splice_from_other_host_flagged(small, camera):
    img, key, marked = small
    other = embed(shrink(np.ascontiguousarray(camera[::-1, :]), 128), key)
    forged = marked.copy()
    forged[32:64, 32:64] = other[32:64, 32:64]
    report = verify(forged, key)
    changed = (forged != marked).reshape(32, 4, 32, 4).any(axis=(1, 3))
    assert report.tamper_map[changed].mean() > 0.9


def test_group_map_partitions_blocks():
    g = group_map(64, 1, 1, 5)
    counts = np.bincount(g.ravel())
    assert counts[:-1].tolist() == [5] * (len(counts) - 1)
    assert counts[-1] == 256 % 5


@pytest.mark.parametrize(
    "host, wm, msg",
    [
        (np.zeros((64, 32), np.uint8), np.zeros((64, 32), np.uint8), "square"),
        (np.zeros((30, 30), np.uint8), np.zeros((30, 30), np.uint8), "multiple"),
        (np.zeros((64, 64), np.uint8), np.zeros((32, 32), np.uint8), "does not match"),
    ],
)
def test_embed_contract_errors(host, wm, msg):
    with pytest.raises(ValueError, match=msg):
        embed(host, AuthKey(1, 1, 1, wm))


def test_k_must_be_below_period():
    with pytest.raises(ValueError, match="period"):
        embed(np.zeros((64, 64), np.uint8), AuthKey(1, 1, 48, np.zeros((64, 64), np.uint8)))


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 12), st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1), st.data())
def test_round_trip_property(n, a, b, seed, data):
    side = 4 * n
    rng = np.random.default_rng(seed)
    host = rng.integers(0, 256, (side, side), dtype=np.uint8)
    wm = rng.integers(0, 2, (side, side), dtype=np.uint8)
    k = data.draw(st.integers(0, arnold_period(a, b, n) - 1))
    key = AuthKey(a, b, k, wm)
    marked = embed(host, key)
    np.testing.assert_array_equal(marked >> 1, host >> 1)
    report = verify(marked, key)
    assert report.flagged_count == 0
    np.testing.assert_array_equal(report.extracted_watermark, wm)


def test_psnr_examples():
    a = np.zeros((4, 4), np.uint8)
    assert psnr(a, a) == math.inf
    b = a.copy()
    b[::2] = 1  # half the pixels off by one: MSE 0.5
    assert psnr(a, b) == pytest.approx(10 * math.log10(65025 / 0.5))
    assert round(psnr(a, b), 4) == 51.1411
    assert psnr(a, np.full((4, 4), 255, np.uint8)) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        psnr(a, np.zeros((4, 8), np.uint8))


def test_render_tamper_map():
    flags = np.zeros((3, 3), bool)
    assert not render_tamper_map(flags).any()
    assert (render_tamper_map(~flags) == 255).all()
    flags[0, 0] = True
    img = render_tamper_map(flags)
    assert img.shape == (12, 12)
    assert (img[:4, :4] == 255).all() and img.sum() == 16 * 255
