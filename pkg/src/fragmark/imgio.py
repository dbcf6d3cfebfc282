"""Bit-exact netpbm I/O.

Grayscale images are ``uint8`` arrays of shape ``(height, width)``; binary
images are ``uint8`` arrays holding only 0 and 1. Only binary PGM (P5,
maxval 255) and binary PBM (P4) are supported, since the watermark lives in
the LSB plane and any lossy or filtered format would destroy it.
"""
from __future__ import annotations

import numpy as np


class FormatError(ValueError):
    """Raised for malformed or unsupported netpbm files."""


def _parse_header(data: bytes, nfields: int):
    """Read magic plus ``nfields`` integers; return (magic, ints, offset)."""
    pos = 0
    tokens = []
    n = len(data)
    while len(tokens) < nfields + 1:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos < n and data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise FormatError("malformed header: unexpected end of file")
        tokens.append(data[start:pos])
    # exactly one whitespace byte separates the header from the raster
    if pos >= n or not data[pos : pos + 1].isspace():
        raise FormatError("malformed header: missing raster separator")
    pos += 1
    magic = tokens[0].decode("ascii", "replace")
    try:
        ints = [int(t) for t in tokens[1:]]
    except ValueError:
        raise FormatError("malformed header: non-integer field") from None
    return magic, ints, pos


def _read(path) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _magic(data: bytes) -> str:
    if len(data) < 2:
        raise FormatError("malformed header: file too short")
    return data[:2].decode("ascii", "replace")


def _decode_pgm(data: bytes) -> np.ndarray:
    magic, (width, height, maxval), off = _parse_header(data, 3)
    if width <= 0 or height <= 0:
        raise FormatError("malformed header: non-positive dimensions")
    if maxval != 255:
        raise FormatError(f"unsupported maxval {maxval} (need 255)")
    raster = data[off:]
    if len(raster) != width * height:
        raise FormatError(
            f"pixel data size {len(raster)} does not match {width}x{height}"
        )
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def _decode_pbm(data: bytes) -> np.ndarray:
    magic, (width, height), off = _parse_header(data, 2)
    if width <= 0 or height <= 0:
        raise FormatError("malformed header: non-positive dimensions")
    stride = (width + 7) // 8
    raster = data[off:]
    if len(raster) != stride * height:
        raise FormatError(
            f"bit data size {len(raster)} does not match {width}x{height}"
        )
    packed = np.frombuffer(raster, dtype=np.uint8).reshape(height, stride)
    return np.unpackbits(packed, axis=1)[:, :width].copy()


def load_gray(path) -> np.ndarray:
    """Load a P5 PGM with maxval 255 as a ``(height, width)`` uint8 array."""
    data = _read(path)
    if _magic(data) != "P5":
        raise FormatError(f"unsupported format {_magic(data)!r}: expected binary PGM (P5)")
    return _decode_pgm(data)


def save_gray(image, path) -> None:
    image = np.asarray(image)
    if image.ndim != 2 or image.size == 0:
        raise ValueError("empty image")
    if image.dtype != np.uint8:
        if image.min() < 0 or image.max() > 255:
            raise ValueError("pixel values must lie in [0, 255]")
        image = image.astype(np.uint8)
    height, width = image.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (width, height))
        fh.write(np.ascontiguousarray(image).tobytes())


def load_binary(path) -> np.ndarray:
    """Load a binary image.

    P4 bits are taken as-is (ink = 1). P5 pixels are thresholded: values of
    128 and above become 1.
    """
    data = _read(path)
    magic = _magic(data)
    if magic == "P4":
        return _decode_pbm(data)
    if magic == "P5":
        return (_decode_pgm(data) >= 128).astype(np.uint8)
    raise FormatError(f"unsupported format {magic!r}: expected P4 or P5")


def save_binary(image, path) -> None:
    image = np.asarray(image)
    if image.ndim != 2 or image.size == 0:
        raise ValueError("empty image")
    if not np.isin(image, (0, 1)).all():
        raise ValueError("binary image must contain only 0 and 1")
    height, width = image.shape
    packed = np.packbits(image.astype(np.uint8), axis=1)
    with open(path, "wb") as fh:
        fh.write(b"P4\n%d %d\n" % (width, height))
        fh.write(packed.tobytes())

