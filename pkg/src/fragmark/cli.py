"""Command-line front end.

Exit status: 0 success (or authentic image), 1 tampering detected, 2 usage,
contract or I/O error.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import attacks, imgio
from .attacks import Rect
from .chaos import arnold_period
from .pipeline import AuthKey, embed, psnr, render_tamper_map, verify

EXIT_OK = 0
EXIT_TAMPERED = 1
EXIT_ERROR = 2


class CliError(Exception):
    pass


def _point(text: str):
    parts = [int(p) for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}")
    return parts[0], parts[1]


def _region(text: str) -> Rect:
    try:
        return Rect.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load_key(args) -> AuthKey:
    return AuthKey(args.a, args.b, args.k, imgio.load_binary(args.watermark))


def cmd_embed(args) -> int:
    key = _load_key(args)
    host = imgio.load_gray(args.host)
    marked = embed(host, key, workers=args.workers)
    imgio.save_gray(marked, args.out)
    print(f"PSNR: {psnr(host, marked):.4f} dB")
    return EXIT_OK


def cmd_verify(args) -> int:
    key = _load_key(args)
    image = imgio.load_gray(args.image)
    report = verify(image, key, workers=args.workers)
    if args.map_out:
        imgio.save_gray(render_tamper_map(report.tamper_map), args.map_out)
    if args.wext_out:
        imgio.save_binary(report.extracted_watermark, args.wext_out)
    print(f"flagged: {report.flagged_count}/{report.total_blocks}")
    return EXIT_TAMPERED if report.flagged_count else EXIT_OK


def _fit_text(text: str, region: Rect) -> np.ndarray:
    glyphs = attacks.render_text(text)
    h, w = glyphs.shape
    scale = min(region.w // w if w else 0, region.h // h)
    if scale < 1:
        raise CliError(f"text {text!r} does not fit in region {region}")
    return attacks.render_text(text, scale)


def cmd_attack(args) -> int:
    image = imgio.load_gray(args.image)
    region = args.region
    if args.kind == "copy-paste":
        if args.dst is None:
            raise CliError("copy-paste needs --dst x,y")
        out = attacks.copy_paste(image, region, args.dst)
        record = Rect(args.dst[0], args.dst[1], region.w, region.h)
    elif args.kind == "splice":
        if args.src is None:
            raise CliError("splice needs --src image")
        out = attacks.splice(image, imgio.load_gray(args.src), region)
        record = region
    elif args.kind == "fill":
        out = attacks.fill_region(image, region, args.ink)
        record = region
    else:
        stamp = imgio.load_binary(args.stamp) if args.stamp else _fit_text(args.text, region)
        out = attacks.stamp_bits(image, stamp, (region.x, region.y), args.ink)
        record = Rect(region.x, region.y, stamp.shape[1], stamp.shape[0])
    imgio.save_gray(out, args.out)
    with open(args.out + ".region", "w") as fh:
        fh.write(f"{record}\n")
    return EXIT_OK


def cmd_period(args) -> int:
    print(f"T = {arnold_period(args.a, args.b, args.N)}")
    return EXIT_OK


def cmd_psnr(args) -> int:
    value = psnr(imgio.load_gray(args.first), imgio.load_gray(args.second))
    print("inf" if math.isinf(value) else f"{value:.4f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fragmark", description="SVD-based fragile watermarking with grouped blocks"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def key_flags(p):
        p.add_argument("--a", type=int, required=True, help="Arnold parameter a")
        p.add_argument("--b", type=int, required=True, help="Arnold parameter b")
        p.add_argument("--k", type=int, required=True, help="scrambling count")
        p.add_argument("--watermark", required=True, help="binary watermark (PBM or PGM)")
        p.add_argument("--workers", type=int, default=1, help="threads for per-block work")

    p = sub.add_parser("embed", help="watermark a grayscale PGM")
    p.add_argument("host")
    p.add_argument("--out", required=True)
    key_flags(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="check a watermarked PGM for tampering")
    p.add_argument("image")
    p.add_argument("--map-out", help="tamper map PGM (white = tampered)")
    p.add_argument("--wext-out", help="extracted watermark PBM")
    key_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("attack", help="apply a tampering operation")
    p.add_argument("image")
    p.add_argument("--kind", required=True, choices=["copy-paste", "splice", "fill", "stamp"])
    p.add_argument("--region", type=_region, required=True, help="x,y,w,h")
    p.add_argument("--out", required=True)
    p.add_argument("--dst", type=_point, help="copy-paste destination x,y")
    p.add_argument("--src", help="donor image for splice")
    p.add_argument("--ink", type=int, default=0, help="fill value or stamp ink")
    p.add_argument("--text", default="TAMPER", help="text for stamp (fitted to region)")
    p.add_argument("--stamp", help="binary stamp image, overrides --text")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("period", help="period of the Arnold map on an N x N grid")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("psnr", help="PSNR between two PGM images")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_psnr)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, ArithmeticError, CliError) as exc:
        if isinstance(exc, OSError) and exc.filename is not None:
            msg = f"{exc.strerror}: {exc.filename}"
        else:
            msg = str(exc)
        print(f"fragmark {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
