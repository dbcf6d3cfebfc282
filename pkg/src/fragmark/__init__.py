"""Fragile watermarking of grayscale images with SVD authentication bits and grouped blocks."""
from .attacks import Rect, copy_paste, fill_region, render_text, splice, stamp_bits
from .chaos import ArnoldKey, LogisticParams, arnold_period, arnold_step, logistic_sequence, rank_permutation, scramble_grid
from .imgio import FormatError, load_binary, load_gray, save_binary, save_gray
from .pipeline import AuthKey, VerifyReport, embed, group_map, psnr, render_tamper_map, verify
from .svd4 import singular_values, sv_trace

__version__ = "0.1.0"
