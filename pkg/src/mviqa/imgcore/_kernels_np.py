"""Numpy fallback for the hot pixel kernels.

Mirrors _kernels_cy.pyx exactly: the per-sample accumulation order is the
same in both backends, so results are bit-identical in float64.
"""
from __future__ import annotations

import numpy as np


def _shift_replicate(src: np.ndarray, dy: int, dx: int) -> np.ndarray:
    """src sampled at (y+dy, x+dx) with replicate borders."""
    h, w = src.shape
    ys = np.clip(np.arange(h) + dy, 0, h - 1)
    xs = np.clip(np.arange(w) + dx, 0, w - 1)
    return src[np.ix_(ys, xs)]


def convolve2d(src: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Correlate a 2-D float64 plane with a 2-D kernel, replicate edges."""
    kh, kw = kernel.shape
    cy, cx = kh // 2, kw // 2
    out = np.zeros_like(src)
    for i in range(kh):
        for j in range(kw):
            k = kernel[i, j]
            if k == 0.0:
                continue
            out += k * _shift_replicate(src, i - cy, j - cx)
    return out


def warp_bilinear(src: np.ndarray, ys: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Sample src at float coordinates with bilinear interpolation.

    Coordinates outside the plane are clamped (replicate borders).
    """
    h, w = src.shape
    yc = np.clip(ys, 0.0, float(h - 1))
    xc = np.clip(xs, 0.0, float(w - 1))
    y0 = np.floor(yc).astype(np.intp)
    x0 = np.floor(xc).astype(np.intp)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    fy = yc - y0
    fx = xc - x0
    a = src[y0, x0]
    b = src[y0, x1]
    c = src[y1, x0]
    d = src[y1, x1]
    return (1.0 - fy) * ((1.0 - fx) * a + fx * b) + fy * ((1.0 - fx) * c + fx * d)


def bilateral(src: np.ndarray, radius: int, sigma_s: float, sigma_r: float) -> np.ndarray:
    """Edge-preserving smoother over a (2r+1)^2 window, replicate edges."""
    inv_2ss = 1.0 / (2.0 * sigma_s * sigma_s)
    inv_2sr = 1.0 / (2.0 * sigma_r * sigma_r)
    acc = np.zeros_like(src)
    wsum = np.zeros_like(src)
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            sw = np.exp(-(dy * dy + dx * dx) * inv_2ss)
            val = _shift_replicate(src, dy, dx)
            diff = val - src
            wgt = sw * np.exp(-(diff * diff) * inv_2sr)
            acc += wgt * val
            wsum += wgt
    return acc / wsum
