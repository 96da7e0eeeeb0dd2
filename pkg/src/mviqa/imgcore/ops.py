"""Kernel construction, filtering, resizing, thresholding and PSNR."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .buffer import FloatPlane, ImageBuf, InvalidInputError


@dataclass(frozen=True)
class Kernel2D:
    """Odd-sided square coefficient grid. Blur kernels sum to 1."""

    taps: np.ndarray

    def __post_init__(self):
        t = self.taps
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] % 2 == 0:
            raise InvalidInputError(f"kernel must be odd-sided square, got {t.shape}")

    @property
    def side(self) -> int:
        return self.taps.shape[0]

    @property
    def normalization(self) -> float:
        return float(self.taps.sum())


def gaussian_kernel(sigma: float, radius: int | None = None) -> Kernel2D:
    if radius is None:
        radius = max(1, int(math.ceil(3.0 * sigma)))
    ax = np.arange(-radius, radius + 1, dtype=np.float64)
    g1 = np.exp(-(ax**2) / (2.0 * sigma * sigma))
    k = np.outer(g1, g1)
    return Kernel2D(k / k.sum())


def disk_kernel(radius: float) -> Kernel2D:
    """Circular (lens blur) kernel: uniform weight inside the radius."""
    r = max(1, int(math.ceil(radius)))
    ax = np.arange(-r, r + 1, dtype=np.float64)
    yy, xx = np.meshgrid(ax, ax, indexing="ij")
    k = (yy**2 + xx**2 <= radius * radius + 1e-9).astype(np.float64)
    return Kernel2D(k / k.sum())


def line_kernel(length: int, angle_deg: float) -> Kernel2D:
    """Motion-blur kernel: a line of the given length through the center."""
    if length < 1:
        raise InvalidInputError("line kernel length must be >= 1")
    side = length if length % 2 == 1 else length + 1
    k = np.zeros((side, side), dtype=np.float64)
    c = side // 2
    theta = math.radians(angle_deg)
    dy, dx = -math.sin(theta), math.cos(theta)
    for step in range(-(length // 2), length // 2 + 1):
        y = int(round(c + step * dy))
        x = int(round(c + step * dx))
        k[min(max(y, 0), side - 1), min(max(x, 0), side - 1)] = 1.0
    return Kernel2D(k / k.sum())


def box_kernel(side: int) -> Kernel2D:
    if side % 2 == 0:
        side += 1
    k = np.ones((side, side), dtype=np.float64)
    return Kernel2D(k / k.sum())


def convolve(plane: FloatPlane, kernel: Kernel2D) -> FloatPlane:
    """Per-channel correlation with replicate edge handling."""
    out = np.empty_like(plane.data)
    for ch in range(plane.channels):
        out[:, :, ch] = kernels.convolve2d(
            np.ascontiguousarray(plane.data[:, :, ch]), kernel.taps
        )
    return FloatPlane(out)


def gaussian_blur(plane: FloatPlane, sigma: float) -> FloatPlane:
    return convolve(plane, gaussian_kernel(sigma))


def resize_plane(plane: FloatPlane, new_w: int, new_h: int, method: str = "bilinear") -> FloatPlane:
    if new_w < 1 or new_h < 1:
        raise InvalidInputError("target dimensions must be positive")
    h, w = plane.height, plane.width
    if method == "nearest":
        ys = np.minimum((np.arange(new_h) + 0.5) * (h / new_h), h - 1).astype(np.intp)
        xs = np.minimum((np.arange(new_w) + 0.5) * (w / new_w), w - 1).astype(np.intp)
        return FloatPlane(plane.data[np.ix_(ys, xs)])
    if method == "bilinear":
        ys1 = (np.arange(new_h, dtype=np.float64) + 0.5) * (h / new_h) - 0.5
        xs1 = (np.arange(new_w, dtype=np.float64) + 0.5) * (w / new_w) - 0.5
        ys, xs = np.meshgrid(ys1, xs1, indexing="ij")
        ys = np.ascontiguousarray(ys)
        xs = np.ascontiguousarray(xs)
        out = np.empty((new_h, new_w, plane.channels), dtype=np.float64)
        for ch in range(plane.channels):
            out[:, :, ch] = kernels.warp_bilinear(
                np.ascontiguousarray(plane.data[:, :, ch]), ys, xs
            )
        return FloatPlane(out)
    raise InvalidInputError(f"unknown resize method {method!r}")


def resize(img: ImageBuf, new_w: int, new_h: int, method: str = "bilinear") -> ImageBuf:
    if method == "nearest" and (new_w, new_h) == (img.width, img.height):
        return ImageBuf(img.data.copy())
    return resize_plane(img.to_float(), new_w, new_h, method).to_image()


def otsu_thresholds(gray: FloatPlane, levels: int) -> list[float]:
    """Thresholds maximizing between-class variance over a 256-bin histogram.

    Samples are expected in [0,1]; returned thresholds are on the same
    scale. A constant image degenerates to a single threshold at the
    constant value.
    """
    if levels < 2:
        raise InvalidInputError("levels must be >= 2")
    samples = gray.data.ravel()
    bins = np.clip((samples * 255.0).astype(np.intp), 0, 255)
    hist = np.bincount(bins, minlength=256).astype(np.float64)
    if np.count_nonzero(hist) <= 1:
        return [float(samples[0])]

    # Maximizing between-class variance == maximizing sum_k w_k * mu_k^2.
    p = hist / hist.sum()
    centers = np.arange(256, dtype=np.float64)
    cw = np.concatenate([[0.0], np.cumsum(p)])
    cm = np.concatenate([[0.0], np.cumsum(p * centers)])

    def class_term(lo: int, hi: int) -> float:
        # bins [lo, hi] inclusive
        w = cw[hi + 1] - cw[lo]
        if w <= 0.0:
            return 0.0
        m = cm[hi + 1] - cm[lo]
        return m * m / w

    # DP over the last bin of each class.
    neg = -np.inf
    best = np.full((levels + 1, 257), neg)
    arg = np.zeros((levels + 1, 257), dtype=np.intp)
    best[0][0] = 0.0
    for c in range(1, levels + 1):
        for t in range(c, 257):
            cand = neg
            cand_s = 0
            for s in range(c - 1, t):
                if best[c - 1][s] == neg:
                    continue
                v = best[c - 1][s] + class_term(s, t - 1)
                if v > cand:
                    cand = v
                    cand_s = s
            best[c][t] = cand
            arg[c][t] = cand_s
    cuts = []
    t = 256
    for c in range(levels, 0, -1):
        s = arg[c][t]
        cuts.append(s)
        t = s
    cuts = sorted(cuts)[1:]  # drop the leading 0
    return [c / 255.0 for c in cuts]


def otsu_quantize(gray: FloatPlane, levels: int) -> FloatPlane:
    """Map each sample to the mean of its Otsu class."""
    thresholds = otsu_thresholds(gray, levels)
    data = gray.data
    idx = np.zeros(data.shape, dtype=np.intp)
    for t in thresholds:
        idx += data >= t
    out = np.empty_like(data)
    for k in range(len(thresholds) + 1):
        sel = idx == k
        if np.any(sel):
            out[sel] = data[sel].mean()
    return FloatPlane(out)


def psnr(a: ImageBuf, b: ImageBuf) -> float:
    """Peak signal-to-noise ratio in dB; +inf for identical images."""
    if a.data.shape != b.data.shape:
        raise InvalidInputError(f"shape mismatch {a.data.shape} vs {b.data.shape}")
    diff = a.data.astype(np.float64) - b.data.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)
