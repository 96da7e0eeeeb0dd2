"""Color-space conversions on float working planes.

RGB planes hold sRGB samples in [0,1]. Lab uses the D65 white point. HSV
stores hue in degrees [0,360). YCbCr is full-range with chroma centered at
0.5. Every pair of functions round-trips within one 8-bit level.
"""
from __future__ import annotations

import numpy as np

from .buffer import FloatPlane, InvalidInputError

# sRGB <-> XYZ (D65)
_RGB2XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_XYZ2RGB = np.linalg.inv(_RGB2XYZ)
_WHITE_D65 = np.array([0.95047, 1.0, 1.08883])


def _require_rgb(plane: FloatPlane) -> np.ndarray:
    if plane.channels != 3:
        raise InvalidInputError("chromatic conversion requires a 3-channel plane")
    return plane.data


def to_gray(plane: FloatPlane) -> FloatPlane:
    """BT.601 luma (same weights as the YCbCr Y channel)."""
    rgb = _require_rgb(plane)
    y = 0.299 * rgb[:, :, 0] + 0.587 * rgb[:, :, 1] + 0.114 * rgb[:, :, 2]
    return FloatPlane(y[:, :, None])


def srgb_to_ycbcr(plane: FloatPlane) -> FloatPlane:
    rgb = _require_rgb(plane)
    r, g, b = rgb[:, :, 0], rgb[:, :, 1], rgb[:, :, 2]
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 0.5 + (b - y) / 1.772
    cr = 0.5 + (r - y) / 1.402
    return FloatPlane(np.stack([y, cb, cr], axis=2))


def ycbcr_to_srgb(plane: FloatPlane) -> FloatPlane:
    ycc = _require_rgb(plane)
    y, cb, cr = ycc[:, :, 0], ycc[:, :, 1], ycc[:, :, 2]
    r = y + 1.402 * (cr - 0.5)
    b = y + 1.772 * (cb - 0.5)
    g = (y - 0.299 * r - 0.114 * b) / 0.587
    return FloatPlane(np.clip(np.stack([r, g, b], axis=2), 0.0, 1.0))


def srgb_to_hsv(plane: FloatPlane) -> FloatPlane:
    rgb = _require_rgb(plane)
    r, g, b = rgb[:, :, 0], rgb[:, :, 1], rgb[:, :, 2]
    v = np.max(rgb, axis=2)
    c = v - np.min(rgb, axis=2)
    s = np.where(v > 0, c / np.where(v > 0, v, 1.0), 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        hr = np.where(c > 0, ((g - b) / np.where(c > 0, c, 1.0)) % 6.0, 0.0)
        hg = np.where(c > 0, (b - r) / np.where(c > 0, c, 1.0) + 2.0, 0.0)
        hb = np.where(c > 0, (r - g) / np.where(c > 0, c, 1.0) + 4.0, 0.0)
    h = np.where(v == r, hr, np.where(v == g, hg, hb)) * 60.0
    h = np.where(c > 0, h % 360.0, 0.0)
    return FloatPlane(np.stack([h, s, v], axis=2))


def hsv_to_srgb(plane: FloatPlane) -> FloatPlane:
    hsv = _require_rgb(plane)
    h, s, v = hsv[:, :, 0] / 60.0, hsv[:, :, 1], hsv[:, :, 2]
    c = v * s
    x = c * (1.0 - np.abs(h % 2.0 - 1.0))
    m = v - c
    sector = np.floor(h).astype(int) % 6
    r = np.choose(sector, [c, x, np.zeros_like(c), np.zeros_like(c), x, c])
    g = np.choose(sector, [x, c, c, x, np.zeros_like(c), np.zeros_like(c)])
    b = np.choose(sector, [np.zeros_like(c), np.zeros_like(c), x, c, c, x])
    rgb = np.stack([r + m, g + m, b + m], axis=2)
    return FloatPlane(np.clip(rgb, 0.0, 1.0))


def _srgb_gamma_decode(u: np.ndarray) -> np.ndarray:
    return np.where(u <= 0.04045, u / 12.92, ((u + 0.055) / 1.055) ** 2.4)


def _srgb_gamma_encode(u: np.ndarray) -> np.ndarray:
    u = np.clip(u, 0.0, None)
    return np.where(u <= 0.0031308, u * 12.92, 1.055 * u ** (1.0 / 2.4) - 0.055)


def _lab_f(t: np.ndarray) -> np.ndarray:
    delta = 6.0 / 29.0
    return np.where(t > delta**3, np.cbrt(t), t / (3 * delta**2) + 4.0 / 29.0)


def _lab_f_inv(t: np.ndarray) -> np.ndarray:
    delta = 6.0 / 29.0
    return np.where(t > delta, t**3, 3 * delta**2 * (t - 4.0 / 29.0))


def srgb_to_lab(plane: FloatPlane) -> FloatPlane:
    rgb = _require_rgb(plane)
    lin = _srgb_gamma_decode(rgb)
    xyz = lin @ _RGB2XYZ.T
    f = _lab_f(xyz / _WHITE_D65)
    l = 116.0 * f[:, :, 1] - 16.0
    a = 500.0 * (f[:, :, 0] - f[:, :, 1])
    b = 200.0 * (f[:, :, 1] - f[:, :, 2])
    return FloatPlane(np.stack([l, a, b], axis=2))


def lab_to_srgb(plane: FloatPlane) -> FloatPlane:
    lab = _require_rgb(plane)
    l, a, b = lab[:, :, 0], lab[:, :, 1], lab[:, :, 2]
    fy = (l + 16.0) / 116.0
    fx = fy + a / 500.0
    fz = fy - b / 200.0
    xyz = np.stack([_lab_f_inv(fx), _lab_f_inv(fy), _lab_f_inv(fz)], axis=2) * _WHITE_D65
    lin = xyz @ _XYZ2RGB.T
    return FloatPlane(np.clip(_srgb_gamma_encode(lin), 0.0, 1.0))


_CONVERTERS = {
    ("sRGB", "Gray"): to_gray,
    ("sRGB", "Lab"): srgb_to_lab,
    ("Lab", "sRGB"): lab_to_srgb,
    ("sRGB", "HSV"): srgb_to_hsv,
    ("HSV", "sRGB"): hsv_to_srgb,
    ("sRGB", "YCbCr"): srgb_to_ycbcr,
    ("YCbCr", "sRGB"): ycbcr_to_srgb,
}


def convert(plane: FloatPlane, src: str, dst: str) -> FloatPlane:
    if src == dst:
        return plane
    try:
        fn = _CONVERTERS[(src, dst)]
    except KeyError:
        raise InvalidInputError(f"no conversion {src} -> {dst}") from None
    return fn(plane)
