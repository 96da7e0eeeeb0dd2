"""The 30 corruption synthesizers.

Every synthesizer maps an 8-bit image to an 8-bit image of the same
dimensions; all intermediate math runs in float64 and quantizes once at
the end. Stochastic kinds draw only from the spec seed, so apply() is a
pure function of (pixels, spec, schedule).
"""
from __future__ import annotations

import numpy as np

from ..imgcore import color, kernels, ops
from ..imgcore.buffer import FloatPlane, ImageBuf
from .codecs import get_codec
from .kinds import CorruptionKind, CorruptionSpec
from .schedule import ParamSchedule


def _rng_for(spec: CorruptionSpec) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(spec.seed))


def _blur(x: np.ndarray, sigma: float) -> np.ndarray:
    return ops.gaussian_blur(FloatPlane(x), sigma).data


def _clip01(x: np.ndarray) -> np.ndarray:
    return np.clip(x, 0.0, 1.0)


# --- blur family -----------------------------------------------------------


def _gaussian_filter(x, p, rng):
    return _blur(x, p["sigma"])


def _lens_blur(x, p, rng):
    return ops.convolve(FloatPlane(x), ops.disk_kernel(p["radius"])).data


def _motion_blur(x, p, rng):
    return ops.convolve(FloatPlane(x), ops.line_kernel(int(p["length"]), p["angle"])).data


# --- chrominance -----------------------------------------------------------


def _color_diffusion(x, p, rng):
    lab = color.srgb_to_lab(FloatPlane(x)).data
    lab[:, :, 1] = _blur(lab[:, :, 1:2], p["sigma"])[:, :, 0]
    lab[:, :, 2] = _blur(lab[:, :, 2:3], p["sigma"])[:, :, 0]
    return color.lab_to_srgb(FloatPlane(lab)).data


def _color_shift(x, p, rng):
    h, w = x.shape[:2]
    angle = rng.uniform(0.0, 2.0 * np.pi)
    dy, dx = p["offset"] * np.sin(angle), p["offset"] * np.cos(angle)
    yy, xx = np.meshgrid(np.arange(h, dtype=np.float64), np.arange(w, dtype=np.float64), indexing="ij")
    out = x.copy()
    green = np.ascontiguousarray(x[:, :, 1])
    out[:, :, 1] = kernels.warp_bilinear(green, np.ascontiguousarray(yy - dy), np.ascontiguousarray(xx - dx))
    return out


def _color_quantization(x, p, rng):
    n = int(p["levels"])
    q = np.minimum(np.floor(x * n), n - 1)
    return (q + 0.5) / n


# --- saturation / contrast -------------------------------------------------


def _hsv_saturation(x, p, rng):
    hsv = color.srgb_to_hsv(FloatPlane(x)).data
    hsv[:, :, 1] *= p["factor"]
    return color.hsv_to_srgb(FloatPlane(hsv)).data


def _lab_saturation(x, p, rng):
    lab = color.srgb_to_lab(FloatPlane(x)).data
    lab[:, :, 1] *= p["factor"]
    lab[:, :, 2] *= p["factor"]
    return color.lab_to_srgb(FloatPlane(lab)).data


def _sharpness_change(x, p, rng):
    return _clip01(x + p["amount"] * (x - _blur(x, p["sigma"])))


def _contrast_change(x, p, rng):
    g = p["gain"]

    def sig(v):
        return 1.0 / (1.0 + np.exp(-g * (v - 0.5)))

    lo, hi = sig(0.0), sig(1.0)
    return (sig(x) - lo) / (hi - lo)


# --- compression -----------------------------------------------------------


def _jpeg(img: ImageBuf, p) -> ImageBuf:
    return get_codec("jpeg").roundtrip(img, quality=int(p["quality"]))


def _webp(img: ImageBuf, p) -> ImageBuf:
    return get_codec("webp").roundtrip(img, quality=int(p["quality"]))


def _jp2k(img: ImageBuf, p) -> ImageBuf:
    return get_codec("jp2k").roundtrip(
        img, quality_mode="rates", quality_layers=[float(p["ratio"])], irreversible=True
    )


# --- noise -----------------------------------------------------------------


def _white_noise(x, p, rng):
    return _clip01(x + rng.normal(0.0, p["sigma"], x.shape))


def _color_noise(x, p, rng):
    ycc = color.srgb_to_ycbcr(FloatPlane(x)).data
    s = p["sigma"]
    ycc[:, :, 0] += rng.normal(0.0, 0.5 * s, ycc.shape[:2])
    ycc[:, :, 1] += rng.normal(0.0, s, ycc.shape[:2])
    ycc[:, :, 2] += rng.normal(0.0, s, ycc.shape[:2])
    return color.ycbcr_to_srgb(FloatPlane(ycc)).data


def _impulse_noise(x, p, rng):
    d = p["density"]
    u = rng.random(x.shape)
    out = np.where(u < d / 2.0, 0.0, x)
    return np.where((u >= d / 2.0) & (u < d), 1.0, out)


def _multiplicative_noise(x, p, rng):
    return _clip01(x * (1.0 + rng.normal(0.0, p["sigma"], x.shape)))


def _gaussian_denoise(x, p, rng):
    noisy = _clip01(x + rng.normal(0.0, p["noise_sigma"], x.shape))
    return _blur(noisy, p["blur_sigma"])


def _cnn_denoise(x, p, rng):
    # Stand-in for a learned denoiser: noise injection followed by an
    # edge-preserving smoother. Flagged as denoiser=stand-in in manifests.
    noisy = _clip01(x + rng.normal(0.0, p["noise_sigma"], x.shape))
    r = int(p["radius"])
    out = np.empty_like(noisy)
    for ch in range(noisy.shape[2]):
        out[:, :, ch] = kernels.bilateral(
            np.ascontiguousarray(noisy[:, :, ch]), r, r / 1.5, p["range_sigma"]
        )
    return out


# --- luminance -------------------------------------------------------------


def _max_brighten(x, p, rng):
    mx = x.max()
    return mx - (mx - x) * p["keep"]


def _min_darken(x, p, rng):
    mn = x.min()
    return mn + (x - mn) * p["keep"]


def _mean_brighten(x, p, rng):
    return _clip01(x + p["offset"])


def _mean_darken(x, p, rng):
    return _clip01(x - p["offset"])


def _grayscale_quantization(x, p, rng):
    gray = color.to_gray(FloatPlane(x)) if x.shape[2] == 3 else FloatPlane(x)
    quant = ops.otsu_quantize(gray, int(p["levels"])).data
    return np.repeat(quant, x.shape[2], axis=2)


# --- spatial ---------------------------------------------------------------


def _clock_jittering(x, p, rng):
    h, w = x.shape[:2]
    r = p["radius"]
    yy, xx = np.meshgrid(np.arange(h, dtype=np.float64), np.arange(w, dtype=np.float64), indexing="ij")
    ys = np.ascontiguousarray(yy + rng.uniform(-r, r, (h, w)))
    xs = np.ascontiguousarray(xx + rng.uniform(-r, r, (h, w)))
    out = np.empty_like(x)
    for ch in range(x.shape[2]):
        out[:, :, ch] = kernels.warp_bilinear(np.ascontiguousarray(x[:, :, ch]), ys, xs)
    return out


def _block_grid(shape, block: int):
    h, w = shape[:2]
    b = min(block, h, w)
    coords = [
        (by * b, bx * b) for by in range(h // b) for bx in range(w // b)
    ]
    return b, coords


def _pick_blocks(rng, coords, count):
    count = min(count, len(coords))
    idx = rng.choice(len(coords), size=count, replace=False)
    return [coords[i] for i in idx]


def _block_exchange(x, p, rng, block):
    b, coords = _block_grid(x.shape, block)
    picked = _pick_blocks(rng, coords, 2 * (int(p["count"]) // 2))
    out = x.copy()
    for (ay, ax), (by, bx) in zip(picked[0::2], picked[1::2]):
        tmp = out[ay : ay + b, ax : ax + b].copy()
        out[ay : ay + b, ax : ax + b] = out[by : by + b, bx : bx + b]
        out[by : by + b, bx : bx + b] = tmp
    return out


def _block_lost(x, p, rng, block):
    b, coords = _block_grid(x.shape, block)
    out = x.copy()
    for y0, x0 in _pick_blocks(rng, coords, int(p["count"])):
        out[y0 : y0 + b, x0 : x0 + b] = rng.random((b, b, x.shape[2]))
    return out


def _block_interpolation(x, p, rng, block):
    h, w = x.shape[:2]
    b, coords = _block_grid(x.shape, block)
    out = x.copy()
    ty = ((np.arange(b) + 1.0) / (b + 1.0))[:, None, None]
    tx = ((np.arange(b) + 1.0) / (b + 1.0))[None, :, None]
    for y0, x0 in _pick_blocks(rng, coords, int(p["count"])):
        y1, x1 = y0 + b, x0 + b
        top = x[max(y0 - 1, 0), x0:x1][None, :, :]
        bot = x[min(y1, h - 1), x0:x1][None, :, :]
        left = x[y0:y1, max(x0 - 1, 0)][:, None, :]
        right = x[y0:y1, min(x1, w - 1)][:, None, :]
        vert = (1.0 - ty) * top + ty * bot
        horz = (1.0 - tx) * left + tx * right
        out[y0:y1, x0:x1] = (vert + horz) / 2.0
    return out


def _block_repeat(x, p, rng, block):
    b, coords = _block_grid(x.shape, block)
    out = x.copy()
    box = ops.box_kernel(3)
    for y0, x0 in _pick_blocks(rng, coords, int(p["count"])):
        sub = FloatPlane(np.ascontiguousarray(out[y0 : y0 + b, x0 : x0 + b]))
        sub = ops.convolve(ops.convolve(sub, box), box)
        out[y0 : y0 + b, x0 : x0 + b] = sub.data
    return out


def _resolution_limit(x, p, rng):
    h, w = x.shape[:2]
    s = p["scale"]
    dw, dh = max(1, round(w * s)), max(1, round(h * s))
    small = ops.resize_plane(FloatPlane(x), dw, dh, "bilinear")
    return ops.resize_plane(small, w, h, "bilinear").data


_FLOAT_SYNTH = {
    CorruptionKind.GAUSSIAN_FILTER: _gaussian_filter,
    CorruptionKind.LENS_BLUR: _lens_blur,
    CorruptionKind.MOTION_BLUR: _motion_blur,
    CorruptionKind.COLOR_DIFFUSION: _color_diffusion,
    CorruptionKind.COLOR_SHIFT: _color_shift,
    CorruptionKind.COLOR_QUANTIZATION: _color_quantization,
    CorruptionKind.HSV_SATURATION: _hsv_saturation,
    CorruptionKind.LAB_SATURATION: _lab_saturation,
    CorruptionKind.WHITE_NOISE: _white_noise,
    CorruptionKind.COLOR_NOISE: _color_noise,
    CorruptionKind.IMPULSE_NOISE: _impulse_noise,
    CorruptionKind.MULTIPLICATIVE_NOISE: _multiplicative_noise,
    CorruptionKind.GAUSSIAN_DENOISE: _gaussian_denoise,
    CorruptionKind.CNN_DENOISE: _cnn_denoise,
    CorruptionKind.MAX_BRIGHTEN: _max_brighten,
    CorruptionKind.MIN_DARKEN: _min_darken,
    CorruptionKind.MEAN_BRIGHTEN: _mean_brighten,
    CorruptionKind.MEAN_DARKEN: _mean_darken,
    CorruptionKind.CLOCK_JITTERING: _clock_jittering,
    CorruptionKind.RESOLUTION_LIMIT: _resolution_limit,
    CorruptionKind.GRAYSCALE_QUANTIZATION: _grayscale_quantization,
    CorruptionKind.SHARPNESS_CHANGE: _sharpness_change,
    CorruptionKind.CONTRAST_CHANGE: _contrast_change,
}

_BLOCK_SYNTH = {
    CorruptionKind.BLOCK_EXCHANGE: _block_exchange,
    CorruptionKind.BLOCK_LOST: _block_lost,
    CorruptionKind.BLOCK_INTERPOLATION: _block_interpolation,
    CorruptionKind.BLOCK_REPEAT: _block_repeat,
}

_CODEC_SYNTH = {
    CorruptionKind.JPEG_COMPRESSION: _jpeg,
    CorruptionKind.WEBP_COMPRESSION: _webp,
    CorruptionKind.JP2K_COMPRESSION: _jp2k,
}


def apply(img: ImageBuf, spec: CorruptionSpec, sched: ParamSchedule) -> ImageBuf:
    """Apply one corruption; output has the input's dimensions."""
    p = sched.params(spec)
    if spec.kind in _CODEC_SYNTH:
        return _CODEC_SYNTH[spec.kind](img, p)
    x = img.to_float().data
    rng = _rng_for(spec)
    if spec.kind in _BLOCK_SYNTH:
        out = _BLOCK_SYNTH[spec.kind](x, p, rng, sched.block_size)
    else:
        out = _FLOAT_SYNTH[spec.kind](x, p, rng)
    result = FloatPlane(np.ascontiguousarray(out)).to_image()
    assert result.data.shape == img.data.shape
    return result
