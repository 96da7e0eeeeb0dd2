"""The 30 corruption kinds and their seven-family category tags."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Category(str, Enum):
    BLUR = "Blur"
    LUMINANCE = "Luminance"
    CHROMINANCE = "Chrominance"
    CONTRAST = "Contrast"
    NOISE = "Noise"
    COMPRESSION = "Compression"
    SPATIAL = "Spatial"


class CorruptionKind(str, Enum):
    GAUSSIAN_FILTER = "GaussianFilter"
    LENS_BLUR = "LensBlur"
    MOTION_BLUR = "MotionBlur"
    COLOR_DIFFUSION = "ColorDiffusion"
    COLOR_SHIFT = "ColorShift"
    COLOR_QUANTIZATION = "ColorQuantization"
    HSV_SATURATION = "HsvSaturation"
    LAB_SATURATION = "LabSaturation"
    JP2K_COMPRESSION = "Jp2kCompression"
    JPEG_COMPRESSION = "JpegCompression"
    WEBP_COMPRESSION = "WebpCompression"
    WHITE_NOISE = "WhiteNoise"
    COLOR_NOISE = "ColorNoise"
    IMPULSE_NOISE = "ImpulseNoise"
    MULTIPLICATIVE_NOISE = "MultiplicativeNoise"
    GAUSSIAN_DENOISE = "GaussianDenoise"
    CNN_DENOISE = "CnnDenoise"
    MAX_BRIGHTEN = "MaxBrighten"
    MIN_DARKEN = "MinDarken"
    MEAN_BRIGHTEN = "MeanBrighten"
    MEAN_DARKEN = "MeanDarken"
    CLOCK_JITTERING = "ClockJittering"
    BLOCK_EXCHANGE = "BlockExchange"
    BLOCK_LOST = "BlockLost"
    BLOCK_INTERPOLATION = "BlockInterpolation"
    BLOCK_REPEAT = "BlockRepeat"
    RESOLUTION_LIMIT = "ResolutionLimit"
    GRAYSCALE_QUANTIZATION = "GrayscaleQuantization"
    SHARPNESS_CHANGE = "SharpnessChange"
    CONTRAST_CHANGE = "ContrastChange"


CATEGORY: dict[CorruptionKind, Category] = {
    CorruptionKind.GAUSSIAN_FILTER: Category.BLUR,
    CorruptionKind.LENS_BLUR: Category.BLUR,
    CorruptionKind.MOTION_BLUR: Category.BLUR,
    CorruptionKind.COLOR_DIFFUSION: Category.CHROMINANCE,
    CorruptionKind.COLOR_SHIFT: Category.CHROMINANCE,
    CorruptionKind.COLOR_QUANTIZATION: Category.CHROMINANCE,
    CorruptionKind.HSV_SATURATION: Category.CONTRAST,
    CorruptionKind.LAB_SATURATION: Category.CONTRAST,
    CorruptionKind.JP2K_COMPRESSION: Category.COMPRESSION,
    CorruptionKind.JPEG_COMPRESSION: Category.COMPRESSION,
    CorruptionKind.WEBP_COMPRESSION: Category.COMPRESSION,
    CorruptionKind.WHITE_NOISE: Category.NOISE,
    CorruptionKind.COLOR_NOISE: Category.NOISE,
    CorruptionKind.IMPULSE_NOISE: Category.NOISE,
    CorruptionKind.MULTIPLICATIVE_NOISE: Category.NOISE,
    CorruptionKind.GAUSSIAN_DENOISE: Category.NOISE,
    CorruptionKind.CNN_DENOISE: Category.NOISE,
    CorruptionKind.MAX_BRIGHTEN: Category.LUMINANCE,
    CorruptionKind.MIN_DARKEN: Category.LUMINANCE,
    CorruptionKind.MEAN_BRIGHTEN: Category.LUMINANCE,
    CorruptionKind.MEAN_DARKEN: Category.LUMINANCE,
    CorruptionKind.CLOCK_JITTERING: Category.SPATIAL,
    CorruptionKind.BLOCK_EXCHANGE: Category.SPATIAL,
    CorruptionKind.BLOCK_LOST: Category.SPATIAL,
    CorruptionKind.BLOCK_INTERPOLATION: Category.SPATIAL,
    CorruptionKind.BLOCK_REPEAT: Category.SPATIAL,
    CorruptionKind.RESOLUTION_LIMIT: Category.SPATIAL,
    CorruptionKind.GRAYSCALE_QUANTIZATION: Category.LUMINANCE,
    CorruptionKind.SHARPNESS_CHANGE: Category.CONTRAST,
    CorruptionKind.CONTRAST_CHANGE: Category.CONTRAST,
}

# Kinds whose output depends on the spec seed.
STOCHASTIC_KINDS = frozenset(
    {
        CorruptionKind.COLOR_SHIFT,
        CorruptionKind.WHITE_NOISE,
        CorruptionKind.COLOR_NOISE,
        CorruptionKind.IMPULSE_NOISE,
        CorruptionKind.MULTIPLICATIVE_NOISE,
        CorruptionKind.GAUSSIAN_DENOISE,
        CorruptionKind.CNN_DENOISE,
        CorruptionKind.CLOCK_JITTERING,
        CorruptionKind.BLOCK_EXCHANGE,
        CorruptionKind.BLOCK_LOST,
        CorruptionKind.BLOCK_INTERPOLATION,
        CorruptionKind.BLOCK_REPEAT,
    }
)


@dataclass(frozen=True)
class CorruptionSpec:
    """Fully determines one distortion: kind, severity level 1..5, seed."""

    kind: CorruptionKind
    level: int
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.level <= 5:
            raise ValueError(f"level must be in [1,5], got {self.level}")
