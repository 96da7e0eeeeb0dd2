"""8-bit image buffers and floating-point working planes."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image


class InvalidInputError(ValueError):
    """Raised when an operation receives inputs outside its contract."""


@dataclass(frozen=True)
class ImageBuf:
    """Row-major 8-bit image, sRGB interpretation for 3 channels.

    data has shape (height, width, channels), dtype uint8.
    """

    data: np.ndarray

    def __post_init__(self):
        d = self.data
        if d.dtype != np.uint8:
            raise InvalidInputError(f"ImageBuf requires uint8 data, got {d.dtype}")
        if d.ndim != 3 or d.shape[2] not in (1, 3):
            raise InvalidInputError(f"ImageBuf requires (h, w, 1|3) shape, got {d.shape}")
        if d.shape[0] < 1 or d.shape[1] < 1:
            raise InvalidInputError("ImageBuf dimensions must be positive")

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    def to_float(self) -> "FloatPlane":
        """Working-space copy scaled to [0, 1]."""
        return FloatPlane(self.data.astype(np.float64) / 255.0)


@dataclass(frozen=True)
class FloatPlane:
    """Floating working space for color conversions and filtering.

    data has shape (height, width, channels), dtype float64. Values are
    finite but not range-restricted; the interpretation (RGB in [0,1],
    Lab, HSV, ...) is carried by the caller.
    """

    data: np.ndarray

    def __post_init__(self):
        d = self.data
        if d.dtype != np.float64:
            raise InvalidInputError(f"FloatPlane requires float64 data, got {d.dtype}")
        if d.ndim != 3:
            raise InvalidInputError(f"FloatPlane requires (h, w, c) shape, got {d.shape}")
        if not np.all(np.isfinite(d)):
            raise InvalidInputError("FloatPlane must contain finite values only")

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    def to_image(self) -> ImageBuf:
        """Quantize [0,1] samples to 8 bits, round half away from zero."""
        return ImageBuf(quantize_u8(self.data))


def quantize_u8(x: np.ndarray) -> np.ndarray:
    """Map [0,1] floats to uint8 with round-half-away-from-zero."""
    scaled = np.clip(x, 0.0, 1.0) * 255.0
    return np.floor(scaled + 0.5).astype(np.uint8)


def load_image(path: str | Path) -> ImageBuf:
    with Image.open(path) as im:
        if im.mode == "L":
            arr = np.asarray(im, dtype=np.uint8)[:, :, None]
        else:
            arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    return ImageBuf(arr)


def save_image(img: ImageBuf, path: str | Path) -> None:
    arr = img.data
    if arr.shape[2] == 1:
        Image.fromarray(arr[:, :, 0], mode="L").save(path)
    else:
        Image.fromarray(arr, mode="RGB").save(path)
