"""Lossy codec round-trips behind a pluggable backend interface."""
from __future__ import annotations

import io

import numpy as np

from ..imgcore.buffer import ImageBuf


class CodecUnavailableError(RuntimeError):
    """The requested codec backend is not present; never falls back silently."""


class PillowCodec:
    """Encode/decode through Pillow. One instance per format."""

    def __init__(self, fmt: str):
        self.fmt = fmt

    def available(self) -> bool:
        from PIL import features

        probe = {"JPEG": "jpg", "WEBP": "webp", "JPEG2000": "jpg_2000"}[self.fmt]
        return bool(features.check(probe))

    def roundtrip(self, img: ImageBuf, **save_kwargs) -> ImageBuf:
        from PIL import Image

        if not self.available():
            raise CodecUnavailableError(f"codec backend for {self.fmt} unavailable")
        arr = img.data
        mode = "L" if arr.shape[2] == 1 else "RGB"
        pil = Image.fromarray(arr[:, :, 0] if mode == "L" else arr, mode=mode)
        buf = io.BytesIO()
        pil.save(buf, format=self.fmt, **save_kwargs)
        buf.seek(0)
        with Image.open(buf) as decoded:
            out = np.asarray(decoded.convert(mode), dtype=np.uint8)
        if out.ndim == 2:
            out = out[:, :, None]
        return ImageBuf(out)


_CODECS = {
    "jpeg": PillowCodec("JPEG"),
    "webp": PillowCodec("WEBP"),
    "jp2k": PillowCodec("JPEG2000"),
}


def get_codec(name: str) -> PillowCodec:
    try:
        return _CODECS[name]
    except KeyError:
        raise CodecUnavailableError(f"unknown codec {name!r}") from None


def register_codec(name: str, codec) -> None:
    """Swap in an alternative backend (e.g. an external encoder)."""
    _CODECS[name] = codec
