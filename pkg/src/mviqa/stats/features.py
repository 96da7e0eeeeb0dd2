"""Low-level image features: luminance, contrast, chrominance, blur, SI."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..imgcore import color, kernels
from ..imgcore.buffer import ImageBuf

_LAPLACIAN = np.array([[0.0, 1.0, 0.0], [1.0, -4.0, 1.0], [0.0, 1.0, 0.0]])
_SOBEL_X = np.array([[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]])
_SOBEL_Y = _SOBEL_X.T


@dataclass(frozen=True)
class FeatureProfile:
    luminance: float
    contrast: float
    chrominance: float
    blur: float
    spatial_information: float


def features(img: ImageBuf) -> FeatureProfile:
    """Five scalar proxies on the 0..255 sample scale.

    blur is the variance of the Laplacian response: lower means blurrier
    (inverted orientation)."""
    plane = img.to_float()
    if img.channels == 3:
        gray = color.to_gray(plane).data[:, :, 0]
        lab = color.srgb_to_lab(plane).data
        chroma = float(np.mean(np.hypot(lab[:, :, 1], lab[:, :, 2])))
    else:
        gray = plane.data[:, :, 0]
        chroma = 0.0
    gray255 = np.ascontiguousarray(gray * 255.0)
    lap = kernels.convolve2d(gray255, _LAPLACIAN)
    gx = kernels.convolve2d(gray255, _SOBEL_X)
    gy = kernels.convolve2d(gray255, _SOBEL_Y)
    return FeatureProfile(
        luminance=float(gray255.mean()),
        contrast=float(gray255.std()),
        chrominance=chroma,
        blur=float(lap.var()),
        spatial_information=float(np.hypot(gx, gy).std()),
    )
