from .buffer import FloatPlane, ImageBuf, InvalidInputError, load_image, quantize_u8, save_image
from .kernels import BACKEND
from .ops import (
    Kernel2D,
    box_kernel,
    convolve,
    disk_kernel,
    gaussian_blur,
    gaussian_kernel,
    line_kernel,
    otsu_quantize,
    otsu_thresholds,
    psnr,
    resize,
    resize_plane,
)
from . import color

__all__ = [
    "BACKEND",
    "FloatPlane",
    "ImageBuf",
    "InvalidInputError",
    "Kernel2D",
    "box_kernel",
    "color",
    "convolve",
    "disk_kernel",
    "gaussian_blur",
    "gaussian_kernel",
    "line_kernel",
    "load_image",
    "otsu_quantize",
    "otsu_thresholds",
    "psnr",
    "quantize_u8",
    "resize",
    "resize_plane",
    "save_image",
]
