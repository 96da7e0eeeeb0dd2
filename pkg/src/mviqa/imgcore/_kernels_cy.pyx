# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Mirrors _kernels_np.py; accumulation order matches
the fallback so both backends agree to the last bit in float64."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, floor

cnp.import_array()


cdef inline Py_ssize_t _clamp(Py_ssize_t v, Py_ssize_t lo, Py_ssize_t hi) nogil:
    if v < lo:
        return lo
    if v > hi:
        return hi
    return v


def convolve2d(double[:, :] src, double[:, :] kernel):
    cdef Py_ssize_t h = src.shape[0], w = src.shape[1]
    cdef Py_ssize_t kh = kernel.shape[0], kw = kernel.shape[1]
    cdef Py_ssize_t cy = kh // 2, cx = kw // 2
    out_arr = np.zeros((h, w), dtype=np.float64)
    cdef double[:, :] out = out_arr
    cdef Py_ssize_t i, j, y, x, sy, sx
    cdef double k
    with nogil:
        for i in range(kh):
            for j in range(kw):
                k = kernel[i, j]
                if k == 0.0:
                    continue
                for y in range(h):
                    sy = _clamp(y + i - cy, 0, h - 1)
                    for x in range(w):
                        sx = _clamp(x + j - cx, 0, w - 1)
                        out[y, x] = out[y, x] + k * src[sy, sx]
    return out_arr


def warp_bilinear(double[:, :] src, double[:, :] ys, double[:, :] xs):
    cdef Py_ssize_t h = src.shape[0], w = src.shape[1]
    cdef Py_ssize_t oh = ys.shape[0], ow = ys.shape[1]
    out_arr = np.zeros((oh, ow), dtype=np.float64)
    cdef double[:, :] out = out_arr
    cdef Py_ssize_t y, x, y0, x0, y1, x1
    cdef double yc, xc, fy, fx, a, b, c, d
    with nogil:
        for y in range(oh):
            for x in range(ow):
                yc = ys[y, x]
                xc = xs[y, x]
                if yc < 0.0:
                    yc = 0.0
                if yc > h - 1:
                    yc = h - 1
                if xc < 0.0:
                    xc = 0.0
                if xc > w - 1:
                    xc = w - 1
                y0 = <Py_ssize_t>floor(yc)
                x0 = <Py_ssize_t>floor(xc)
                y1 = y0 + 1 if y0 + 1 < h - 1 else h - 1
                x1 = x0 + 1 if x0 + 1 < w - 1 else w - 1
                fy = yc - y0
                fx = xc - x0
                a = src[y0, x0]
                b = src[y0, x1]
                c = src[y1, x0]
                d = src[y1, x1]
                out[y, x] = (1.0 - fy) * ((1.0 - fx) * a + fx * b) + fy * ((1.0 - fx) * c + fx * d)
    return out_arr


def bilateral(double[:, :] src, Py_ssize_t radius, double sigma_s, double sigma_r):
    cdef Py_ssize_t h = src.shape[0], w = src.shape[1]
    cdef double inv_2ss = 1.0 / (2.0 * sigma_s * sigma_s)
    cdef double inv_2sr = 1.0 / (2.0 * sigma_r * sigma_r)
    acc_arr = np.zeros((h, w), dtype=np.float64)
    wsum_arr = np.zeros((h, w), dtype=np.float64)
    cdef double[:, :] acc = acc_arr
    cdef double[:, :] wsum = wsum_arr
    cdef Py_ssize_t dy, dx, y, x, sy, sx
    cdef double sw, val, diff, wgt
    with nogil:
        for dy in range(-radius, radius + 1):
            for dx in range(-radius, radius + 1):
                sw = exp(-(dy * dy + dx * dx) * inv_2ss)
                for y in range(h):
                    sy = _clamp(y + dy, 0, h - 1)
                    for x in range(w):
                        sx = _clamp(x + dx, 0, w - 1)
                        val = src[sy, sx]
                        diff = val - src[y, x]
                        wgt = sw * exp(-(diff * diff) * inv_2sr)
                        acc[y, x] = acc[y, x] + wgt * val
                        wsum[y, x] = wsum[y, x] + wgt
    return acc_arr / wsum_arr
