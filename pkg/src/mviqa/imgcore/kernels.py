"""Kernel backend selection.

The compiled extension is preferred when present; set MVIQA_KERNELS=python
to force the numpy fallback (e.g. for the backend-parity benchmark).
"""
from __future__ import annotations

import os

from . import _kernels_np

_forced = os.environ.get("MVIQA_KERNELS", "auto").lower()

if _forced == "python":
    _impl = _kernels_np
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        if _forced == "cython":
            raise
        _impl = _kernels_np

BACKEND: str = "cython" if _impl is not _kernels_np else "python"

convolve2d = _impl.convolve2d
warp_bilinear = _impl.warp_bilinear
bilateral = _impl.bilateral
