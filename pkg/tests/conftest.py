import numpy as np
import pytest

from mviqa.imgcore.buffer import ImageBuf


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def make_image(rng):
    def _make(h=48, w=48, channels=3, seed=None):
        r = np.random.default_rng(seed) if seed is not None else rng
        data = r.integers(0, 256, size=(h, w, channels), dtype=np.uint8)
        # embed structure so blur and warp have something to destroy
        data[h // 4: h // 2, w // 4: w // 2] = 200
        data[h // 2: 3 * h // 4, w // 2: 3 * w // 4] = 40
        return ImageBuf(data)

    return _make
