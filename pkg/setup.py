"""Builds the optional compiled kernel core.

The package works without the extension (a numpy fallback is selected at
import time), so a failed build is downgraded to a warning.
"""
import sys

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/mviqa/imgcore/_kernels_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
    include_dirs = [np.get_include()]
except Exception as exc:  # pragma: no cover
    print(f"warning: skipping compiled kernels ({exc})", file=sys.stderr)
    ext_modules = []
    include_dirs = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)
