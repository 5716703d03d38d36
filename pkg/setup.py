"""Build the optional compiled kernels; the package works without them."""

import os
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("REBALANCE_NO_EXT", "") in ("", "0"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        compile_args = [] if sys.platform == "win32" else ["-O3", "-ffp-contract=off"]
        ext_modules = cythonize(
            [
                Extension(
                    "rebalance._kernels",
                    ["src/rebalance/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=compile_args,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
