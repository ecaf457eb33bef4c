"""Build shim: compiles the optional speed kernels when Cython is available.

`pip install -e . --no-build-isolation` builds latcolor.kernels._speed in
place; without Cython (or with LATCOLOR_PURE=1) the package installs fine and
falls back to the numpy backend at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("LATCOLOR_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/latcolor/kernels/_speed.pyx"], language_level="3"
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
