"""Build script for the optional compiled kernel.

The package works without the extension (a numpy reference implementation is
selected at import time), so failure to compile is not fatal for development
checkouts: run ``pip install -e . --no-build-isolation`` to build it.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "ringvar._kernels._compiled",
                ["src/ringvar/_kernels/_compiled.pyx"],
            )
        ],
        language_level=3,
    )
else:
    extensions = []

setup(ext_modules=extensions)
