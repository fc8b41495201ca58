"""Build script: compiles the optional Cython kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed compile is not fatal for development installs.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("mkzmoments._speedups", ["src/mkzmoments/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
