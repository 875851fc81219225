"""Build script for the optional compiled GF(2) kernel.

The package works without the extension (a pure-Python fallback is
selected at import time), so a missing compiler or Cython only costs
speed, not functionality.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "tophom._gf2core",
                sources=["src/tophom/_gf2core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
