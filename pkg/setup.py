"""Build script: compiles the optional speedup extension when Cython and a
C compiler are available.  The package works without it (pure-Python
fallback is selected at import time)."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("taxman._core._kernels", ["src/taxman/_core/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
