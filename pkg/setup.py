import os

from setuptools import setup

# The compiled kernels are an optional speedup; the package runs on the pure
# Python fallback whenever the extension is unavailable (no compiler, or
# POWERPOLY_NO_EXT=1).
ext_modules = None
if not os.environ.get("POWERPOLY_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/powerpoly/_kernels_cy.pyx"],
            language_level=3,
        )
    except ImportError:
        ext_modules = None

setup(ext_modules=ext_modules)
