"""Build script: compiles the closure kernel when Cython is available.

The package is fully functional without the extension; `finstream._kernels`
falls back to the pure-Python kernel at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "finstream._kernels._closure_cy",
                ["src/finstream/_kernels/_closure_cy.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
