"""Build script: compiles the optional simplex kernel extension.

The package is fully functional without the extension (a pure-Python
kernel with identical pivot semantics is selected at import time), so a
missing compiler or Cython only costs speed, never correctness.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CAPTRANS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "captrans.solver._kernel",
                    ["src/captrans/solver/_kernel.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
