"""Build hook for the optional compiled kernels.

The package works without them: ``wsdirac._backend`` falls back to the
numpy/pure-Python implementations when ``wsdirac._core`` is missing.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("WSDIRAC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "wsdirac._core",
                    ["src/wsdirac/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:  # no Cython at build time -> pure-Python install
        ext_modules = []

setup(ext_modules=ext_modules)
