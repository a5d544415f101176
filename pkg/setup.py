"""Build script for the optional compiled GF(2) kernel.

The package works without the extension: ``nilgrowth.gf2`` falls back to a
pure-Python big-integer implementation when ``nilgrowth._gf2core`` is missing.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "nilgrowth._gf2core",
                sources=["src/nilgrowth/_gf2core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
