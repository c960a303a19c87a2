"""Builds the optional compiled normal-form kernel.  The package works
without it: latmod.kernels falls back to the pure-Python twin."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/latmod/_hnf_c.pyx"],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
