import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BLOCKSENS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "blocksens._kernels._fastcore",
                    ["src/blocksens/_kernels/_fastcore.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        # No Cython: install with the pure-Python kernels only.
        ext_modules = []

setup(ext_modules=ext_modules)
