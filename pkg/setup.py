import os

from setuptools import setup

ext_modules = []
if os.environ.get("SNAPSTREAM_PURE") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        # Cython absent: the package falls back to the pure-Python kernels.
        pass
    else:
        ext_modules = cythonize(
            ["src/snapstream/_ckernels.pyx"],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
