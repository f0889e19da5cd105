import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CAYLEYCOVER_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("cayleycover._tilescan", ["src/cayleycover/_tilescan.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        # no Cython at build time: install pure-Python only, the kernel
        # dispatcher falls back automatically
        ext_modules = []

setup(ext_modules=ext_modules)
