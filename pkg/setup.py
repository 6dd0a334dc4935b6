import os

from setuptools import Extension, setup

# The compiled reduction kernel is optional: the package falls back to the
# pure-Python kernel (stablevol._reduction_py) when the extension is absent.
ext_modules = []
if os.environ.get("STABLEVOL_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "stablevol._speedups",
                    ["src/stablevol/_speedups.pyx"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
