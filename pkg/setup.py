import os

from setuptools import setup

ext_modules = []
if not os.environ.get("LIE2KIT_PURE"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("lie2kit._kernels", ["src/lie2kit/_kernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
