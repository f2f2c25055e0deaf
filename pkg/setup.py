"""Builds the optional Cython kernels; the package falls back to pure Python
when the extension is missing."""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PACKCOLOR_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        print("Cython/numpy unavailable; installing the pure-Python backend only")
    else:
        ext_modules = cythonize(
            [Extension("packcolor._ckernels", ["src/packcolor/_ckernels.pyx"],
                       include_dirs=[np.get_include()],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
