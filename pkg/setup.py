import numpy as np
from setuptools import Extension, setup

# The compiled kernels are optional: if Cython is unavailable the package
# falls back to the pure-numpy implementation at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "kanhead._kernels",
                ["src/kanhead/_kernels.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
