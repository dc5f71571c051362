"""Build script for the optional compiled stepping kernels.

The package is fully functional without the extension: radialou.backend
falls back to the numpy implementation when `radialou._accel` is absent,
so a failed compile only costs speed.
"""

import os

from setuptools import Extension, setup

# no contraction: the compiled kernels must agree with the numpy twin
# bit for bit, and a fused multiply-add would change the rounding
extra_args = ["-O3", "-ffp-contract=off"] if os.name == "posix" else []

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "radialou._accel",
                ["src/radialou/_accel.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=extra_args,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
