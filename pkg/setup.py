import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("GMCLAB_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "gmclab._kernels",
                    ["src/gmclab/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no Cython: the numpy fallback in gmclab._kernels_py is used
        ext_modules = []

setup(ext_modules=ext_modules)
