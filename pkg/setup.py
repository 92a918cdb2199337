import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "lscheck._ckernels",
        ["src/lscheck/_ckernels.pyx"],
        include_dirs=[np.get_include()],
        # membership must agree bit-for-bit with the numpy fallback
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
