import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PLANAR_VACUUM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "planar_vacuum._kernels",
                    ["src/planar_vacuum/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                    libraries=["m"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
