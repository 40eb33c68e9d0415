import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("IMPLICITKIT_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:  # build without the compiled kernels
        pass
    else:
        ext_modules = cythonize(
            [Extension(
                "implicitkit._kernels",
                ["src/implicitkit/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
