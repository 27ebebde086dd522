from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # no Cython: package runs on the numpy fallback kernels
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "bosecsi._kernels",
                ["src/bosecsi/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
