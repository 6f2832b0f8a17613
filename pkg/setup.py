from setuptools import Extension, setup

# The compiled kernels are optional: covpkit falls back to the pure-Python
# implementation at import time when the extension is missing.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "covpkit._kernels._fastkernels",
                ["src/covpkit/_kernels/_fastkernels.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
