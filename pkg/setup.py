"""Build script for the optional compiled kernel extension.

The package works without the extension: ``ovalfront._kernels`` falls back
to the NumPy reference implementations when the compiled module is absent,
so the extension is marked optional and a failed compile is not fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ovalfront._kernels._native",
                ["src/ovalfront/_kernels/_native.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    # no Cython / numpy at build time: install as pure Python
    pass

setup(ext_modules=ext_modules)
