"""Build the optional Cython kernel.

If Cython or a C compiler is unavailable the package still installs and
falls back to the numpy kernels in ``betaline._fallback``.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "betaline._kernels",
                ["src/betaline/_kernels.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
