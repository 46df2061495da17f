"""Build script: compiles the optional quadrature-kernel extension.

The package is fully functional without the extension (a NumPy fallback is
selected at import time); any failure to build it therefore degrades to a
pure-Python install instead of aborting.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extensions():
    if os.environ.get("DIRCAP_PURE_PYTHON"):
        return []
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        sys.stderr.write("Cython not available; building without compiled kernels\n")
        return []
    ext = Extension(
        "dircap._kernels._fast",
        sources=["src/dircap/_kernels/_fast.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": 3,
        },
    )


class optional_build_ext(build_ext):
    """Swallow compiler failures so the pure-Python install still works."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            sys.stderr.write(f"compiled kernels skipped: {exc}\n")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            sys.stderr.write(f"compiled kernels skipped: {exc}\n")


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
