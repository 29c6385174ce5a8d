"""Build script: compiles the optional Cython kernel.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so any failure here degrades to a
warning instead of aborting the install.  Set HYPERCOMPLEX_NO_EXT=1 to
skip the extension build entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # missing compiler, broken toolchain, ...
            print(
                f"WARNING: building {ext.name} failed ({exc}); "
                "falling back to the pure-Python kernel",
                file=sys.stderr,
            )


ext_modules = []
if not os.environ.get("HYPERCOMPLEX_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("hypercomplex._kernels", ["src/hypercomplex/_kernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        print("WARNING: Cython not available; skipping compiled kernel", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
