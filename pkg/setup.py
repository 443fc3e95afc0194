"""Build script: compiles the optional polynomial-kernel accelerator.

The compiled extension is a pure speedup; if the build fails (no compiler,
no Cython) the package still works through the pure-Python kernel, so the
extension is treated as optional. Set HOMLEIB_NO_EXT=1 to skip it entirely.
"""

import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"accelerator build skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"accelerator build skipped for {ext.name}: {exc}")


ext_modules = []
if not os.environ.get("HOMLEIB_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "homleib._kernel._polycore",
                    ["src/homleib/_kernel/_polycore.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        warnings.warn("Cython not available; building without the accelerator")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
