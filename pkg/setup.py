"""Build the optional compiled kernel.

The package works without it: the pure-Python kernel is selected at import
when ``seqcircuit._ckernel`` is missing. Set SEQCIRCUIT_NO_EXT=1 to skip
the build.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernel not built ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernel not built ({exc})", file=sys.stderr)


ext_modules = []
if not os.environ.get("SEQCIRCUIT_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython missing, pure-Python kernel only", file=sys.stderr)
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "seqcircuit._ckernel",
                    ["src/seqcircuit/_ckernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
