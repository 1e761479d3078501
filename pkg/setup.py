"""Build the optional Cython kernels.

Both extensions are optional: if Cython or a C compiler is missing the
package still installs and falls back to the pure-Python kernels.
"""
import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping compiled kernels ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc})", file=sys.stderr)


def extensions():
    if os.environ.get("POLYADD_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    # Error-free transforms rely on every product being rounded separately.
    flags = ["-O2", "-ffp-contract=off", "-fno-fast-math"]
    exts = [
        Extension("polyadd._polygamma_ext", ["src/polyadd/_polygamma_ext.pyx"],
                  extra_compile_args=flags),
        Extension("polyadd._oracle_ext", ["src/polyadd/_oracle_ext.pyx"],
                  extra_compile_args=flags),
    ]
    return cythonize(exts, language_level=3,
                     compiler_directives={"boundscheck": False, "wraparound": False})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
