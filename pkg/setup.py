"""Build the optional Cython enforce kernel.

Falls back to a pure-Python install when Cython or a C compiler is missing;
``rcgs.kernels`` then selects ``rcgs._enforce_py`` at import.
"""
import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping Cython kernel ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc})")


extensions = []
if not os.environ.get("RCGS_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [Extension("rcgs._enforce", ["src/rcgs/_enforce.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
