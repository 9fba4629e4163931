"""Build script: compiles the optional solver kernel extension.

The compiled extension (linkgame._kernel) accelerates the game-tree
sweeps.  If Cython or a C compiler is unavailable the build degrades to
the pure-Python backend (linkgame._kernel_py), which is selected at
import time by linkgame.kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("linkgame._kernel", ["src/linkgame/_kernel.pyx"],
                   language="c++")],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    import sys

    sys.stderr.write(f"linkgame: skipping compiled kernel ({exc})\n")
    ext_modules = []

setup(ext_modules=ext_modules)
