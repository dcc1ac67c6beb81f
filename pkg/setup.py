"""Build script: compiles the optional fast kernel when Cython is available.

The package works without the extension (a pure-Python kernel is selected at
import time), so any build failure here degrades gracefully.
"""

from setuptools import Extension, setup

extensions = []
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("framex._fastkernel", ["src/framex/_fastkernel.pyx"])],
        compiler_directives={"language_level": 3, "boundscheck": False},
    )
except ImportError:
    pass

setup(ext_modules=extensions)
