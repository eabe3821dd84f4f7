"""Build script for the optional compiled edit-distance kernel.

The package is fully functional without the extension; the pure-Python
kernel in review_diffusion.similarity._astar_py is selected at import
time when the compiled module is absent. Set REVIEW_DIFFUSION_NO_EXT=1
to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("REVIEW_DIFFUSION_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "review_diffusion.similarity._astar",
                    ["src/review_diffusion/similarity/_astar.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
