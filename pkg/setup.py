"""Build script for the optional compiled search kernel.

The package is pure Python except for ``sharedsched._permsearch_cy``, a
Cython twin of ``sharedsched._permsearch`` used to speed up exhaustive
search.  When Cython or a C compiler is unavailable the extension is
simply skipped and the package falls back to the pure implementation at
import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "sharedsched._permsearch_cy",
                ["src/sharedsched/_permsearch_cy.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
