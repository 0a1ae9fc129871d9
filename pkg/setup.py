"""Build script: compiles the optional Cython normal-form kernel.

If Cython or a C compiler is unavailable the extension is skipped and the
package falls back to the pure-Python kernel at import time (see
fpmod.backend); installation never fails on that account.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/fpmod/_snf_cy.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
