"""Build script: compiles the optional polynomial kernel extension.

The package is pure Python plus one optional Cython extension
(``delpair._gfpoly_cy``).  If Cython or a C compiler is unavailable the
build falls back to a pure-Python install; ``delpair.kernels`` selects
the backend at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/delpair/_gfpoly_cy.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"delpair: skipping compiled kernel ({exc!r}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
