"""Build script.

Tries to compile the Cython kernel for the hot monomial/element multiply
loops.  If Cython or a C compiler is unavailable the install falls back to
the pure-Python kernel (`dualsteenrod._kernel_py`); the package selects the
backend at import time, so everything works either way.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "dualsteenrod._kernel",
                ["src/dualsteenrod/_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"Cython kernel not built ({exc}); using pure-Python backend")

setup(ext_modules=ext_modules)
