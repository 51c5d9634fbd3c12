"""Build hook for the optional compiled kernel.

The package is pure Python plus one Cython speedup module. If Cython (or a
C compiler) is unavailable the extension is skipped and the pure-Python
kernel is used at import time, so `pip install` never hard-fails on the
extension.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/hurwitzchow/_kernel.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"hurwitz-chow: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
