from setuptools import setup, Extension
from Cython.Build import cythonize

# optional=True: a failed compile leaves the pure-Python fallback in charge.
ext = Extension(
    "quasiramsey._core",
    ["src/quasiramsey/_core.pyx"],
    include_dirs=["src/quasiramsey"],
    extra_compile_args=["-O3", "-ffp-contract=off"],
    optional=True,
)

setup(
    ext_modules=cythonize([ext], language_level="3"),
)
