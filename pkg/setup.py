from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The extension is optional: without it the package falls back to the
# pure-Python kernels at import time.
extensions = [
    Extension(
        "lpsubsel._kernels._native",
        ["src/lpsubsel/_kernels/_native.pyx"],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"})
    if cythonize else [],
)
