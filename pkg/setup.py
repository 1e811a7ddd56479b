from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [Extension("spinvdw._kernels", ["src/spinvdw/_kernels.pyx"])],
        language_level=3,
    )
else:
    # Pure-Python install: the package transparently falls back to the
    # numpy kernel in spinvdw._kernels_py.
    ext_modules = []

setup(ext_modules=ext_modules)
