from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("kisin._kernel", ["src/kisin/_kernel.pyx"])],
        language_level=3,
    )
except ImportError:
    # The compiled kernel is optional; kisin.kernel falls back to pure Python.
    ext_modules = []

setup(ext_modules=ext_modules)
