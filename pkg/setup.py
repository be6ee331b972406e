from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; kgmakarov.tridiag falls back to LAPACK
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("kgmakarov._sturm", ["src/kgmakarov/_sturm.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
