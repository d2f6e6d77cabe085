from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# the compiled kernel is optional; qpd.kernel falls back to pure Python
ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [Extension("qpd._kernel", ["src/qpd/_kernel.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
