import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("KOENIG_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        import gmpy2

        inc = os.path.dirname(gmpy2.__file__)
        ext_modules = cythonize(
            [Extension("koenig._kernels", ["src/koenig/_kernels.pyx"],
                       include_dirs=[inc], libraries=["gmp"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
