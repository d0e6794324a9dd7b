from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("nldd._dist_cy", ["src/nldd/_dist_cy.pyx"],
                   include_dirs=[numpy.get_include()])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-Python install; the numpy fallback kernels are used at runtime.
    extensions = []

setup(ext_modules=extensions)
