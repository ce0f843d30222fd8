from setuptools import setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        ["src/lmapf/_spacetime_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # The package runs on the pure-Python kernel when the extension is
    # unavailable; see lmapf.spacetime.
    ext_modules = []

setup(ext_modules=ext_modules)
