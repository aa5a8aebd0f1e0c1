"""Build script for the optional compiled Jacobi kernel.

The package works without the extension: ``fockwitness.jacobi`` falls back to
a pure numpy implementation when ``fockwitness._jacobi_cy`` is missing, so the
extension is marked optional and a failed compile does not break the install.
"""

from setuptools import Extension, setup

import numpy as np

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "fockwitness._jacobi_cy",
                ["src/fockwitness/_jacobi_cy.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
