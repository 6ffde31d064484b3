import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

ext_modules = cythonize(
    [Extension("su2pfaff._kernel_ext", ["src/su2pfaff/_kernel_ext.pyx"],
               include_dirs=[np.get_include()],
               define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")])],
    compiler_directives={"language_level": "3"},
)

setup(ext_modules=ext_modules)
