from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [
            Extension(
                "monoidboundary._kernel_c",
                ["src/monoidboundary/_kernel_c.pyx"],
                language="c++",
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
)
