import warnings

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "neumannwalk._kernel",
        ["src/neumannwalk/_kernel.pyx"],
        # -ffp-contract=off keeps the compiled kernel bit-identical to the
        # numpy fallback (no FMA contraction of a*b+c expressions).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

if cythonize is not None:
    ext_modules = cythonize(
        extensions, compiler_directives={"language_level": "3", "cdivision": False}
    )
else:
    warnings.warn(
        "Cython is not available; building without the compiled kernel. "
        "The pure-Python fallback will be selected at import."
    )
    ext_modules = []

setup(ext_modules=ext_modules)
