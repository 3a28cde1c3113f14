"""Extension build: compiles the C++ core plus the bindings into
nlhirota._nlhirota.  Static metadata lives in pyproject.toml."""

import glob
import os

from pybind11.setup_helpers import Pybind11Extension, ParallelCompile, build_ext
from setuptools import setup


def eigen_include() -> str:
    env = os.environ.get("EIGEN3_INCLUDE_DIR")
    candidates = [env] if env else []
    candidates += ["/usr/include/eigen3", "/usr/local/include/eigen3"]
    for cand in candidates:
        if cand and os.path.isdir(os.path.join(cand, "Eigen")):
            return cand
    raise RuntimeError(
        "Eigen headers not found; set EIGEN3_INCLUDE_DIR to the directory "
        "containing Eigen/"
    )


sources = sorted(glob.glob("src/*.cpp")) + ["src/python/bindings.cpp"]

ext = Pybind11Extension(
    "nlhirota._nlhirota",
    sources,
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
    extra_compile_args=["-O2"],
)

ParallelCompile("NLH_NUM_BUILD_JOBS").install()

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
