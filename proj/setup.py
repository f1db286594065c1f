"""Builds the _dcl extension through the project's CMake tree."""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.extension import Extension


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        out_dir.mkdir(parents=True, exist_ok=True)
        import pybind11

        subprocess.check_call(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DDCL_BUILD_PYTHON=ON",
                "-DDCL_BUILD_TESTS=OFF",
                "-DDCL_BUILD_CLI=OFF",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                f"-DPYTHON_EXECUTABLE={sys.executable}",
            ]
        )
        subprocess.check_call(["cmake", "--build", str(build_dir), "-j2"])
        built = list(build_dir.glob("_dcl*.so"))
        if not built:
            raise RuntimeError("cmake did not produce the _dcl extension")
        shutil.copy2(built[0], Path(self.get_ext_fullpath(ext.name)))


setup(
    ext_modules=[CMakeExtension("dcl._dcl")],
    cmdclass={"build_ext": CMakeBuild},
)
