#!/usr/bin/env python3
"""Python packaging configuration."""
import os

from setuptools import find_packages, setup


def read_readme():
    """Read and return text of README.md."""
    pwd = os.path.abspath(os.path.dirname(__name__))
    readme_file = os.path.join(pwd, "README.md")
    with open(readme_file, "r", encoding="utf-8") as readme:
        readme_txt = readme.read()

    return readme_txt


INSTALL_REQUIRES = [
    "numpy >= 1.17",
    "scipy >= 1.3",
    "pyyaml >= 5.1",
    "toml == 0.10",
    "pyparsing >= 2, < 3.0.0",
]

setup(
    name="pyqfim",
    version="1.0",
    description=(
        "Quantum Fisher information and spin squeezing of three-qubit"
        " graph and hypergraph states"
    ),
    long_description=read_readme(),
    long_description_content_type="text/markdown",
    author="pyqfim-devs",
    license="GNU General Public License v3 (GPLv3)",
    packages=find_packages(),
    package_data={"pyqfim": ["typo_ledger.yaml"]},
    python_requires=">=3.7",
    install_requires=INSTALL_REQUIRES,
    entry_points={"console_scripts": ["pyqfim=pyqfim.cli:main"]},
    zip_safe=True,
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "Operating System :: POSIX :: Linux",
        "Programming Language :: Python :: 3 :: Only",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
