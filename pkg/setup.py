#!/usr/bin/env python

"""
Setup script for arcverb.

Defines the package metadata, dependencies, and the console entry point for
the arcverb command-line tool.
"""

from setuptools import find_packages, setup

setup(
    name="arcverb",
    version="0.1.0",
    description="Measures on unions of arcs, Carathéodory functions on the double, "
                "and their Schur/Verblunsky parameters",
    author="arcverb Development Team",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    entry_points={
        "console_scripts": [
            "arcverb=arcverb.cli:main",
        ],
    },
    install_requires=[
        "numpy",
        "scipy",
        "matplotlib",
        "tqdm",
        "h5py",
        "PyYAML",
    ],
    python_requires=">=3.8",
)
