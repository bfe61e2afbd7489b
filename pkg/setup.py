#!/usr/bin/env python3

from setuptools import setup

import peakpack

setup(
    name=peakpack.__project__,
    version=peakpack.__version__,
    author="The peakpack developers",
    license="BSD-2-Clause",
    description="Peak demand minimization for non-preemptive jobs",
    long_description="See README.md",
    python_requires=">=3.6",
    entry_points={
        "console_scripts": ["peakpack = peakpack.__main__:main"],
    },
    packages=[
        "peakpack",
    ],
    install_requires=[
        "appdirs",
        "click>=7.0,<8",
        "svgwrite",
        "texttable",
    ],
    tests_requires=[
        "coverage",
        "hypothesis",
        "isort",
        "mccabe",
        "mypy",
        "pycodestyle",
        "pyflakes",
        "pylint",
        "pylint-quotes",
        "yapf",
    ],
    classifiers=[
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.6",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Utilities",
    ],
)
