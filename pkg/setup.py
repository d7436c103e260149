#!/usr/bin/env python
# -*- coding: utf-8 -*-
# This is for setting up libAnyon; see README.rst for details.

"""libAnyon

libAnyon is a Python toolkit for computing with multiplicity-free modular
tensor categories: it verifies their axioms, builds the braid-group
representations they induce on fusion spaces, evaluates link invariants from
braid closures, and analyses contextuality of measurement statistics drawn
from braided projector families.

"""

from setuptools import setup
from setuptools.command.test import test as TestCommand

DOCLINES = (__doc__ or "").split("\n")

exec(open("libanyon/version.py").read())


class Run_TestSuite(TestCommand):
    def run_tests(self):
        import sys

        import pytest

        print("Python version from setup.py is", sys.version_info[0])
        sys.exit(pytest.main(["libanyon/tests"]))


setup(
    name="libanyon",
    version=__version__,
    description="Braid representations, link invariants and contextuality from modular tensor categories",
    long_description="\n".join(DOCLINES[2:]),
    license="BSD 3-clause",
    packages=[
        "libanyon",
        "libanyon.categories",
        "libanyon.contextuality",
        "libanyon.tools",
        "libanyon.utils",
        "libanyon.tests",
        "libanyon.tests.unit_tests",
        "libanyon.tests.unit_tests_logger",
        "libanyon.tests.functionality_tests",
    ],
    package_data={"libanyon.tests.functionality_tests": ["models/*.json", "kcbs.yaml", "kcbs.toml"]},
    install_requires=["numpy", "scipy>=1.6", "networkx", "setuptools", "pydantic<2", "tomli", "pyyaml"],
    # If run tests through setup.py - downloads these but does not install
    tests_require=[
        "pytest>=3.1",
        "pytest-cov>=2.5",
        "pytest-timeout",
    ],
    entry_points={"console_scripts": ["libanyon=libanyon.cli:run"]},
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Natural Language :: English",
        "Operating System :: POSIX :: Linux",
        "Operating System :: Unix",
        "Operating System :: MacOS",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: Implementation :: CPython",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    cmdclass={"test": Run_TestSuite},
)
