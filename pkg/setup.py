# -*- coding:utf-8 -*-

#  ************************** Copyrights and license ***************************
#
# This file is part of chattertda 1.0+master, a topological chatter classifier
# for simulated turning processes.
#
# _____________________________________________________________________________
#
# Copyright (c) 2023 the chattertda authors
#
# This software is distributed under the 3-clause BSD License.
# For more information, see the README.rst file.
#
# ****************************************************************************

"""
Script to generate the installer for chattertda.
"""

from runpy import run_path
from setuptools import setup, find_packages
from os import path


version = run_path("./chattertda/version.py")["__version__"]
# read the contents of your README file
this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, "README.rst"), encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="chattertda",
    version=version,
    long_description=long_description,
    long_description_content_type="text/x-rst",
    platforms=["any"],
    python_requires=">=3.8",
    packages=find_packages(include=["chattertda*"], exclude=["chattertda.tests"]),
    install_requires=["jinja2", "lxml", "numpy>=1.20", "scipy>=1.6"],
    package_data={
        "chattertda": [
            "formats/html/*/*.css",
            "formats/html/*/*.html",
        ],
    },
    entry_points={
        "console_scripts": [
            "chattertda=chattertda.__main__:main",
        ],
    },
)
