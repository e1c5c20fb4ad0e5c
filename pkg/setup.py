#!/usr/bin/python
# coding: utf8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

""" Setup script for the pmodulus package """

__author__ = "pmodulus developers"
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"

import sys
import os
import io
import logging

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger("pmodulus.setup")

from setuptools import setup, find_packages, Command

try:
    import sphinx
    import sphinx.cmd.build
except ImportError:
    sphinx = None

PROJECT = "pmodulus"


def get_version():
    """Returns current version number from the _version.py file"""
    dirname = os.path.join(os.path.dirname(os.path.abspath(__file__)), PROJECT)
    sys.path.insert(0, dirname)
    import _version
    sys.path = sys.path[1:]
    return _version.strictversion


def get_readme():
    """Returns content of README.rst file"""
    dirname = os.path.dirname(os.path.abspath(__file__))
    filename = os.path.join(dirname, "README.rst")
    with io.open(filename, "r", encoding="utf-8") as fp:
        long_description = fp.read()
    return long_description


# double check classifiers on https://pypi.org/classifiers/
classifiers = [
    'Development Status :: 4 - Beta',
    'Environment :: Console',
    'Intended Audience :: Developers',
    'Intended Audience :: Science/Research',
    "License :: OSI Approved :: MIT License",
    'Operating System :: OS Independent',
    'Programming Language :: Python :: 3',
    'Topic :: Scientific/Engineering :: Mathematics',
    'Topic :: Software Development :: Libraries :: Python Modules',
]


########
# Test #
########

class PyTest(Command):
    """Command to start tests running the script: run_tests.py"""
    user_options = []

    description = "Execute the unittests"

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        import subprocess
        errno = subprocess.call([sys.executable, 'run_tests.py'])
        if errno != 0:
            raise SystemExit(errno)


# ################### #
# build_doc command   #
# ################### #

class BuildDocCommand(Command):
    """Build the html documentation of doc/source into build/html"""
    user_options = [("builder=", "b", "sphinx builder, html by default")]

    description = "Build the documentation with sphinx"

    def initialize_options(self):
        self.builder = "html"

    def finalize_options(self):
        pass

    def run(self):
        if sphinx is None:
            raise RuntimeError(
                'Sphinx is required to build or test the documentation.\n'
                'Please install Sphinx (http://www.sphinx-doc.org).')
        self.run_command("build")
        build = self.get_finalized_command("build")
        # the documented package is the built one
        sys.path.insert(0, os.path.abspath(build.build_lib))
        dirname = os.path.dirname(os.path.abspath(__file__))
        source = os.path.join(dirname, "doc", "source")
        target = os.path.join(dirname, "build", self.builder)
        errno = sphinx.cmd.build.build_main(["-b", self.builder, source, target])
        sys.path.pop(0)
        if errno != 0:
            raise SystemExit(errno)


# ##### #
# setup #
# ##### #

def get_project_configuration():
    """Returns project arguments for setup"""
    install_requires = [
        # arrays and linear algebra
        "numpy",
        # root finding, sparse solves and the brute-force checks
        "scipy>=1.12",
        # shortest paths, max flow and connectivity
        "networkx>=2.6",
    ]

    extras_require = {"doc": ["sphinx"]}

    console_scripts = [
        'pmodulus = pmodulus.app.modulus:main',
    ]

    entry_points = {
        'console_scripts': console_scripts,
    }

    cmdclass = dict(
        test=PyTest,
        build_doc=BuildDocCommand)

    return dict(name=PROJECT,
                version=get_version(),
                packages=find_packages(include=[PROJECT, PROJECT + ".*"]),
                author="pmodulus developers",
                classifiers=classifiers,
                description='p-modulus of families of objects on weighted graphs',
                long_description=get_readme(),
                python_requires=">=3.8",
                install_requires=install_requires,
                extras_require=extras_require,
                cmdclass=cmdclass,
                zip_safe=False,
                entry_points=entry_points,
                license="MIT",
                )


def setup_package():
    """Run setup(**kwargs)"""
    setup_kwargs = get_project_configuration()
    setup(**setup_kwargs)


if __name__ == "__main__":
    setup_package()
