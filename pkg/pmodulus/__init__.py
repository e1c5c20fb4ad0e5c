# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""pmodulus module"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"


import sys
import logging

if "ps1" in dir(sys):
    # configure logging with interactive console
    logging.basicConfig()

import os
project = os.path.basename(os.path.dirname(os.path.abspath(__file__)))
try:
    from ._version import date  # noqa
    from ._version import version, version_info, hexversion, strictversion  # noqa
except ImportError:
    raise RuntimeError("Do NOT use %s from its sources: build it and use the built version" % project)

from . import graphformats as _graphformats

# provide a global graph format API
register = _graphformats.register
factory = _graphformats.factory

# feed the library with all the available formats
_graphformats.register_default_formats()

from .graph import Graph, Density  # noqa
from .families import ConnectingFamily, CutFamily, SpanningTreeFamily, ExplicitFamily, family_factory  # noqa
from .solver import SolverOptions, ModulusProblem, modulus  # noqa
from .opengraph import load_graph, loads_graph, write_graph  # noqa

open_graph = load_graph


def tests():
    """Run the pmodulus test suite."""
    from . import test
    return test.run_tests()
