# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""General purpose utilities for pmodulus: exceptions, thread pool helper,
JSON encoding of numpy values and the version banner embedded in reports.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import os
import sys
import json
import time
import logging
import contextlib
import concurrent.futures

import numpy

logger = logging.getLogger(__name__)


class GraphFormatError(ValueError):
    """Raised when a graph or family file can not be decoded.

    :param str msg: human readable message
    :param int lineno: 1-based line number of the faulty record, if known
    :param str field: name of the faulty field, if known
    """

    def __init__(self, msg, lineno=None, field=None):
        self.lineno = lineno
        self.field = field
        where = []
        if lineno is not None:
            where.append("line %d" % lineno)
        if field is not None:
            where.append("field '%s'" % field)
        if where:
            msg = "%s (%s)" % (msg, ", ".join(where))
        ValueError.__init__(self, msg)


class GraphError(ValueError):
    """Precondition violated by a graph (disconnected, directed, a == b...)"""


class EmptyFamilyError(RuntimeError):
    """The family does not contain any object"""


class TrivialFamilyError(ValueError):
    """An object of the family has no positive usage, or refers to an
    unknown edge"""


class GuardExceeded(RuntimeError):
    """An enumeration would exceed its size guard; nothing is truncated"""


class NotConvergedError(RuntimeError):
    """A converged solution was required"""


class UnsupportedFamilyError(RuntimeError):
    """No method is available for this family kind and exponent"""


class StochasticCheckFailed(AssertionError):
    """A Monte Carlo check fell outside its acceptance band"""


class ConfigError(ValueError):
    """Invalid run configuration"""


def parallel_map(func, items, jobs=None):
    """Apply `func` on every item using a bounded thread pool.

    Results come back in the order of `items`, whatever the completion
    order of the workers.

    :param func: callable taking one item
    :param items: iterable of arguments
    :param int jobs: maximum number of workers, defaults to the CPU count.
        1 runs sequentially in the calling thread.
    :rtype: list
    """
    items = list(items)
    if jobs is None:
        jobs = os.cpu_count() or 1
    jobs = max(1, min(int(jobs), len(items) or 1))
    if jobs == 1:
        return [func(i) for i in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(func, items))


class NumpyEncoder(json.JSONEncoder):
    """JSON encoder aware of numpy scalars and arrays"""

    def default(self, obj):
        if isinstance(obj, numpy.integer):
            return int(obj)
        if isinstance(obj, numpy.floating):
            return float(obj)
        if isinstance(obj, numpy.bool_):
            return bool(obj)
        if isinstance(obj, numpy.ndarray):
            return obj.tolist()
        return json.JSONEncoder.default(self, obj)


def to_json(obj, indent=2):
    """Serialize a report dictionary; infinities are kept as strings"""
    return json.dumps(_finite(obj), cls=NumpyEncoder, indent=indent, sort_keys=False)


def _finite(obj):
    """Replace non finite floats by the strings "inf", "-inf" and "nan",
    which strict JSON parsers accept"""
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, (float, numpy.floating)):
        value = float(obj)
        if value != value:
            return "nan"
        if value in (float("inf"), float("-inf")):
            return "inf" if value > 0 else "-inf"
        return value
    return obj


def versions():
    """Versions of pmodulus and of its numerical stack"""
    import scipy
    import networkx
    from ._version import version
    return {"pmodulus": version,
            "numpy": numpy.version.version,
            "scipy": scipy.__version__,
            "networkx": networkx.__version__,
            "python": sys.version.split()[0]}


@contextlib.contextmanager
def timed(timings, name):
    """Record the wall-clock duration of a block into `timings[name]`"""
    start = time.perf_counter()
    try:
        yield
    finally:
        timings[name] = time.perf_counter() - start
