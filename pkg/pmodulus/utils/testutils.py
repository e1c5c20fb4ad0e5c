# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Utilities for writing tests.

- :class:`TestLogging` used as a context, or the :func:`test_logging`
  decorator, checks how many messages of each level a logger emitted.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"

import functools
import logging

_logger = logging.getLogger(__name__)


class TestLogging(logging.Handler):
    """Context counting the records emitted by a logger.

    Propagation is disabled while the context is active and the logger
    level is lowered to DEBUG so that nothing is filtered out.

    >>> with TestLogging("pmodulus.solver", warning=1):
    ...     modulus(family, 1.05)

    :param logger: name or instance of the logger, the root logger if None
    :param int error: expected number of ERROR records, None to ignore
    :param int warning: expected number of WARNING records, None to ignore
    :param int info: expected number of INFO records, None to ignore
    :raise RuntimeError: on exit, if a count differs
    """

    def __init__(self, logger=None, error=None, warning=None, info=None):
        if logger is None:
            logger = logging.getLogger()
        elif not isinstance(logger, logging.Logger):
            logger = logging.getLogger(logger)
        self.logger = logger
        self.records = []
        self.expected = {logging.ERROR: error,
                         logging.WARNING: warning,
                         logging.INFO: info}
        logging.Handler.__init__(self)

    def __enter__(self):
        self.records = []
        self.saved = self.logger.level, self.logger.propagate
        self.logger.addHandler(self)
        self.logger.propagate = False
        self.logger.setLevel(logging.DEBUG)
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.logger.removeHandler(self)
        level, self.logger.propagate = self.saved
        self.logger.setLevel(level)
        if exc_type is not None:
            return False
        for level, expected in self.expected.items():
            if expected is None:
                continue
            count = sum(1 for r in self.records if r.levelno == level)
            if count != expected:
                for record in self.records:
                    self.logger.handle(record)
                raise RuntimeError("Expected %d %s messages from %s, got %d" %
                                   (expected, logging.getLevelName(level), self.logger.name, count))
        return False

    def count(self, level):
        return sum(1 for r in self.records if r.levelno == level)

    def emit(self, record):
        self.records.append(record)


def test_logging(logger=None, error=None, warning=None, info=None):
    """Decorator form of :class:`TestLogging`"""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            with TestLogging(logger, error=error, warning=warning, info=info):
                return func(*args, **kwargs)
        return wrapper
    return decorator


test_logging.__test__ = False
TestLogging.__test__ = False
