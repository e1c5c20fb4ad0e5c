# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""
Provide an API to all the supported graph file formats
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import os
import io
import gzip
import logging
import importlib
from collections import OrderedDict

from .modutils import GraphFormatError

_logger = logging.getLogger(__name__)


class GraphFormat(object):
    """Base class of the graph codecs.

    A codec decodes text into a :class:`pmodulus.graph.Graph` and encodes
    a graph back into text. Subclasses redefine :meth:`decode` and/or
    :meth:`encode`; :meth:`read` and :meth:`write` deal with files,
    streams and gzip compression.
    """

    DESCRIPTION = None
    DEFAULT_EXTENSIONS = []

    @classmethod
    def codec_name(cls):
        """Returns the internal name of the codec"""
        return cls.__name__.lower()

    def decode(self, text, directed=None):
        raise NotImplementedError("%s does not read graphs" % self.codec_name())

    def encode(self, graph):
        raise NotImplementedError("%s does not write graphs" % self.codec_name())

    def read(self, source, directed=None):
        """Read a graph from a filename, a path or an open stream

        :param source: filename or file-like object (bytes or text)
        :param directed: force the orientation flag, None to keep the
            one stored in the file (undirected if unspecified)
        :rtype: pmodulus.graph.Graph
        """
        return self.decode(read_text(source), directed=directed)

    def write(self, graph, target):
        """Write a graph into a filename or an open stream"""
        text = self.encode(graph)
        if hasattr(target, "write"):
            if isinstance(target, io.TextIOBase):
                target.write(text)
            else:
                target.write(text.encode("utf-8"))
            return
        target = os.fspath(target)
        opener = gzip.open if target.endswith(".gz") else open
        with opener(target, "wb") as f:
            f.write(text.encode("utf-8"))


def read_text(source):
    """Returns the UTF-8 decoded content of a filename or a stream"""
    if hasattr(source, "read"):
        data = source.read()
    else:
        filename = os.fspath(source)
        opener = gzip.open if filename.endswith(".gz") else open
        with opener(filename, "rb") as f:
            data = f.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as err:
            raise GraphFormatError("Input is not valid UTF-8: %s" % err)
    return data


_default_codecs = [
    ("jsonformat", "JsonFormat"),
    ("edgelistformat", "EdgeListFormat"),
]
"""List of relative module and class names for available formats.
Order matter."""


_registry = OrderedDict()
"""Contains all registered codec classes indexed by codec name."""

_extension_cache = None
"""Cache extension mapping"""


def register(codec_class):
    """Register a class format to the pmodulus library"""
    global _extension_cache
    if not issubclass(codec_class, GraphFormat):
        raise AssertionError("Expected subclass of GraphFormat class but found %s" % type(codec_class))
    _registry[codec_class.codec_name()] = codec_class
    _extension_cache = None


def register_default_formats():
    """Register all default graph formats, overwriting existing entries"""
    for module_name, class_name in _default_codecs:
        module = importlib.import_module("pmodulus." + module_name)
        codec_class = getattr(module, class_name, None)
        if codec_class is None:
            raise RuntimeError("Class name '%s' from module '%s' not found" % (class_name, module_name))
        register(codec_class)


def get_all_classes():
    """Returns the list of registered codec classes

    :rtype: list"""
    return list(_registry.values())


def get_classes(reader=None, writer=None):
    """Return available codecs according to filter

    :param bool reader: keep only codecs providing (True) or lacking
        (False) a decoder; None does not filter
    :param bool writer: same for the encoder
    :rtype: list
    """
    formats = []
    for f in get_all_classes():
        has_reader = f.decode is not GraphFormat.decode
        has_writer = f.encode is not GraphFormat.encode
        if reader is not None and reader != has_reader:
            continue
        if writer is not None and writer != has_writer:
            continue
        formats.append(f)
    return formats


def normalize_name(name):
    """Accept "edge-list", "edgelist", "EdgeListFormat", "json"..."""
    name = name.lower().replace("-", "").replace("_", "")
    if not name.endswith("format"):
        name += "format"
    return name


def get_class_by_name(format_name):
    """Get a format class by its name, None if unknown

    :param str format_name: format name, for example "json" or "edge-list"
    """
    return _registry.get(normalize_name(format_name))


def _get_extension_mapping():
    """Returns a dictionary mapping file extension to the list of supported
    formats. The result is cached, do not edit it

    :rtype: dict
    """
    global _extension_cache
    if _extension_cache is None:
        _extension_cache = {}
        for codec in get_all_classes():
            for ext in codec.DEFAULT_EXTENSIONS:
                _extension_cache.setdefault(ext, []).append(codec)
    return _extension_cache


def get_classes_from_extension(extension):
    """Returns the list of format classes handling a file extension

    :param str extension: file extension without dot, for example "json"
    """
    mapping = _get_extension_mapping()
    return list(mapping.get(extension.lower().lstrip("."), []))


def is_extension_supported(extension):
    return extension.lower().lstrip(".") in _get_extension_mapping()


def factory(name):
    """Instantiate a codec from its name

    :param str name: name of the format
    :rtype: GraphFormat
    :raise GraphFormatError: for unknown formats
    """
    codec = get_class_by_name(name)
    if codec is None:
        msg = "Graph format '%s' is unknown, select one of %s" % (name, list(_registry.keys()))
        _logger.debug(msg)
        raise GraphFormatError(msg)
    return codec()
