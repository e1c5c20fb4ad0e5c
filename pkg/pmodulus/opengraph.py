# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""
Open graph files, detecting their format

The format is taken, in order, from the explicit argument, from the
file extension, then from the first non blank character of the content
(``{`` means JSON, anything else an edge list).
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import io
import os
import logging

from . import graphformats
from .modutils import GraphFormatError

logger = logging.getLogger(__name__)

graphformats.register_default_formats()

MAGIC_CHARACTERS = [
    ("{", "json"),
]


def do_magic(text):
    """Guess the format from the first non blank character"""
    start = text.lstrip()[:1]
    for magic, format_type in MAGIC_CHARACTERS:
        if start == magic:
            return format_type
    return "edgelist"


def _extension(filename):
    name = os.fspath(filename)
    if name.endswith(".gz"):
        name = name[:-3]
    return os.path.splitext(name)[1].lstrip(".")


def load_graph(source, format=None, directed=None):
    """Load a graph.

    .. code-block:: python

        g = pmodulus.load_graph("network.txt")
        g = pmodulus.load_graph(io.BytesIO(b"a b 1.0\\nb c 1.0"))

    :param source: filename, path or stream of bytes or text
    :param str format: "edge-list", "json" or None to detect it
    :param directed: orientation flag, None keeps the file's own
    :rtype: pmodulus.graph.Graph
    :raise GraphFormatError: when the content can not be decoded
    """
    if format is not None:
        codec = graphformats.factory(format)
        return codec.read(source, directed=directed)

    name = getattr(source, "name", None) if hasattr(source, "read") else source
    if isinstance(name, (str, os.PathLike)):
        classes = graphformats.get_classes_from_extension(_extension(name))
        if len(classes) == 1:
            logger.debug("Format of %s from extension: %s", name, classes[0].codec_name())
            return classes[0]().read(source, directed=directed)

    text = graphformats.read_text(source)
    format_type = do_magic(text)
    logger.debug("Format detected from content: %s", format_type)
    return graphformats.factory(format_type).decode(text, directed=directed)


def loads_graph(text, format=None, directed=None):
    """Same as :func:`load_graph` on an in-memory string"""
    return load_graph(io.StringIO(text), format=format, directed=directed)


def write_graph(graph, target, format=None):
    """Write a graph, the format defaulting to the one of the extension
    and to JSON for streams"""
    if format is None:
        format = "json"
        if isinstance(target, (str, os.PathLike)):
            classes = graphformats.get_classes_from_extension(_extension(target))
            if classes:
                format = classes[0].codec_name()
    try:
        codec = graphformats.factory(format)
    except GraphFormatError:
        logger.debug("Backtrace", exc_info=True)
        raise
    codec.write(graph, target)
