# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Plain text edge list reader and writer"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"

import math
import logging

from .graphformats import GraphFormat
from .graph import Graph
from .modutils import GraphFormatError

logger = logging.getLogger(__name__)


class EdgeListFormat(GraphFormat):
    """
    Edge list, one edge per line::

        # comment
        tail head [weight]

    Vertex names are arbitrary whitespace-free tokens, the weight defaults
    to 1.0. Everything after a ``#`` is a comment and blank lines are
    ignored. A comment line reading exactly ``# directed`` marks the file
    as directed; it is what :meth:`encode` writes for directed graphs.
    Isolated vertices can not be represented.
    """

    DESCRIPTION = "Whitespace separated edge list"

    DEFAULT_EXTENSIONS = ["txt", "edges", "el", "edgelist"]

    def decode(self, text, directed=None):
        edges = []
        flagged = False
        for lineno, line in enumerate(text.splitlines(), start=1):
            content, _, comment = line.partition("#")
            if not content.strip():
                if comment.strip().lower() == "directed":
                    flagged = True
                continue
            tokens = content.split()
            if len(tokens) not in (2, 3):
                raise GraphFormatError("Expected 'tail head [weight]', got %d fields" % len(tokens), lineno=lineno)
            u, v = tokens[:2]
            weight = 1.0
            if len(tokens) == 3:
                try:
                    weight = float(tokens[2])
                except ValueError:
                    raise GraphFormatError("Weight '%s' is not a number" % tokens[2], lineno=lineno, field="weight")
                if not math.isfinite(weight) or weight <= 0:
                    raise GraphFormatError("Nonpositive or non finite weight %s" % tokens[2], lineno=lineno, field="weight")
            if u == v:
                raise GraphFormatError("Self-loop on vertex '%s'" % u, lineno=lineno)
            edges.append((u, v, weight))
        if directed is None:
            directed = flagged
        graph = Graph.from_edges(edges, directed=directed)
        logger.debug("Edge list decoded: %s", graph)
        return graph

    def encode(self, graph):
        connected = set(graph.tails.tolist()) | set(graph.heads.tolist())
        if len(connected) != graph.n:
            raise GraphFormatError("Isolated vertices can not be written in an edge list")
        lines = []
        if graph.directed:
            lines.append("# directed")
        for e in range(graph.m):
            u, v, w = graph.edge(e)
            lines.append("%s %s %r" % (u, v, w))
        return "\n".join(lines) + "\n"
