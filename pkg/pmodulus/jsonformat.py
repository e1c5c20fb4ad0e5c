# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""JSON graph reader and writer

Layout::

    {"directed": false,
     "vertices": ["a", "b", "c"],
     "edges": [{"u": "a", "v": "b", "w": 1.0}, ...]}

``vertices`` is optional and may also be given as a list of
``{"index": int, "label": str}`` records; ``w`` defaults to 1.0.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"

import json
import math
import numbers
import logging

from .graphformats import GraphFormat
from .graph import Graph
from .modutils import GraphFormatError

logger = logging.getLogger(__name__)


class JsonFormat(GraphFormat):

    DESCRIPTION = "JSON document with an edge array"

    DEFAULT_EXTENSIONS = ["json"]

    def decode(self, text, directed=None):
        try:
            doc = json.loads(text)
        except ValueError as err:
            raise GraphFormatError("Invalid JSON: %s" % err, lineno=getattr(err, "lineno", None))
        if not isinstance(doc, dict) or not isinstance(doc.get("edges"), list):
            raise GraphFormatError("Expected an object with an 'edges' array")
        if directed is None:
            directed = doc.get("directed", False)
            if not isinstance(directed, bool):
                raise GraphFormatError("'directed' must be a boolean", field="directed")
        vertices = self._vertices(doc.get("vertices"))
        edges = []
        for i, record in enumerate(doc["edges"]):
            if not isinstance(record, dict):
                raise GraphFormatError("Edge %d is not an object" % i, field="edges")
            for key in ("u", "v"):
                if key not in record:
                    raise GraphFormatError("Edge %d has no '%s'" % (i, key), field=key)
            u, v = str(record["u"]), str(record["v"])
            w = record.get("w", 1.0)
            if isinstance(w, bool) or not isinstance(w, numbers.Real) or not math.isfinite(w) or w <= 0:
                raise GraphFormatError("Edge %d has invalid weight %r" % (i, w), field="w")
            if u == v:
                raise GraphFormatError("Edge %d is a self-loop on '%s'" % (i, u), field="edges")
            edges.append((u, v, float(w)))
        return Graph.from_edges(edges, directed=directed, vertices=vertices)

    @staticmethod
    def _vertices(records):
        if records is None:
            return None
        if not isinstance(records, list):
            raise GraphFormatError("'vertices' must be an array", field="vertices")
        if all(isinstance(r, str) for r in records):
            return records
        by_index = {}
        by_label = {}
        for r in records:
            if not isinstance(r, dict) or "label" not in r or "index" not in r:
                raise GraphFormatError("Vertex records need 'index' and 'label'", field="vertices")
            index, label = r["index"], str(r["label"])
            if not isinstance(index, int) or index < 0:
                raise GraphFormatError("Invalid vertex index %r" % (index,), field="index")
            if by_label.get(label, index) != index:
                raise GraphFormatError("Vertex '%s' declared with index %d and %d" % (label, by_label[label], index), field="vertices")
            if by_index.get(index, label) != label:
                raise GraphFormatError("Index %d declared for '%s' and '%s'" % (index, by_index[index], label), field="vertices")
            by_index[index] = label
            by_label[label] = index
        if sorted(by_index) != list(range(len(by_index))):
            raise GraphFormatError("Vertex indices must be 0..n-1", field="vertices")
        return [by_index[i] for i in range(len(by_index))]

    def encode(self, graph):
        doc = {"directed": graph.directed,
               "vertices": list(graph.labels),
               "edges": [{"u": u, "v": v, "w": w} for u, v, w in (graph.edge(e) for e in range(graph.m))]}
        return json.dumps(doc, indent=1) + "\n"
