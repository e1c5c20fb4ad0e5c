# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Families of objects on a graph

A family is described by its usage matrix ``N``: one row per object, one
column per edge. Families are never stored as full matrices; each class
provides a shortest-object oracle (minimizing ``sum_e N(gamma, e) rho(e)``)
and, at desk scale, an exhaustive enumeration:

=================  ======================  ==============================
kind               objects                 oracle
=================  ======================  ==============================
``connect:a,b``    simple ab-paths         Dijkstra
``cut:a,b``        minimal ab-cuts         Dinitz max-flow
``tree``           spanning trees          Kruskal
``explicit``       rows given by the user  linear scan
=================  ======================  ==============================
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import json
import math
import itertools
import logging

import numpy
import networkx
from networkx.utils import UnionFind

from . import oracles
from .graph import as_vector
from .graphformats import read_text
from .modutils import EmptyFamilyError, GraphError, GraphFormatError, GuardExceeded, TrivialFamilyError

logger = logging.getLogger(__name__)

DEFAULT_MAX_COUNT = 10000
"""Default enumeration guard"""

MAX_SUBSET_SCAN = 1 << 22
"""Largest number of candidate vertex subsets or edge combinations scanned"""


class UsageRow(object):
    """Sparse usage vector of one object.

    :param usage: mapping edge id -> usage N(gamma, e); zero entries are
        dropped
    :param str label: optional name of the object
    :raise TrivialFamilyError: when no entry is strictly positive or an
        entry is negative or non finite
    """

    __slots__ = ("edges", "values", "label")

    def __init__(self, usage, label=None):
        items = []
        for e, value in dict(usage).items():
            value = float(value)
            if not math.isfinite(value) or value < 0:
                raise TrivialFamilyError("Usage of edge %s must be finite and nonnegative, got %r" % (e, value))
            if value > 0:
                items.append((int(e), value))
        if not items:
            raise TrivialFamilyError("Object %s has no edge with positive usage" % (label or ""))
        items.sort()
        self.edges = tuple(e for e, _ in items)
        self.values = tuple(v for _, v in items)
        self.label = label

    @classmethod
    def indicator(cls, edges, value=1.0, label=None):
        return cls({int(e): value for e in edges}, label=label)

    @classmethod
    def from_vector(cls, vector, label=None, tol=0.0):
        return cls({e: v for e, v in enumerate(vector) if v > tol}, label=label)

    @property
    def key(self):
        """Hashable identity of the usage vector, independent of the label"""
        return tuple((e, round(v, 12)) for e, v in zip(self.edges, self.values))

    def items(self):
        return zip(self.edges, self.values)

    def dense(self, m):
        vector = numpy.zeros(m)
        vector[list(self.edges)] = self.values
        return vector

    def length(self, rho):
        """Total usage cost sum_e N(gamma, e) rho(e)"""
        return float(numpy.dot(numpy.asarray(rho)[list(self.edges)], self.values))

    def min_usage(self):
        return min(self.values)

    def describe(self, graph):
        """Label, or ``"u-v + v-w"`` made of the edge keys"""
        if self.label is not None:
            return self.label
        parts = []
        for e, v in self.items():
            key = graph.edge_key(e)
            parts.append(key if v == 1.0 else "%g*%s" % (v, key))
        return " + ".join(parts)

    def to_dict(self, graph):
        return {graph.edge_key(e): v for e, v in self.items()}

    def __eq__(self, other):
        return isinstance(other, UsageRow) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "UsageRow(%s)" % dict(self.items())


def dedup(rows):
    """Drop repeated usage vectors, keeping the first occurrence"""
    seen = set()
    result = []
    for row in rows:
        if row.key not in seen:
            seen.add(row.key)
            result.append(row)
    return result


class Family(object):
    """Base class: a family of objects on a fixed graph"""

    KIND = None

    def __init__(self, graph):
        self.graph = graph
        self._length = None

    def __repr__(self):
        return "<%s %s on %s>" % (self.__class__.__name__, self.describe(), self.graph)

    def describe(self):
        """Family spec string, as accepted by :func:`family_factory`"""
        return self.KIND

    @property
    def n_min(self):
        """Smallest nonzero usage over the family"""
        return 1.0

    def with_graph(self, graph):
        """Same family on a graph with the same topology and other weights"""
        if graph.n != self.graph.n or graph.m != self.graph.m:
            raise GraphError("with_graph needs the same topology")
        return self._rebind(graph)

    def _rebind(self, graph):
        raise NotImplementedError()

    def shortest_object(self, rho):
        """Object of minimal rho-length

        :return: ``(UsageRow, length)``
        """
        raise NotImplementedError()

    def enumerate(self, max_count=DEFAULT_MAX_COUNT):
        """All objects, deduplicated

        :raise GuardExceeded: rather than truncate past `max_count`
        """
        raise NotImplementedError()

    def length(self):
        """Smallest total usage l(Gamma), the hop count for paths"""
        if self._length is None:
            self._length = self.shortest_object(numpy.ones(self.graph.m))[1]
        return self._length

    def matrix(self, rows):
        """Dense usage matrix of the given rows"""
        matrix = numpy.zeros((len(rows), self.graph.m))
        for i, row in enumerate(rows):
            matrix[i, list(row.edges)] = row.values
        return matrix

    def _check_count(self, count, max_count):
        if count > max_count:
            raise GuardExceeded("%s has more than %d objects" % (self.describe(), max_count))


class ConnectingFamily(Family):
    """Simple paths from `a` to `b`, directed graphs follow orientation"""

    KIND = "connect"

    def __init__(self, graph, a, b):
        Family.__init__(self, graph)
        self.a, self.b = graph.endpoints(a, b)
        if not networkx.has_path(graph.to_networkx(), self.a, self.b):
            raise EmptyFamilyError("'%s' can not be reached from '%s'" % (graph.label(self.b), graph.label(self.a)))

    def describe(self):
        return "connect:%s,%s" % (self.graph.label(self.a), self.graph.label(self.b))

    def _rebind(self, graph):
        return ConnectingFamily(graph, self.a, self.b)

    def shortest_object(self, rho):
        result = oracles.shortest_path_length(self.graph, self.a, self.b, rho)
        return UsageRow.indicator(result.edges), result.length

    def enumerate(self, max_count=DEFAULT_MAX_COUNT):
        rows = []
        for path in networkx.all_simple_edge_paths(self.graph.to_networkx(), self.a, self.b):
            rows.append(UsageRow.indicator(key for _, _, key in path))
            self._check_count(len(rows), max_count)
        return dedup(rows)


class CutFamily(Family):
    """Minimal ab-cuts of an undirected connected graph.

    The boundary of ``S`` with ``a`` in ``S``, ``b`` outside and both
    ``S`` and its complement inducing connected subgraphs.
    """

    KIND = "cut"

    def __init__(self, graph, a, b):
        graph.check_undirected("Cut family")
        graph.check_connected("Cut family")
        Family.__init__(self, graph)
        self.a, self.b = graph.endpoints(a, b)

    def describe(self):
        return "cut:%s,%s" % (self.graph.label(self.a), self.graph.label(self.b))

    def _rebind(self, graph):
        return CutFamily(graph, self.a, self.b)

    def shortest_object(self, rho):
        result = oracles.min_cut(self.graph, self.a, self.b, rho)
        return UsageRow.indicator(result.edges), result.value

    def minimal_cuts(self, max_count=DEFAULT_MAX_COUNT):
        """Yield ``(side, edge ids)`` for every minimal ab-cut"""
        g = self.graph
        others = [v for v in range(g.n) if v not in (self.a, self.b)]
        if (1 << len(others)) > MAX_SUBSET_SCAN:
            raise GuardExceeded("Too many vertex subsets to scan (n=%d)" % g.n)
        count = 0
        everything = set(range(g.n))
        for size in range(len(others) + 1):
            for extra in itertools.combinations(others, size):
                side = {self.a, *extra}
                if g.induced_is_connected(side) and g.induced_is_connected(everything - side):
                    count += 1
                    self._check_count(count, max_count)
                    yield frozenset(side), [int(e) for e in g.boundary(side)]

    def enumerate(self, max_count=DEFAULT_MAX_COUNT):
        return dedup(UsageRow.indicator(edges) for _, edges in self.minimal_cuts(max_count))


class SpanningTreeFamily(Family):
    """Spanning trees of an undirected connected graph"""

    KIND = "tree"

    def __init__(self, graph):
        graph.check_undirected("Spanning tree family")
        graph.check_connected("Spanning tree family")
        if graph.n < 2:
            raise EmptyFamilyError("A single vertex has no spanning tree with edges")
        Family.__init__(self, graph)

    def _rebind(self, graph):
        return SpanningTreeFamily(graph)

    def shortest_object(self, rho):
        result = oracles.minimum_spanning_tree(self.graph, rho)
        return UsageRow.indicator(result.edges), result.length

    def enumerate(self, max_count=DEFAULT_MAX_COUNT):
        g = self.graph
        count = oracles.count_spanning_trees(g)
        self._check_count(count, max_count)
        if math.comb(g.m, g.n - 1) > MAX_SUBSET_SCAN:
            raise GuardExceeded("Too many edge combinations to scan (m=%d)" % g.m)
        rows = []
        for edges in itertools.combinations(range(g.m), g.n - 1):
            forest = UnionFind(range(g.n))
            for e in edges:
                u, v = int(g.tails[e]), int(g.heads[e])
                if forest[u] == forest[v]:
                    break
                forest.union(u, v)
            else:
                rows.append(UsageRow.indicator(edges))
        if len(rows) != count:
            logger.warning("Enumerated %d spanning trees, matrix-tree count is %d", len(rows), count)
        return rows


class ExplicitFamily(Family):
    """Family given by its rows"""

    KIND = "explicit"

    def __init__(self, graph, rows, source=None):
        Family.__init__(self, graph)
        rows = list(rows)
        if not rows:
            raise EmptyFamilyError("Explicit family without rows")
        for row in rows:
            if not isinstance(row, UsageRow):
                raise TypeError("Expected UsageRow, got %s" % type(row))
            if row.edges[-1] >= graph.m:
                raise TrivialFamilyError("Row refers to unknown edge id %d" % row.edges[-1])
        self.rows = tuple(rows)
        self.source = source
        self._matrix = None

    @classmethod
    def from_matrix(cls, graph, matrix, labels=None):
        matrix = numpy.atleast_2d(numpy.asarray(matrix, dtype=numpy.float64))
        if matrix.shape[1] != graph.m:
            raise TrivialFamilyError("Usage matrix has %d columns for %d edges" % (matrix.shape[1], graph.m))
        labels = labels or [None] * len(matrix)
        return cls(graph, [UsageRow.from_vector(r, label=l) for r, l in zip(matrix, labels)])

    def describe(self):
        if self.source:
            return "explicit:%s" % self.source
        return self.KIND

    def _rebind(self, graph):
        return ExplicitFamily(graph, self.rows, self.source)

    @property
    def n_min(self):
        return min(row.min_usage() for row in self.rows)

    @property
    def usage(self):
        """Dense usage matrix, rows in family order"""
        if self._matrix is None:
            self._matrix = self.matrix(self.rows)
            self._matrix.setflags(write=False)
        return self._matrix

    def shortest_object(self, rho):
        rho = as_vector(rho, self.graph.m, "rho")
        lengths = self.usage @ rho
        best = int(numpy.argmin(lengths))
        return self.rows[best], float(lengths[best])

    def enumerate(self, max_count=DEFAULT_MAX_COUNT):
        rows = dedup(self.rows)
        self._check_count(len(rows), max_count)
        return rows


_kinds = {"connect": ConnectingFamily,
          "cut": CutFamily,
          "tree": SpanningTreeFamily,
          "explicit": ExplicitFamily}


def family_factory(spec, graph):
    """Build a family from a spec string.

    ``connect:a,b``, ``cut:a,b``, ``tree`` or ``explicit:<json file>``.

    :raise ValueError: on malformed specs
    """
    kind, _, args = spec.partition(":")
    kind = kind.strip().lower()
    if kind not in _kinds:
        raise ValueError("Unknown family kind '%s', expected one of %s" % (kind, sorted(_kinds)))
    if kind in ("connect", "cut"):
        ends = [i.strip() for i in args.split(",")]
        if len(ends) != 2 or not all(ends):
            raise ValueError("Family '%s' needs two endpoints, as in %s:a,b" % (spec, kind))
        return _kinds[kind](graph, ends[0], ends[1])
    if kind == "tree":
        if args:
            raise ValueError("The tree family takes no argument")
        return SpanningTreeFamily(graph)
    if not args:
        raise ValueError("The explicit family needs a file, as in explicit:rows.json")
    family = load_explicit_family(args, graph)
    family.source = args
    return family


def shortest_object(family, rho):
    """Object of minimal rho-length of `family` and its length"""
    return family.shortest_object(rho)


def enumerate_family(family, max_count=DEFAULT_MAX_COUNT):
    """Every object of `family`, refusing past `max_count`"""
    return family.enumerate(max_count)


def _parse_row(graph, record, index):
    if isinstance(record, dict) and "edges" in record:
        usage, label = record["edges"], record.get("label")
    elif isinstance(record, dict):
        usage, label = record, None
    else:
        raise GraphFormatError("Row %d is not an object" % index, field="rows")
    if not isinstance(usage, dict):
        raise GraphFormatError("Row %d: 'edges' must be an object" % index, field="edges")
    resolved = {}
    for key, value in usage.items():
        try:
            e = graph.find_edge(key)
        except KeyError:
            raise TrivialFamilyError("Row %d refers to unknown edge '%s'" % (index, key))
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise GraphFormatError("Row %d: usage of '%s' is not a number" % (index, key), field="edges")
        resolved[e] = resolved.get(e, 0.0) + float(value)
    return UsageRow(resolved, label=label)


def load_explicit_family(source, graph):
    """Load an explicit family.

    Layout: ``{"rows": [{"edges": {"<u>-<v>": usage, ...}, "label": str}]}``;
    edges are referenced by canonical key or by id, and a row may also be
    given directly as an ``{edge: usage}`` mapping.

    :param source: filename or stream
    :raise TrivialFamilyError: for empty rows and unknown edges
    """
    text = read_text(source)
    try:
        doc = json.loads(text)
    except ValueError as err:
        raise GraphFormatError("Invalid JSON: %s" % err, lineno=getattr(err, "lineno", None))
    records = doc.get("rows") if isinstance(doc, dict) else doc
    if not isinstance(records, list):
        raise GraphFormatError("Expected a 'rows' array", field="rows")
    rows = [_parse_row(graph, record, i) for i, record in enumerate(records)]
    family = ExplicitFamily(graph, rows)
    logger.debug("Loaded explicit family with %d rows, N_min=%g", len(rows), family.n_min)
    return family


def dump_explicit_family(family, target=None):
    """JSON text of an explicit family, written to `target` if given"""
    doc = {"rows": []}
    for row in family.rows:
        record = {"edges": row.to_dict(family.graph)}
        if row.label is not None:
            record["label"] = row.label
        doc["rows"].append(record)
    text = json.dumps(doc, indent=1) + "\n"
    if target is not None:
        with open(target, "w") as f:
            f.write(text)
    return text
