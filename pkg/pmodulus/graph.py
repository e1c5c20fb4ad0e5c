# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Weighted graph data model

A :class:`Graph` is a finite multigraph ``G = (V, E, sigma)`` with strictly
positive edge weights. Vertices are indexed ``0..n-1`` and carry string
labels; edges are indexed ``0..m-1`` and the index is the stable edge id
used by every edge-indexed vector of the library (densities, usage rows).

Undirected edges are stored once, with their tail and head as given in the
source. Graphs are immutable: :meth:`Graph.with_weights` returns a new
object sharing the topology.

A :class:`Density` is a nonnegative edge-indexed vector with a role tag,
``rho`` for densities on the primal family and ``eta`` for densities on
its blocker.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import logging
import numbers

import numpy
import networkx

from .modutils import GraphError, GraphFormatError

logger = logging.getLogger(__name__)


def _readonly(array):
    array.setflags(write=False)
    return array


class Graph(object):
    """Finite weighted (multi)graph, immutable after construction.

    :param labels: sequence of unique vertex labels, position = index
    :param tails: sequence of tail vertex indices, one per edge
    :param heads: sequence of head vertex indices, one per edge
    :param weights: sequence of edge weights, finite and > 0
    :param bool directed: orientation flag
    """

    def __init__(self, labels, tails, heads, weights, directed=False):
        labels = tuple(str(i) for i in labels)
        index = {}
        for i, label in enumerate(labels):
            if label in index:
                raise GraphFormatError("Duplicate vertex label '%s' (index %d and %d)" % (label, index[label], i))
            index[label] = i
        self._labels = labels
        self._index = index
        self._directed = bool(directed)

        tails = numpy.asarray(tails, dtype=numpy.intp).ravel()
        heads = numpy.asarray(heads, dtype=numpy.intp).ravel()
        weights = numpy.asarray(weights, dtype=numpy.float64).ravel()
        if not (len(tails) == len(heads) == len(weights)):
            raise GraphFormatError("tails, heads and weights must have the same length")
        n = len(labels)
        if len(tails) and (tails.min() < 0 or heads.min() < 0 or tails.max() >= n or heads.max() >= n):
            raise GraphFormatError("Edge endpoint out of range")
        for e in range(len(weights)):
            if not numpy.isfinite(weights[e]) or weights[e] <= 0:
                raise GraphFormatError("Edge %d has nonpositive or non finite weight %r" % (e, weights[e]), field="weight")
            if tails[e] == heads[e]:
                raise GraphFormatError("Self-loop on vertex '%s'" % labels[tails[e]])
        self._tails = _readonly(tails.copy())
        self._heads = _readonly(heads.copy())
        self._weights = _readonly(weights.copy())
        self._keys = None
        self._nx = None

    @classmethod
    def from_edges(cls, edges, directed=False, vertices=None):
        """Build a graph from ``(u, v)`` or ``(u, v, w)`` tuples of labels.

        Vertices are numbered in order of first appearance, after the
        optional `vertices` sequence. Missing weights default to 1.0.
        """
        labels = [] if vertices is None else [str(v) for v in vertices]
        index = {}
        for i, label in enumerate(labels):
            if label in index:
                raise GraphFormatError("Duplicate vertex label '%s'" % label)
            index[label] = i
        tails, heads, weights = [], [], []
        for edge in edges:
            if len(edge) == 2:
                u, v = edge
                w = 1.0
            else:
                u, v, w = edge
            ends = []
            for x in (str(u), str(v)):
                if x not in index:
                    index[x] = len(labels)
                    labels.append(x)
                ends.append(index[x])
            tails.append(ends[0])
            heads.append(ends[1])
            weights.append(float(w))
        return cls(labels, tails, heads, weights, directed=directed)

    def __repr__(self):
        kind = "directed" if self._directed else "undirected"
        return "<Graph %s n=%d m=%d>" % (kind, self.n, self.m)

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_nx"] = None
        return state

    @property
    def n(self):
        """Number of vertices"""
        return len(self._labels)

    @property
    def m(self):
        """Number of edges"""
        return len(self._weights)

    @property
    def directed(self):
        return self._directed

    @property
    def labels(self):
        return self._labels

    @property
    def tails(self):
        return self._tails

    @property
    def heads(self):
        return self._heads

    @property
    def weights(self):
        """Edge weights sigma, read-only array"""
        return self._weights

    def total_weight(self):
        """sigma(E), the sum of all edge weights"""
        return float(self._weights.sum())

    def vertex(self, a):
        """Resolve a vertex label (or integer index) into its index"""
        if isinstance(a, str):
            if a in self._index:
                return self._index[a]
            raise GraphError("Unknown vertex '%s'" % a)
        if isinstance(a, numbers.Integral) and 0 <= int(a) < self.n:
            return int(a)
        raise GraphError("Unknown vertex %r" % (a,))

    def label(self, i):
        return self._labels[i]

    def edge(self, e):
        """Returns ``(tail label, head label, weight)`` of edge `e`"""
        return self._labels[self._tails[e]], self._labels[self._heads[e]], float(self._weights[e])

    def edge_keys(self):
        """Canonical ``"u-v"`` keys of all edges.

        Parallel edges get a ``#id`` suffix so that every key is unique.
        """
        if self._keys is None:
            plain = ["%s-%s" % (self._labels[u], self._labels[v]) for u, v in zip(self._tails, self._heads)]
            count = {}
            for key in plain:
                count[key] = count.get(key, 0) + 1
            self._keys = tuple(key if count[key] == 1 else "%s#%d" % (key, e)
                               for e, key in enumerate(plain))
        return self._keys

    def edge_key(self, e):
        return self.edge_keys()[e]

    def find_edge(self, key):
        """Resolve an edge reference into an edge id.

        Accepted references: an integer id, a string of digits, a
        canonical key ``"u-v"`` or ``"u-v#id"``, or a ``(u, v)`` pair of
        labels. For undirected graphs ``"v-u"`` matches as well. The
        lowest matching id is returned.

        :raise KeyError: when nothing matches
        """
        if isinstance(key, numbers.Integral):
            if 0 <= int(key) < self.m:
                return int(key)
            raise KeyError("Unknown edge id %r" % (key,))
        if isinstance(key, (tuple, list)) and len(key) == 2:
            return self._find_pair(str(key[0]), str(key[1]), key)
        key = str(key)
        if key.isdigit():
            return self.find_edge(int(key))
        keys = self.edge_keys()
        if key in keys:
            return keys.index(key)
        if "#" in key:
            prefix, _, number = key.rpartition("#")
            if number.isdigit() and int(number) < self.m:
                return self.find_edge(int(number))
            key = prefix
        # labels may contain dashes: try every split position
        for pos in range(len(key)):
            if key[pos] != "-":
                continue
            u, v = key[:pos], key[pos + 1:]
            if u in self._index and v in self._index:
                try:
                    return self._find_pair(u, v, key)
                except KeyError:
                    continue
        raise KeyError("Unknown edge %r" % (key,))

    def _find_pair(self, u, v, key):
        if u not in self._index or v not in self._index:
            raise KeyError("Unknown edge %r" % (key,))
        iu, iv = self._index[u], self._index[v]
        forward = (self._tails == iu) & (self._heads == iv)
        if not self._directed:
            forward |= (self._tails == iv) & (self._heads == iu)
        found = numpy.nonzero(forward)[0]
        if len(found) == 0:
            raise KeyError("Unknown edge %r" % (key,))
        return int(found[0])

    def with_weights(self, weights):
        """Returns a new graph with the same topology and other weights"""
        weights = numpy.asarray(weights, dtype=numpy.float64)
        if weights.shape != (self.m,):
            raise GraphError("Expected %d weights, got shape %s" % (self.m, weights.shape))
        return Graph(self._labels, self._tails, self._heads, weights, directed=self._directed)

    def to_networkx(self):
        """Multigraph view keyed by edge id, with a ``weight`` attribute.

        The view is built once and cached; callers must not modify it.
        """
        if self._nx is None:
            graph = networkx.MultiDiGraph() if self._directed else networkx.MultiGraph()
            graph.add_nodes_from(range(self.n))
            for e in range(self.m):
                graph.add_edge(int(self._tails[e]), int(self._heads[e]), key=e, weight=float(self._weights[e]))
            self._nx = graph
        return self._nx

    def is_connected(self):
        """Connectivity, weak connectivity for directed graphs"""
        if self.n == 0:
            return False
        graph = self.to_networkx()
        if self._directed:
            return networkx.is_weakly_connected(graph)
        return networkx.is_connected(graph)

    def check_undirected(self, what="this operation"):
        if self._directed:
            raise GraphError("%s requires an undirected graph" % what)

    def check_connected(self, what="this operation"):
        if not self.is_connected():
            raise GraphError("%s requires a connected graph" % what)

    def endpoints(self, a, b):
        """Resolve two distinct vertices"""
        ia, ib = self.vertex(a), self.vertex(b)
        if ia == ib:
            raise GraphError("Endpoints must be distinct, got '%s' twice" % self._labels[ia])
        return ia, ib

    def induced_is_connected(self, vertices):
        """True if the subgraph induced by the vertex indices is connected"""
        vertices = set(vertices)
        if not vertices:
            return False
        graph = self.to_networkx()
        sub = graph.subgraph(vertices)
        if self._directed:
            return networkx.is_weakly_connected(sub)
        return networkx.is_connected(sub)

    def boundary(self, side):
        """Ids of the edges with exactly one endpoint in `side`"""
        inside = numpy.zeros(self.n, dtype=bool)
        inside[list(side)] = True
        return numpy.nonzero(inside[self._tails] != inside[self._heads])[0]

    def laplacian(self, conductances=None, sparse=False):
        """Weighted Laplacian ``D - A`` of the underlying undirected graph.

        :param conductances: edge-indexed weights, sigma by default
        :param bool sparse: return a ``scipy.sparse.csr_matrix``
        """
        c = self._weights if conductances is None else as_vector(conductances, self.m, "conductances")
        rows = numpy.concatenate([self._tails, self._heads, self._tails, self._heads])
        cols = numpy.concatenate([self._heads, self._tails, self._tails, self._heads])
        data = numpy.concatenate([-c, -c, c, c])
        if sparse:
            import scipy.sparse
            return scipy.sparse.coo_matrix((data, (rows, cols)), shape=(self.n, self.n)).tocsr()
        lap = numpy.zeros((self.n, self.n))
        numpy.add.at(lap, (rows, cols), data)
        return lap

    def hop_distance(self, a, b):
        """Number of edges of a shortest path, unweighted"""
        ia, ib = self.vertex(a), self.vertex(b)
        try:
            return networkx.shortest_path_length(self.to_networkx(), ia, ib)
        except networkx.NetworkXNoPath:
            return float("inf")


class Density(object):
    """Nonnegative vector indexed by edge id.

    :param values: sequence of m finite nonnegative reals
    :param str role: ``Density.PRIMAL`` (rho) or ``Density.BLOCKER`` (eta)
    """

    PRIMAL = "rho"
    BLOCKER = "eta"

    def __init__(self, values, role=PRIMAL):
        values = numpy.array(values, dtype=numpy.float64).ravel()
        if not numpy.all(numpy.isfinite(values)):
            raise ValueError("Density values must be finite")
        if len(values) and values.min() < 0:
            raise ValueError("Density values must be nonnegative, got %r" % values.min())
        if role not in (self.PRIMAL, self.BLOCKER):
            raise ValueError("Unknown density role %r" % role)
        self._values = _readonly(values)
        self.role = role

    @classmethod
    def constant(cls, m, value=1.0, role=PRIMAL):
        return cls(numpy.full(m, float(value)), role)

    @property
    def values(self):
        return self._values

    def __len__(self):
        return len(self._values)

    def __getitem__(self, e):
        return self._values[e]

    def __iter__(self):
        return iter(self._values)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._values.copy()
        return self._values.astype(dtype)

    def __repr__(self):
        return "<Density %s %s>" % (self.role, numpy.array2string(self._values, precision=4))

    def to_dict(self, graph):
        """``{edge key: value}`` mapping"""
        return {graph.edge_key(e): float(v) for e, v in enumerate(self._values)}


def as_vector(values, m, name="vector"):
    """Coerce a Density or array-like into a float vector of length m"""
    if isinstance(values, Density):
        vector = values.values
    else:
        vector = numpy.asarray(values, dtype=numpy.float64).ravel()
    if vector.shape != (m,):
        raise GraphError("%s must have %d entries, got %d" % (name, m, vector.size))
    if not numpy.all(numpy.isfinite(vector)) or (m and vector.min() < 0):
        raise GraphError("%s must be finite and nonnegative" % name)
    return vector
