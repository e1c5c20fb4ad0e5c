# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Elementary graph algorithms used as shortest-object oracles

* :func:`shortest_path_length`: Dijkstra search, lengths per edge
* :func:`min_cut`: minimum ab-cut through Dinitz max-flow
* :func:`effective_resistance`: grounded Laplacian solve
* :func:`minimum_spanning_tree`: Kruskal, ties broken by edge id

All functions are pure and can be called concurrently on a shared graph.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import logging
from collections import namedtuple

import numpy
import scipy.linalg
import scipy.sparse.linalg
import networkx
from networkx.algorithms.flow import dinitz
from networkx.utils import UnionFind

from .graph import as_vector
from .modutils import EmptyFamilyError, GraphError

logger = logging.getLogger(__name__)

DENSE_LIMIT = 2000
"""Largest vertex count solved by dense factorization"""

RESIDUAL_TOL = 1e-10

PathResult = namedtuple("PathResult", ["length", "edges"])
CutResult = namedtuple("CutResult", ["value", "edges", "side"])
TreeResult = namedtuple("TreeResult", ["length", "edges"])


def _cheapest_simple_graph(g, lengths):
    """Collapse parallel edges, keeping the cheapest one (lowest id on ties)"""
    simple = networkx.DiGraph() if g.directed else networkx.Graph()
    simple.add_nodes_from(range(g.n))
    for e in range(g.m):
        u, v = int(g.tails[e]), int(g.heads[e])
        if simple.has_edge(u, v) and simple[u][v]["weight"] <= lengths[e]:
            continue
        simple.add_edge(u, v, weight=float(lengths[e]), id=e)
    return simple


def shortest_path_length(g, a, b, lengths=None):
    """Shortest path from `a` to `b`.

    :param g: graph, directed edges are followed tail to head
    :param lengths: edge lengths >= 0, unit lengths by default (hop count)
    :return: ``PathResult(length, edges)`` with the edge ids along the path
    :raise EmptyFamilyError: when `b` is not reachable from `a`
    """
    ia, ib = g.endpoints(a, b)
    lengths = numpy.ones(g.m) if lengths is None else as_vector(lengths, g.m, "lengths")
    simple = _cheapest_simple_graph(g, lengths)
    try:
        value, nodes = networkx.single_source_dijkstra(simple, ia, ib, weight="weight")
    except networkx.NetworkXNoPath:
        raise EmptyFamilyError("No path from '%s' to '%s'" % (g.label(ia), g.label(ib)))
    edges = [simple[u][v]["id"] for u, v in zip(nodes[:-1], nodes[1:])]
    return PathResult(float(lengths[edges].sum()), edges)


def min_cut(g, a, b, capacities=None):
    """Minimum ab-cut with the given capacities.

    The returned side ``S`` contains `a` and is made of the vertices
    reachable from `a` in the residual network of a maximum flow.

    :param capacities: edge capacities >= 0, sigma by default
    :return: ``CutResult(value, edges, side)``; `edges` is the sorted list
        of edge ids crossing the cut, `side` the frozenset ``S``
    """
    g.check_undirected("min_cut")
    ia, ib = g.endpoints(a, b)
    c = g.weights if capacities is None else as_vector(capacities, g.m, "capacities")
    network = networkx.DiGraph()
    network.add_nodes_from(range(g.n))
    for e in range(g.m):
        u, v = int(g.tails[e]), int(g.heads[e])
        for x, y in ((u, v), (v, u)):
            if network.has_edge(x, y):
                network[x][y]["capacity"] += float(c[e])
            else:
                network.add_edge(x, y, capacity=float(c[e]))
    residual = dinitz(network, ia, ib, capacity="capacity")
    flow_value = residual.graph["flow_value"]

    tol = RESIDUAL_TOL * max(1.0, float(c.sum()))
    side = {ia}
    stack = [ia]
    while stack:
        u = stack.pop()
        for v, attr in residual[u].items():
            if v not in side and attr["capacity"] - attr["flow"] > tol:
                side.add(v)
                stack.append(v)
    if ib in side:
        # roundoff left a residual path open: fall back on networkx
        logger.debug("Residual path to sink within tolerance, using networkx cut")
        _, (side, _) = networkx.minimum_cut(network, ia, ib, capacity="capacity", flow_func=dinitz)
    edges = g.boundary(side)
    value = float(c[edges].sum())
    if abs(value - flow_value) > 1e-9 * max(1.0, value):
        logger.warning("Cut value %.12g differs from flow value %.12g", value, flow_value)
    return CutResult(value, sorted(int(e) for e in edges), frozenset(side))


def effective_resistance(g, a, b, conductances=None):
    """Effective resistance between `a` and `b`, the conductances being
    sigma unless given.

    A unit current is injected at `a`, the potential of `b` is grounded
    and the reduced Laplacian system is solved; the resistance is the
    potential of `a`.
    """
    g.check_undirected("effective_resistance")
    g.check_connected("effective_resistance")
    ia, ib = g.endpoints(a, b)
    keep = numpy.array([i for i in range(g.n) if i != ib])
    rhs = numpy.zeros(g.n - 1)
    rhs[numpy.searchsorted(keep, ia)] = 1.0
    if g.n <= DENSE_LIMIT:
        lap = g.laplacian(conductances)[numpy.ix_(keep, keep)]
        potential = scipy.linalg.solve(lap, rhs, assume_a="pos")
    else:
        lap = g.laplacian(conductances, sparse=True)[keep][:, keep]
        potential, info = scipy.sparse.linalg.cg(lap, rhs, rtol=1e-13, maxiter=20 * g.n)
        if info != 0:
            logger.warning("Conjugate gradient stopped with info=%s", info)
    residual = numpy.linalg.norm(lap @ potential - rhs) / numpy.linalg.norm(rhs)
    if residual > RESIDUAL_TOL:
        raise ArithmeticError("Laplacian solve residual %.3g above %.1g" % (residual, RESIDUAL_TOL))
    return float(potential[numpy.searchsorted(keep, ia)])


def minimum_spanning_tree(g, lengths=None):
    """Kruskal's algorithm, edges sorted by (length, id)

    :return: ``TreeResult(length, edges)``, edges sorted by id
    """
    g.check_undirected("minimum_spanning_tree")
    g.check_connected("minimum_spanning_tree")
    lengths = g.weights if lengths is None else as_vector(lengths, g.m, "lengths")
    order = numpy.lexsort((numpy.arange(g.m), lengths))
    forest = UnionFind(range(g.n))
    edges = []
    for e in order:
        u, v = int(g.tails[e]), int(g.heads[e])
        if forest[u] != forest[v]:
            forest.union(u, v)
            edges.append(int(e))
            if len(edges) == g.n - 1:
                break
    edges.sort()
    return TreeResult(float(lengths[edges].sum()), edges)


def count_spanning_trees(g):
    """Number of spanning trees (matrix-tree theorem), parallel edges
    counted as distinct"""
    g.check_undirected("count_spanning_trees")
    if g.n == 1:
        return 1
    lap = g.laplacian(numpy.ones(g.m))[1:, 1:]
    sign, logdet = numpy.linalg.slogdet(lap)
    if sign <= 0:
        return 0
    return int(round(numpy.exp(logdet)))
