# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Blocking duality

The Fulkerson blocker of a family is the set of vertices of its
admissible polyhedron ``{rho >= 0 : N rho >= 1}``. With conjugate
exponents ``1/p + 1/q = 1`` and dual weights ``sigma**(-q/p)``::

    Mod_p(Gamma)**(1/p) * Mod_q(blocker)**(1/q) = 1

and the optimal densities are tied by
``eta*(e) = sigma(e) rho*(e)**(p-1) / Mod_p(Gamma)``, which is also the
usage expected under any optimal pmf on the objects.

The blocker is known in closed form for paths (minimal cuts), for cuts
(paths) and for spanning trees (scaled feasible partition cuts); other
families get their vertices enumerated at desk scale.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import math
import logging

import numpy

from . import families
from . import solver
from .graph import Density
from .modutils import GraphError, GuardExceeded, NotConvergedError, UnsupportedFamilyError
from .utils import polyhedron

logger = logging.getLogger(__name__)

MAX_EDGES = 12
MAX_ROWS = 20
MAX_PARTITION_VERTICES = 10


class BlockerVertex(object):
    """Extreme point of the admissible polyhedron of a family

    :param coords: edge-indexed vector
    :param str provenance: "enumerated", "analytic-cut", "analytic-path"
        or "feasible-partition"
    """

    PROVENANCES = ("enumerated", "analytic-cut", "analytic-path", "feasible-partition")

    def __init__(self, coords, provenance="enumerated"):
        if provenance not in self.PROVENANCES:
            raise ValueError("Unknown provenance %r" % provenance)
        self.coords = numpy.asarray(coords, dtype=numpy.float64)
        self.coords.setflags(write=False)
        self.provenance = provenance

    @property
    def key(self):
        return polyhedron.round_key(self.coords)

    def __repr__(self):
        return "BlockerVertex(%s, %s)" % (numpy.array2string(self.coords, precision=4), self.provenance)

    def to_dict(self, graph):
        return {"coords": {graph.edge_key(e): float(v) for e, v in enumerate(self.coords) if v != 0},
                "provenance": self.provenance}


class FeasiblePartition(object):
    """Partition of the vertices into k >= 2 parts inducing connected
    subgraphs

    :param graph: the partitioned graph
    :param parts: list of vertex index sets
    """

    def __init__(self, graph, parts):
        self.graph = graph
        self.parts = [frozenset(part) for part in parts]
        if len(self.parts) < 2:
            raise ValueError("A feasible partition has at least two parts")
        block = numpy.empty(graph.n, dtype=int)
        block.fill(-1)
        for i, part in enumerate(self.parts):
            block[list(part)] = i
        if (block < 0).any() or sum(len(p) for p in self.parts) != graph.n:
            raise ValueError("Parts must be disjoint and cover the vertices")
        self.edges = [int(e) for e in numpy.nonzero(block[graph.tails] != block[graph.heads])[0]]

    @property
    def k(self):
        return len(self.parts)

    @property
    def coords(self):
        """Blocker vector 1_{E_P} / (k_P - 1)"""
        vector = numpy.zeros(self.graph.m)
        vector[self.edges] = 1.0 / (self.k - 1)
        return vector

    def vertex(self):
        return BlockerVertex(self.coords, "feasible-partition")

    def describe(self):
        return " | ".join(",".join(sorted(self.graph.label(v) for v in part)) for part in self.parts)

    def __repr__(self):
        return "<FeasiblePartition %s>" % self.describe()


def _set_partitions(n):
    """Yield all set partitions of range(n) as block index lists"""
    labels = [0] * n

    def grow(i, blocks):
        if i == n:
            yield list(labels)
            return
        for b in range(blocks + 1):
            labels[i] = b
            yield from grow(i + 1, max(blocks, b + 1))

    if n:
        yield from grow(1, 1)


def enumerate_feasible_partitions(graph, max_vertices=MAX_PARTITION_VERTICES):
    """All partitions of the vertices into two or more connected parts

    :raise GuardExceeded: when the graph has more than `max_vertices`
    """
    graph.check_undirected("Feasible partitions")
    graph.check_connected("Feasible partitions")
    if graph.n > max_vertices:
        raise GuardExceeded("Feasible partitions are enumerated up to %d vertices, got %d" % (max_vertices, graph.n))
    connected = {}

    def is_connected(part):
        if part not in connected:
            connected[part] = graph.induced_is_connected(part)
        return connected[part]

    result = []
    for labels in _set_partitions(graph.n):
        k = max(labels) + 1
        if k < 2:
            continue
        parts = [frozenset(v for v in range(graph.n) if labels[v] == b) for b in range(k)]
        if all(is_connected(part) for part in parts):
            result.append(FeasiblePartition(graph, parts))
    logger.debug("%d feasible partitions on %s", len(result), graph)
    return result


def extreme_feasible_partitions(graph, max_vertices=MAX_PARTITION_VERTICES):
    """Feasible partitions whose vectors are vertices of the dominant of
    all partition vectors, the blocker of the spanning trees.

    On a path a|b|c gives (1/2, 1/2), the midpoint of a|bc and ab|c.
    """
    partitions = enumerate_feasible_partitions(graph, max_vertices)
    keep = polyhedron.dominant_vertices([p.coords for p in partitions])
    logger.debug("%d of %d feasible partitions are extreme", len(keep), len(partitions))
    return [partitions[i] for i in keep]


def enumerate_blocker_vertices(family, max_edges=MAX_EDGES, max_rows=MAX_ROWS):
    """Vertices of the admissible polyhedron of an enumerable family

    :raise GuardExceeded: when the graph has more than `max_edges` edges
        or the family more than `max_rows` objects
    :rtype: list of BlockerVertex
    """
    if family.graph.m > max_edges:
        raise GuardExceeded("Blocker enumeration is limited to %d edges, got %d" % (max_edges, family.graph.m))
    rows = family.enumerate(max_count=max_rows)
    usage = family.matrix(rows)
    vertices = [BlockerVertex(x, "enumerated") for x in polyhedron.admissible_vertices(usage)]
    logger.debug("%d blocker vertices for %d rows", len(vertices), len(rows))
    return vertices


def blocker_vertices(family, **guards):
    """Blocker vertices, analytic when a closed form exists.

    The result is cached on the family object.
    """
    cache = getattr(family, "_blocker_vertices", None)
    if cache is not None:
        return cache
    if isinstance(family, families.ConnectingFamily):
        if family.graph.directed:
            raise UnsupportedFamilyError("No analytic blocker for directed connecting families")
        cuts = families.CutFamily(family.graph, family.a, family.b)
        vertices = [BlockerVertex(row.dense(family.graph.m), "analytic-cut") for row in cuts.enumerate()]
    elif isinstance(family, families.CutFamily):
        paths = families.ConnectingFamily(family.graph, family.a, family.b)
        vertices = [BlockerVertex(row.dense(family.graph.m), "analytic-path") for row in paths.enumerate()]
    elif isinstance(family, families.SpanningTreeFamily):
        vertices = [part.vertex() for part in extreme_feasible_partitions(family.graph)]
    else:
        vertices = enumerate_blocker_vertices(family, **guards)
    family._blocker_vertices = vertices
    return vertices


def blocker_family(family, **guards):
    """The blocker as a family on the same graph: cuts for paths, paths
    for cuts, feasible partition vectors for trees, enumerated vertices
    otherwise. `guards` bound the enumeration."""
    graph = family.graph
    if isinstance(family, families.ConnectingFamily):
        if graph.directed:
            raise UnsupportedFamilyError("No analytic blocker for directed connecting families")
        return families.CutFamily(graph, family.a, family.b)
    if isinstance(family, families.CutFamily):
        return families.ConnectingFamily(graph, family.a, family.b)
    if isinstance(family, families.SpanningTreeFamily):
        parts = extreme_feasible_partitions(graph)
        return families.ExplicitFamily(graph, [families.UsageRow.from_vector(p.coords, label=p.describe()) for p in parts])
    vertices = blocker_vertices(family, **guards)
    return families.ExplicitFamily(graph, [families.UsageRow.from_vector(v.coords) for v in vertices])


def blocker_density(solution, problem):
    """eta*(e) = sigma(e) rho*(e)**(p-1) / Mod

    :raise NotConvergedError: for a non converged solution
    """
    if not solution.converged:
        raise NotConvergedError("The blocker density needs a converged solution")
    p = problem.p
    if not 1 < p < math.inf:
        raise ValueError("The blocker density is defined for 1 < p < inf")
    rho = solution.rho.values
    if not rho.any() or solution.value <= 0:
        raise ArithmeticError("Vanishing extremal density for a non-trivial family")
    return Density(problem.sigma * rho ** (p - 1.0) / solution.value, Density.BLOCKER)


def verify_duality_product(family, p, options=None, solution=None, **guards):
    """Solve the family at p and its blocker at q with dual weights.

    An already computed primal `solution` is reused.

    :return: report with both moduli, the product of their roots, its
        distance to 1 and the sup-norm distance between eta* and the
        blocker's extremal density
    """
    primal = solver.ModulusProblem(family, p, options)
    if solution is None:
        solution = solver.solve_modulus(primal)
    dual_graph = family.graph.with_weights(primal.sigma_hat)
    blocker = blocker_family(family, **guards).with_graph(dual_graph)
    dual_problem = solver.ModulusProblem(blocker, primal.q, options)
    dual_solution = solver.solve_modulus(dual_problem)
    product = solution.value ** (1.0 / p) * dual_solution.value ** (1.0 / primal.q)
    eta = blocker_density(solution, primal)
    deviation = float(numpy.max(numpy.abs(eta.values - dual_solution.rho.values)))
    report = {"family": family.describe(),
              "p": p,
              "q": primal.q,
              "modulus": solution.value,
              "blocker_modulus": dual_solution.value,
              "product": product,
              "residual": abs(product - 1.0),
              "eta_deviation": deviation,
              "converged": solution.converged and dual_solution.converged}
    logger.info("Duality product at p=%g: %.12g (eta deviation %.3g)", p, product, deviation)
    return report


def verify_p1_pinf_duality(family, **guards):
    """Mod_1(Gamma, sigma) * Mod_inf(blocker, 1/sigma), expected to be 1"""
    graph = family.graph
    vertices = None
    if isinstance(family, (families.ExplicitFamily, families.SpanningTreeFamily)):
        vertices = blocker_vertices(family, **guards)
    one = solver.solve_modulus_p1(solver.ModulusProblem(family, 1), vertices=vertices)
    blocker = blocker_family(family, **guards).with_graph(graph.with_weights(1.0 / graph.weights))
    infinity = solver.solve_modulus_pinf(solver.ModulusProblem(blocker, math.inf))
    product = one.value * infinity.value
    return {"family": family.describe(),
            "modulus_1": one.value,
            "blocker_modulus_inf": infinity.value,
            "product": product,
            "residual": abs(product - 1.0)}


def verify_expected_usage(solution, m=None):
    """max_e |eta*(e) - E_mu[N(gamma, e)]|"""
    if solution.eta is None:
        raise ValueError("The solution carries no blocker density")
    m = len(solution.eta) if m is None else m
    expected = solution.expected_usage(m)
    return float(numpy.max(numpy.abs(solution.eta.values - expected)))


def prob_interp_value(solution, problem):
    """Value identity of the optimal pmf:
    sum_e sigma_hat(e) E_mu[N(gamma, e)]**q against Mod**(-q/p)

    :return: (lhs, rhs, relative residual)
    """
    p, q = problem.p, problem.q
    expected = solution.expected_usage(problem.graph.m)
    lhs = float(numpy.sum(problem.sigma_hat * expected ** q))
    rhs = solution.value ** (-q / p)
    return lhs, rhs, abs(lhs - rhs) / rhs


def is_admissible_vertex(family, coords, max_count=families.DEFAULT_MAX_COUNT):
    rows = family.enumerate(max_count)
    return polyhedron.is_admissible(family.matrix(rows), coords)


def is_extreme_vertex(family, coords, max_count=families.DEFAULT_MAX_COUNT):
    rows = family.enumerate(max_count)
    return polyhedron.is_extreme(family.matrix(rows), coords)


def dominant_check(family, vertices, trials=200, seed=0, objects=3):
    """Smallest inner product between a blocker vertex and random points
    of the dominant of the family, at least 1 when the vertices block it.

    Each point is a random convex combination of `objects` shortest
    objects for random lengths, plus a random nonnegative vector.
    """
    rng = numpy.random.default_rng(seed)
    m = family.graph.m
    coords = numpy.array([v.coords for v in vertices]).reshape(len(vertices), m)
    worst = math.inf
    for _ in range(trials):
        rows = [family.shortest_object(rng.uniform(0.05, 1.0, m))[0] for _ in range(objects)]
        point = rng.dirichlet(numpy.ones(objects)) @ family.matrix(rows)
        point += rng.exponential(0.1, m) * (rng.random(m) < 0.5)
        if len(coords):
            worst = min(worst, float(numpy.min(coords @ point)))
    return worst


def blocker_involution_check(family, max_rows=MAX_ROWS):
    """True when the vertices of the blocker's blocker are objects of the
    family"""
    vertices = blocker_vertices(family, max_rows=max_rows)
    usage = numpy.array([v.coords for v in vertices])
    back = polyhedron.admissible_vertices(usage)
    rows = [row.dense(family.graph.m) for row in family.enumerate(max_count=max_rows)]
    return all(any(numpy.max(numpy.abs(x - row)) <= polyhedron.VERTEX_TOL for row in rows) for x in back)


def spanning_tree_blocker_check(graph, max_rows=200, max_edges=MAX_EDGES):
    """Compare the enumerated blocker of the spanning trees with the
    extreme feasible partition vectors

    :return: (equal, number of enumerated vertices, number of extreme
        partition vectors)
    """
    trees = families.SpanningTreeFamily(graph)
    enumerated = [v.coords for v in enumerate_blocker_vertices(trees, max_edges=max_edges, max_rows=max_rows)]
    partitions = [p.coords for p in extreme_feasible_partitions(graph)]
    equal = polyhedron.same_vectors(enumerated, partitions)
    if not equal:
        logger.warning("Spanning tree blocker of %s: %d enumerated vertices, %d partition vectors",
                       graph, len(enumerated), len(partitions))
    return equal, len(enumerated), len(partitions)


def blocker_report(family, **guards):
    """JSON-ready description of the blocker and a few residuals"""
    graph = family.graph
    vertices = blocker_vertices(family, **guards)
    report = {"family": family.describe(),
              "vertices": [v.to_dict(graph) for v in vertices],
              "counts": {"vertices": len(vertices)},
              "residuals": {}}
    try:
        report["counts"]["objects"] = len(family.enumerate(max_count=guards.get("max_rows", families.DEFAULT_MAX_COUNT)))
        report["residuals"]["dominant"] = dominant_check(family, vertices, trials=50)
    except (GuardExceeded, GraphError):
        logger.debug("Backtrace", exc_info=True)
    if isinstance(family, families.SpanningTreeFamily):
        report["partitions"] = [{"parts": [sorted(graph.label(v) for v in part) for part in p.parts],
                                 "k": p.k, "edges": [graph.edge_key(e) for e in p.edges]}
                                for p in enumerate_feasible_partitions(graph)]
    return report
