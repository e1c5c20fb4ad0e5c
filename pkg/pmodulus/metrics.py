# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Graph metrics from the modulus of connecting families

``delta_p(a, b) = Mod_p(Gamma(a, b))**(-q/p)`` is a metric on the vertices
of a connected undirected graph. It equals the effective resistance at
p = 2 and tends to the hop distance as p grows, also on weighted
graphs since the weights enter through ``sigma**(1/p)``.
``Mod_p(Gamma(a, b))**-1`` tends to the inverse min cut, an ultrametric,
as p decreases to 1.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import csv
import math
import logging
import itertools

import numpy

from . import oracles
from . import solver
from .families import ConnectingFamily, CutFamily
from .graph import Graph
from .modutils import GraphError, parallel_map
from .utils.mathutils import relative_difference

logger = logging.getLogger(__name__)


class MetricReport(object):
    """All pairs distance matrix and its diagnostics

    :ivar p: exponent
    :ivar kind: "delta_p" or "mod_inverse"
    :ivar labels: vertex labels, order of the matrix
    :ivar matrix: (n, n) distances
    :ivar triangle_slack: min over triples of d(a,c) + d(c,b) - d(a,b)
    :ivar comparisons: max relative deviation from classical distances
    :ivar converged: every pair solve converged
    """

    def __init__(self, p, kind, labels, matrix, comparisons=None, converged=True):
        self.p = p
        self.kind = kind
        self.labels = list(labels)
        self.matrix = numpy.asarray(matrix, dtype=numpy.float64)
        self.triangle_slack = triangle_slack(self.matrix)
        self.comparisons = comparisons or {}
        self.converged = converged

    def __repr__(self):
        return "<MetricReport %s p=%g n=%d slack=%.3g>" % (self.kind, self.p, len(self.labels), self.triangle_slack)

    def distance(self, a, b):
        return float(self.matrix[self.labels.index(str(a)), self.labels.index(str(b))])

    def symmetry_error(self):
        return float(numpy.max(numpy.abs(self.matrix - self.matrix.T)))

    def to_dict(self):
        return {"p": self.p,
                "kind": self.kind,
                "labels": self.labels,
                "matrix": self.matrix.tolist(),
                "triangle_slack": self.triangle_slack,
                "comparisons": self.comparisons,
                "converged": self.converged}

    def to_csv(self, stream):
        """Matrix with vertex labels as header row and first column"""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow([""] + self.labels)
        for label, row in zip(self.labels, self.matrix):
            writer.writerow([label] + ["%.12g" % v for v in row])


def triangle_slack(matrix):
    """min over (a, b, c) of d(a, c) + d(c, b) - d(a, b)"""
    d = numpy.asarray(matrix)
    if len(d) == 0:
        return 0.0
    slack = d[:, None, :] + d.T[None, :, :] - d[:, :, None]
    return float(slack.min())


def _check_metric_graph(g):
    g.check_undirected("Graph metrics")
    g.check_connected("Graph metrics")


def _pairs(g):
    return list(itertools.combinations(range(g.n), 2))


def _pair_moduli(g, p, options, jobs):
    def work(pair):
        return solver.solve(solver.ModulusProblem(ConnectingFamily(g, pair[0], pair[1]), p, options))
    pairs = _pairs(g)
    return pairs, parallel_map(work, pairs, jobs)


def _fill(n, pairs, values):
    matrix = numpy.zeros((n, n))
    for (i, j), value in zip(pairs, values):
        matrix[i, j] = matrix[j, i] = value
    return matrix


def classical_distances(g, jobs=None):
    """Hop distance, effective resistance and inverse min cut matrices"""
    pairs = _pairs(g)

    def work(pair):
        i, j = pair
        return (g.hop_distance(i, j),
                oracles.effective_resistance(g, i, j),
                1.0 / oracles.min_cut(g, i, j).value)
    values = parallel_map(work, pairs, jobs)
    return {name: _fill(g.n, pairs, [v[k] for v in values])
            for k, name in enumerate(("hop", "resistance", "min_cut"))}


def _max_relative(a, b, pairs):
    if not pairs:
        return 0.0
    return max(relative_difference(a[i, j], b[i, j]) for i, j in pairs)


def delta_p_matrix(g, p, options=None, jobs=None):
    """delta_p over all vertex pairs

    The report compares the matrix with the hop distance, the effective
    resistance and 1/MC.
    """
    _check_metric_graph(g)
    p = float(p)
    if not 1 < p < math.inf:
        raise ValueError("delta_p needs 1 < p < inf, got %g" % p)
    pairs, solutions = _pair_moduli(g, p, options, jobs)
    exponent = -1.0 / (p - 1.0)
    matrix = _fill(g.n, pairs, [s.value ** exponent for s in solutions])
    classical = classical_distances(g, jobs)
    comparisons = {name: _max_relative(matrix, other, pairs) for name, other in classical.items()}
    return MetricReport(p, "delta_p", g.labels, matrix, comparisons, all(s.converged for s in solutions))


def mod_inverse_metric(g, p, options=None, jobs=None):
    """Mod_p(Gamma(a, b))**-1 over all pairs, a metric for 1 < p < 2"""
    _check_metric_graph(g)
    p = float(p)
    if not 1 < p < 2:
        raise ValueError("The inverse modulus metric needs 1 < p < 2, got %g" % p)
    pairs, solutions = _pair_moduli(g, p, options, jobs)
    matrix = _fill(g.n, pairs, [1.0 / s.value for s in solutions])
    cuts = _fill(g.n, pairs, [1.0 / oracles.min_cut(g, i, j).value for i, j in pairs])
    comparisons = {"min_cut": _max_relative(matrix, cuts, pairs)}
    return MetricReport(p, "mod_inverse", g.labels, matrix, comparisons, all(s.converged for s in solutions))


def min_cut_matrix(g):
    """MC(a, b) over all pairs, zero on the diagonal"""
    _check_metric_graph(g)
    pairs = _pairs(g)
    return _fill(g.n, pairs, [oracles.min_cut(g, i, j).value for i, j in pairs])


def ultrametric_check(g):
    """Worst slack of d(a, b) <= max(d(a, c), d(c, b)) for d = 1/MC

    :return: (slack, distance matrix); the slack is >= 0 up to roundoff
    """
    cuts = min_cut_matrix(g)
    d = numpy.zeros_like(cuts)
    off = ~numpy.eye(g.n, dtype=bool)
    d[off] = 1.0 / cuts[off]
    if g.n < 3:
        return 0.0, d
    slack = numpy.maximum(d[:, None, :], d.T[None, :, :]) - d[:, :, None]
    return float(slack.min()), d


def anti_snowflake_witness(p, eps, options=None):
    """The path a - c - b shows that delta_p**(1+eps) is no metric.

    :return: dict with the three distances raised to 1+eps and whether the
        triangle inequality fails
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    g = Graph.from_edges([("a", "c"), ("c", "b")])
    exponent = -1.0 / (float(p) - 1.0)

    def delta(u, v):
        return solver.modulus(ConnectingFamily(g, u, v), p, options).value ** exponent

    ab, ac, cb = delta("a", "b") ** (1 + eps), delta("a", "c") ** (1 + eps), delta("c", "b") ** (1 + eps)
    violated = ab > (ac + cb) * (1 + 1e-6)
    return {"graph": "path a-c-b",
            "p": p,
            "eps": eps,
            "triple": ["a", "b", "c"],
            "d_ab": ab,
            "d_ac": ac,
            "d_cb": cb,
            "violation": ab - (ac + cb),
            "violated": bool(violated)}


def delta_p_limit_classification(g):
    """Pointwise limit of delta_p as p decreases to 1 on unweighted graphs:
    0 when MC(a, b) > 1, 1 when MC(a, b) = 1 and inf when MC(a, b) < 1

    :return: (n, n) matrix of limits
    """
    if not numpy.all(g.weights == 1.0):
        raise GraphError("The p -> 1 limit classification is for unweighted graphs")
    cuts = min_cut_matrix(g)
    limits = numpy.zeros_like(cuts)
    for i, j in _pairs(g):
        mc = round(cuts[i, j], 9)
        value = 0.0 if mc > 1 else (1.0 if mc == 1 else math.inf)
        limits[i, j] = limits[j, i] = value
    return limits


def cut_containment_check(g, a, b, c, max_count=10000):
    """Every minimal ab-cut is a minimal ac-cut or a minimal cb-cut

    :return: (holds, number of ab-cuts)
    """
    ab = [frozenset(edges) for _, edges in CutFamily(g, a, b).minimal_cuts(max_count)]
    ac = {frozenset(edges) for _, edges in CutFamily(g, a, c).minimal_cuts(max_count)}
    cb = {frozenset(edges) for _, edges in CutFamily(g, c, b).minimal_cuts(max_count)}
    holds = all(cut in ac or cut in cb for cut in ab)
    return holds, len(ab)
