# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Dependence of the modulus on the edge weights

``phi(sigma) = Mod_{p,sigma}(Gamma)`` is concave and Lipschitz in sigma,
with partial derivatives ``rho*(e)**p``. Increasing one weight sigma(e)
increases the modulus, decreases rho*(e) and increases eta*(e). The
functions below check these properties numerically.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import csv
import math
import logging

import numpy

from . import solver
from .modutils import parallel_map
from .utils.mathutils import p_norm

logger = logging.getLogger(__name__)

TIGHT_OPTIONS = solver.SolverOptions(rel_tol=1e-10, adm_tol=1e-12)
"""Options of the solves whose values are differentiated"""

SWEEP_OPTIONS = solver.SolverOptions(rel_tol=1e-9, adm_tol=1e-11)


def _solve(family, sigma, p, options):
    graph = family.graph.with_weights(sigma)
    return solver.solve_modulus(solver.ModulusProblem(family.with_graph(graph), p, options))


class SensitivityReport(object):
    """Container of the sensitivity diagnostics

    Only the fields of the check that produced the report are filled.
    """

    def __init__(self, kind, p, family):
        self.kind = kind
        self.p = p
        self.family = family
        self.gradient = None
        self.analytic = None
        self.tolerance = None
        self.curvature = None
        self.max_relative_deviation = None
        self.sweep = []
        self.violations = []
        self.concavity = []
        self.passed = True

    def to_dict(self):
        doc = {"kind": self.kind, "p": self.p, "family": self.family, "passed": self.passed}
        if self.gradient is not None:
            doc.update({"gradient": self.gradient.tolist(),
                        "analytic": self.analytic.tolist(),
                        "tolerance": self.tolerance.tolist(),
                        "curvature": self.curvature.tolist(),
                        "max_relative_deviation": self.max_relative_deviation})
        if self.sweep:
            doc["sweep"] = self.sweep
            doc["violations"] = self.violations
        if self.concavity:
            doc["concavity"] = self.concavity
            doc["min_slack"] = min(r["slack"] for r in self.concavity)
        return doc

    def to_csv(self, stream):
        """Sweep table: sigma_e, modulus, rho_e, eta_e"""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["sigma_e", "modulus", "rho_e", "eta_e"])
        for record in self.sweep:
            writer.writerow(["%.12g" % record[k] for k in ("sigma_e", "modulus", "rho_e", "eta_e")])


def gradient_check(family, p, h=None, edges=None, options=None, jobs=None):
    """Central differences of phi against rho*(e)**p.

    The tolerance of edge e is ``max(1e-3 rho*(e)**p, 10 eps phi / h + C h**2)``
    where eps is the relative accuracy of the solves and C is estimated
    from the difference quotients at steps h and 2h.

    :param h: step, 1e-4 sigma(e) by default; at most sigma(e)/4
    :param edges: edge ids to check, all by default
    """
    options = options or TIGHT_OPTIONS
    sigma = family.graph.weights
    edges = range(family.graph.m) if edges is None else list(edges)
    base = _solve(family, sigma, p, options)
    steps = {}
    for e in edges:
        step = 1e-4 * sigma[e] if h is None else float(h)
        steps[e] = min(step, sigma[e] / 4.0)

    jobs_list = [(e, k) for e in edges for k in (-2, -1, 1, 2)]

    def work(item):
        e, k = item
        shifted = sigma.copy()
        shifted[e] += k * steps[e]
        return _solve(family, shifted, p, options).value
    values = dict(zip(jobs_list, parallel_map(work, jobs_list, jobs)))

    report = SensitivityReport("gradient", p, family.describe())
    rho = base.rho.values
    gradient, analytic, tolerance, curvature = [], [], [], []
    for e in edges:
        step = steps[e]
        d1 = (values[(e, 1)] - values[(e, -1)]) / (2 * step)
        d2 = (values[(e, 2)] - values[(e, -2)]) / (4 * step)
        c = abs(d2 - d1) / (3 * step ** 2)
        expected = rho[e] ** p
        tol = max(1e-3 * expected, 10 * options.rel_tol * base.value / step + c * step ** 2)
        gradient.append(d1)
        analytic.append(expected)
        tolerance.append(tol)
        curvature.append(c)
    report.gradient = numpy.array(gradient)
    report.analytic = numpy.array(analytic)
    report.tolerance = numpy.array(tolerance)
    report.curvature = numpy.array(curvature)
    deviation = numpy.abs(report.gradient - report.analytic)
    scale = numpy.maximum(report.analytic, 1e-300)
    report.max_relative_deviation = float(numpy.max(deviation / scale)) if len(edges) else 0.0
    report.passed = bool(numpy.all(deviation <= report.tolerance))
    if not report.passed:
        logger.warning("Gradient check failed on edges %s", [e for e, ok in zip(edges, deviation <= report.tolerance) if not ok])
    return report


def monotonicity_sweep(family, p, edge, grid, options=None, jobs=None):
    """Solve along increasing values of sigma(edge), the other weights
    fixed, and flag decreases of Mod and eta*(edge) and increases of
    rho*(edge) beyond 10 eps relative slack"""
    options = options or SWEEP_OPTIONS
    grid = [float(v) for v in grid]
    if any(b <= a for a, b in zip(grid[:-1], grid[1:])):
        raise ValueError("The sweep grid must be increasing")
    sigma = family.graph.weights

    def work(value):
        shifted = sigma.copy()
        shifted[edge] = value
        return _solve(family, shifted, p, options)
    solutions = parallel_map(work, grid, jobs)

    report = SensitivityReport("monotonicity", p, family.describe())
    for value, solution in zip(grid, solutions):
        report.sweep.append({"sigma_e": value,
                             "modulus": solution.value,
                             "rho_e": float(solution.rho[edge]),
                             "eta_e": float(solution.eta[edge]),
                             "converged": solution.converged})
    slack = 10 * options.rel_tol
    directions = {"modulus": 1, "rho_e": -1, "eta_e": 1}
    for before, after in zip(report.sweep[:-1], report.sweep[1:]):
        for name, sign in directions.items():
            change = sign * (after[name] - before[name])
            allowed = slack * max(abs(after[name]), abs(before[name]), 1.0)
            if change < -allowed:
                report.violations.append({"quantity": name, "sigma_e": after["sigma_e"], "magnitude": -change})
    report.passed = not report.violations
    return report


def concavity_check(family, p, sigma0, sigma1, ts=None, options=None, jobs=None):
    """Slack phi(t s1 + (1-t) s0) - (t phi(s1) + (1-t) phi(s0)) on a grid"""
    options = options or SWEEP_OPTIONS
    sigma0 = numpy.asarray(sigma0, dtype=numpy.float64)
    sigma1 = numpy.asarray(sigma1, dtype=numpy.float64)
    if ts is None:
        ts = numpy.linspace(0.1, 0.9, 9)
    points = [0.0, 1.0] + [float(t) for t in ts]
    values = parallel_map(lambda t: _solve(family, t * sigma1 + (1 - t) * sigma0, p, options).value, points, jobs)
    phi0, phi1 = values[0], values[1]
    report = SensitivityReport("concavity", p, family.describe())
    for t, value in zip(points[2:], values[2:]):
        report.concavity.append({"t": t, "modulus": value, "slack": value - (t * phi1 + (1 - t) * phi0)})
    tolerance = 10 * options.rel_tol * max(phi0, phi1)
    report.passed = all(r["slack"] >= -tolerance for r in report.concavity)
    return report


def lipschitz_witness(family, p, sigma1, sigma2, options=None):
    """|phi(s1) - phi(s2)| against N_min**-p ||s1 - s2||_1"""
    options = options or SWEEP_OPTIONS
    phi1 = _solve(family, sigma1, p, options).value
    phi2 = _solve(family, sigma2, p, options).value
    lhs = abs(phi1 - phi2)
    rhs = family.n_min ** (-p) * float(numpy.sum(numpy.abs(numpy.asarray(sigma1) - numpy.asarray(sigma2))))
    tolerance = options.rel_tol * max(phi1, phi2)
    return {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs + tolerance}


def rho_continuity(family, p, edge, steps=(1e-1, 1e-2, 1e-3), options=None):
    """||rho*(sigma + h 1_e) - rho*(sigma)||_p for decreasing h

    :return: dict with the deviations and whether they decrease
    """
    options = options or TIGHT_OPTIONS
    sigma = family.graph.weights
    base = _solve(family, sigma, p, options).rho.values
    deviations = []
    for h in steps:
        shifted = sigma.copy()
        shifted[edge] += h
        deviations.append(p_norm(_solve(family, shifted, p, options).rho.values - base, p))
    decreasing = all(b <= a + 1e-9 for a, b in zip(deviations[:-1], deviations[1:]))
    return {"steps": list(steps), "deviations": deviations, "decreasing": decreasing}
