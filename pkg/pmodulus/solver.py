# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Computation of the p-modulus of a family

The modulus is the value of the convex program::

    minimize   E(rho) = sum_e sigma(e) rho(e)**p
    subject to N rho >= 1, rho >= 0

For ``1 < p < inf`` it is solved by constraint generation: a restricted
family ``Gamma'`` is grown one object at a time with the shortest-object
oracle, and every restricted problem is solved through its Lagrangian
dual::

    g(lambda) = sum_i lambda_i - (p - 1) sum_e sigma(e) rho_lambda(e)**p
    rho_lambda(e) = ((N^T lambda)(e) / (p sigma(e)))**(1 / (p - 1))

Every iteration yields a certified lower bound ``L = g(lambda)`` (the
restricted modulus never exceeds the full one) and an upper bound
``U = E(rho) / l_min**p`` from the exactly admissible density
``rho / l_min``, ``l_min`` being the oracle answer.

The endpoints use closed forms: ``p = 1`` minimizes ``sigma . x`` over
the vertices of the Fulkerson blocker and ``p = inf`` is the reciprocal
of the shortest ``1/w``-length.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import math
import logging

import numpy
import scipy.optimize

from . import families
from . import oracles
from .graph import Density, as_vector
from .modutils import UnsupportedFamilyError

logger = logging.getLogger(__name__)

INNER_TOL_FLOOR = 1e-14


class SolverOptions(object):
    """Tolerances and iteration caps

    :param float rel_tol: relative duality gap ``(U - L) / U`` to reach
    :param float adm_tol: admissibility slack of the last oracle answer
    :param int outer_cap: outer iterations, ``max(10 m, 50)`` if None
    :param int inner_cap: inner sweeps per restricted solve
    :param float inner_tol: restricted KKT residual, ``rel_tol / 10`` if None
    """

    FIELDS = ("rel_tol", "adm_tol", "outer_cap", "inner_cap", "inner_tol")

    def __init__(self, rel_tol=1e-6, adm_tol=1e-8, outer_cap=None, inner_cap=100000, inner_tol=None):
        if not rel_tol > 0 or not adm_tol > 0:
            raise ValueError("Tolerances must be positive")
        self.rel_tol = float(rel_tol)
        self.adm_tol = float(adm_tol)
        self.outer_cap = outer_cap
        self.inner_cap = int(inner_cap)
        self.inner_tol = inner_tol

    def outer_limit(self, m):
        if self.outer_cap is None:
            return max(10 * m, 50)
        return int(self.outer_cap)

    def inner_limit(self):
        if self.inner_tol is None:
            return self.rel_tol / 10.0
        return float(self.inner_tol)

    def replace(self, **kwargs):
        values = self.to_dict()
        values.update(kwargs)
        return SolverOptions(**values)

    def to_dict(self):
        return {name: getattr(self, name) for name in self.FIELDS}

    def __repr__(self):
        return "SolverOptions(%s)" % ", ".join("%s=%r" % i for i in self.to_dict().items())


class ModulusProblem(object):
    """A family, an exponent and the options of the solve.

    The weights sigma are the ones of the family's graph.
    """

    def __init__(self, family, p, options=None):
        p = float(p)
        if math.isnan(p) or p < 1:
            raise ValueError("The exponent p must be in [1, inf], got %r" % p)
        self.family = family
        self.p = p
        self.options = options or SolverOptions()

    @property
    def graph(self):
        return self.family.graph

    @property
    def sigma(self):
        return self.family.graph.weights

    @property
    def q(self):
        """Conjugate exponent, 1/p + 1/q = 1"""
        if self.p == 1:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def sigma_hat(self):
        """Dual weights sigma**(-q/p)"""
        return dual_weights(self.sigma, self.p)

    def __repr__(self):
        return "<ModulusProblem p=%g %r>" % (self.p, self.family)


def dual_weights(sigma, p):
    """sigma**(-q/p); sigma**-1 for both endpoints p = 1 and p = inf"""
    sigma = numpy.asarray(sigma, dtype=numpy.float64)
    if p == 1 or math.isinf(p):
        return 1.0 / sigma
    return sigma ** (-1.0 / (p - 1.0))


def energy(rho, sigma, p):
    """p-energy sum sigma rho**p, or max sigma rho for p = inf"""
    rho = numpy.asarray(rho, dtype=numpy.float64)
    sigma = numpy.asarray(sigma, dtype=numpy.float64)
    if math.isinf(p):
        return float(numpy.max(sigma * rho)) if len(rho) else 0.0
    return float(numpy.sum(sigma * rho ** p))


def rho_from_lambda(usage, lambdas, sigma, p):
    """Minimizer of the Lagrangian, ((N^T lambda) / (p sigma))**(1/(p-1))"""
    s = usage.T @ lambdas
    return (numpy.maximum(s, 0.0) / (p * sigma)) ** (1.0 / (p - 1.0))


def dual_value(usage, lambdas, sigma, p):
    """Lagrangian dual g(lambda) of the family restricted to `usage` rows"""
    rho = rho_from_lambda(usage, lambdas, sigma, p)
    return float(numpy.sum(lambdas) - (p - 1.0) * numpy.sum(sigma * rho ** p))


def clarkson_radius(upper, lower, sigma, p):
    """Bound on the p-distance between an admissible density of energy
    `upper` and the extremal density, given a lower bound of the modulus"""
    if math.isinf(p) or p == 1:
        return math.nan
    q = p / (p - 1.0)
    big = max(p, q)
    sigma_min = float(numpy.min(sigma))
    spread = max(0.0, upper ** (big / p) - max(lower, 0.0) ** (big / p))
    return float((2.0 ** (big - 1.0) * sigma_min ** (-big / p) * spread) ** (1.0 / big))


class ModulusSolution(object):
    """Result of a modulus computation

    :ivar value: modulus estimate, midpoint of the certified bounds
    :ivar lower: certified lower bound
    :ivar upper: certified upper bound
    :ivar rho: near optimal admissible density, :class:`Density`
    :ivar rows: active subfamily, list of :class:`UsageRow`
    :ivar lambdas: multipliers of `rows`
    :ivar pmf: normalized multipliers, a probability on `rows`
    :ivar eta: blocker density sigma rho**(p-1) / Mod, None at endpoints
    :ivar radius: accuracy radius of `rho` in p-norm
    """

    def __init__(self, p, lower, upper, rho, rows, lambdas, eta=None, iterations=0,
                 oracle_calls=0, converged=True, radius=math.nan, family=None):
        self.p = float(p)
        self.lower = float(lower)
        self.upper = float(upper)
        self.value = 0.5 * (self.lower + self.upper)
        self.rho = rho if isinstance(rho, Density) else Density(rho)
        self.rows = list(rows)
        self.lambdas = numpy.asarray(lambdas, dtype=numpy.float64)
        total = self.lambdas.sum()
        if total > 0:
            self.pmf = self.lambdas / total
        else:
            self.pmf = numpy.zeros(len(self.lambdas))
        self.eta = eta
        self.iterations = iterations
        self.oracle_calls = oracle_calls
        self.converged = converged
        self.radius = radius
        self.family = family

    def __repr__(self):
        status = "converged" if self.converged else "NOT converged"
        return "<ModulusSolution p=%g value=%.10g [%.10g, %.10g] %s>" % (self.p, self.value, self.lower, self.upper, status)

    @property
    def gap(self):
        """Relative gap (U - L) / U"""
        if self.upper == 0:
            return 0.0
        return (self.upper - self.lower) / self.upper

    def expected_usage(self, m):
        """E_mu[N(gamma, .)], the usage averaged by the pmf"""
        result = numpy.zeros(m)
        for prob, row in zip(self.pmf, self.rows):
            result[list(row.edges)] += prob * numpy.asarray(row.values)
        return result

    def to_dict(self, graph):
        doc = {"value": self.value,
               "lower": self.lower,
               "upper": self.upper,
               "p": self.p,
               "family": self.family,
               "rho": self.rho.to_dict(graph),
               "eta": None if self.eta is None else self.eta.to_dict(graph),
               "pmf": [{"label": row.describe(graph), "prob": float(prob)} for row, prob in zip(self.rows, self.pmf)],
               "rows": [{"edges": row.to_dict(graph), "lambda": float(lam)} for row, lam in zip(self.rows, self.lambdas)],
               "radius": self.radius,
               "iterations": self.iterations,
               "oracle_calls": self.oracle_calls,
               "converged": self.converged}
        return doc

    @classmethod
    def from_dict(cls, doc, graph):
        """Rebuild a solution written by :meth:`to_dict` for `graph`"""
        def vector(mapping, role):
            values = numpy.zeros(graph.m)
            for key, value in mapping.items():
                values[graph.find_edge(key)] = float(value)
            return Density(values, role)
        rows, lambdas = [], []
        for record in doc.get("rows", []):
            rows.append(families.UsageRow({graph.find_edge(k): v for k, v in record["edges"].items()}))
            lambdas.append(float(record["lambda"]))
        labels = [record.get("label") for record in doc.get("pmf", [])]
        for row, label in zip(rows, labels):
            row.label = label
        eta = doc.get("eta")
        return cls(float(doc["p"]), float(doc["lower"]), float(doc["upper"]),
                   vector(doc["rho"], Density.PRIMAL), rows, lambdas,
                   eta=None if eta is None else vector(eta, Density.BLOCKER),
                   iterations=doc.get("iterations", 0), oracle_calls=doc.get("oracle_calls", 0),
                   converged=bool(doc.get("converged", True)), radius=float(doc.get("radius", math.nan)),
                   family=doc.get("family"))


class _RestrictedDual(object):
    """Lagrangian dual of the family restricted to a growing row set.

    Maximized by exact coordinate ascent, polished by projected Newton
    steps on the rows with positive multiplier.
    """

    def __init__(self, sigma, p):
        self.sigma = numpy.asarray(sigma, dtype=numpy.float64)
        self.p = p
        self.exponent = 1.0 / (p - 1.0)
        self.usage = numpy.zeros((0, len(sigma)))
        self.supports = []
        self.lambdas = numpy.zeros(0)
        self.sweeps = 0

    def add_row(self, row):
        self.usage = numpy.vstack([self.usage, row.dense(len(self.sigma))])
        self.supports.append((numpy.array(row.edges), numpy.array(row.values)))
        self.lambdas = numpy.append(self.lambdas, 0.0)

    def rho(self, lambdas=None):
        lambdas = self.lambdas if lambdas is None else lambdas
        return rho_from_lambda(self.usage, lambdas, self.sigma, self.p)

    def value(self, lambdas=None):
        lambdas = self.lambdas if lambdas is None else lambdas
        return dual_value(self.usage, lambdas, self.sigma, self.p)

    def residual(self, lambdas=None):
        """Restricted KKT residual: primal infeasibility and complementarity"""
        lambdas = self.lambdas if lambdas is None else lambdas
        ell = self.usage @ self.rho(lambdas)
        infeasible = float(numpy.max(numpy.maximum(0.0, 1.0 - ell)))
        total = lambdas.sum()
        slack = float(numpy.dot(lambdas, numpy.abs(1.0 - ell)) / total) if total > 0 else math.inf
        return max(infeasible, slack)

    def _coordinate(self, i, s):
        idx, val = self.supports[i]
        sig = self.sigma[idx]
        base = numpy.maximum(s[idx] - val * self.lambdas[i], 0.0)

        def excess(t):
            return float(numpy.dot(val, ((base + val * t) / (self.p * sig)) ** self.exponent)) - 1.0

        if excess(0.0) >= 0:
            t = 0.0
        else:
            # a single edge of the row already reaches length 1 at hi
            hi = float(numpy.min(self.p * sig * val ** (-self.p)))
            current = self.lambdas[i]
            lo = None
            if 0 < current < hi:
                if excess(current) < 0:
                    lo = current
                else:
                    hi = current
            if lo is None:
                lo = hi * 1e-3
                while excess(lo) >= 0 and lo > 1e-300:
                    lo *= 1e-3

            # multipliers span many decades for large p: bracket in log space.
            # The end points are evaluated as brentq sees them, exp(log(x)) != x
            def excess_log(u):
                return excess(math.exp(u))

            u_lo, u_hi = math.log(lo), math.log(hi)
            f_lo, f_hi = excess_log(u_lo), excess_log(u_hi)
            if f_hi <= 0:
                t = math.exp(u_hi)
            elif f_lo >= 0:
                t = math.exp(u_lo)
            else:
                u = scipy.optimize.brentq(excess_log, u_lo, u_hi, xtol=1e-15, rtol=1e-15, maxiter=200)
                t = math.exp(u)
        s[idx] = base + val * t
        self.lambdas[i] = t

    def sweep(self):
        s = self.usage.T @ self.lambdas
        for i in range(len(self.lambdas)):
            self._coordinate(i, s)
        self.sweeps += 1

    def newton(self):
        """One projected Newton step; returns True when it was accepted"""
        lambdas = self.lambdas
        free = lambdas > 0
        if not free.any():
            return False
        s = self.usage.T @ lambdas
        rho = (numpy.maximum(s, 0.0) / (self.p * self.sigma)) ** self.exponent
        grad = 1.0 - self.usage @ rho
        weight = numpy.zeros_like(s)
        positive = s > 0
        weight[positive] = rho[positive] / ((self.p - 1.0) * s[positive])
        block = self.usage[free]
        hessian = (block * weight) @ block.T
        direction = numpy.linalg.lstsq(hessian, grad[free], rcond=None)[0]
        if not numpy.all(numpy.isfinite(direction)):
            return False
        start_value = self.value(lambdas)
        start_residual = self.residual(lambdas)
        step = 1.0
        for _ in range(30):
            trial = lambdas.copy()
            trial[free] = numpy.maximum(0.0, lambdas[free] + step * direction)
            trial_value = self.value(trial)
            slope = float(numpy.dot(grad, trial - lambdas))
            if trial_value >= start_value + 1e-4 * slope or \
                    (trial_value >= start_value - 1e-14 * abs(start_value) and
                     self.residual(trial) < 0.9 * start_residual):
                self.lambdas = trial
                return True
            step *= 0.5
        return False

    def solve(self, tol, cap):
        """Maximize until the KKT residual is below `tol` or `cap` sweeps"""
        residual = self.residual()
        count = 0
        while residual > tol and count < cap:
            self.sweep()
            count += 1
            residual = self.residual()
            if residual <= tol:
                break
            for _ in range(20):
                if not self.newton():
                    break
                residual = self.residual()
                if residual <= tol:
                    break
        return residual


def _condition_warning(p):
    if p < 1.1 or p > 20:
        logger.warning("p=%g is badly conditioned: the exponent 1/(p-1) amplifies numerical noise", p)


def solve_modulus(problem):
    """Modulus for 1 < p < inf by constraint generation

    :param ModulusProblem problem: family, exponent and options
    :rtype: ModulusSolution
    """
    p = problem.p
    if not 1 < p < math.inf:
        raise ValueError("solve_modulus needs 1 < p < inf, got %g" % p)
    _condition_warning(p)
    family = problem.family
    options = problem.options
    sigma = problem.sigma
    m = problem.graph.m

    restricted = _RestrictedDual(sigma, p)
    keys = set()
    row, _ = family.shortest_object(numpy.full(m, 1.0 / family.n_min))
    restricted.add_row(row)
    rows = [row]
    keys.add(row.key)
    oracle_calls = 1

    inner_tol = options.inner_limit()
    best_upper, best_rho = math.inf, None
    best_lower = 0.0
    converged = False
    iterations = 0
    ell = 0.0
    # multipliers of the restricted dual carry over between iterations
    for iterations in range(1, options.outer_limit(m) + 1):
        restricted.solve(inner_tol, options.inner_cap)
        rho = restricted.rho()
        lower = restricted.value()
        row, ell = family.shortest_object(rho)
        oracle_calls += 1
        if ell > 0:
            upper = energy(rho, sigma, p) / ell ** p
            if upper < best_upper:
                best_upper, best_rho = upper, rho / ell
        best_lower = max(best_lower, lower)
        gap = (best_upper - best_lower) / best_upper if best_upper < math.inf else math.inf
        admissible = ell >= 1.0 - options.adm_tol
        logger.debug("iteration %d: rows=%d lower=%.12g upper=%.12g gap=%.3g min length=%.12g",
                     iterations, len(rows), best_lower, best_upper, gap, ell)
        if admissible and gap <= options.rel_tol:
            converged = True
            break
        if admissible or row.key in keys:
            if inner_tol <= INNER_TOL_FLOOR:
                logger.debug("Inner tolerance at its floor, no further progress possible")
                break
            inner_tol = max(inner_tol / 100.0, INNER_TOL_FLOOR)
        else:
            restricted.add_row(row)
            rows.append(row)
            keys.add(row.key)

    if not converged:
        logger.warning("Modulus of %s at p=%g not converged after %d iterations (gap %.3g)",
                       family.describe(), p, iterations, gap)
    if best_rho is None:
        best_rho = restricted.rho()
        best_upper = energy(best_rho, sigma, p)
    value = 0.5 * (best_lower + best_upper)
    eta = Density(sigma * best_rho ** (p - 1.0) / value, Density.BLOCKER) if value > 0 else None
    if restricted.lambdas.sum() <= 0:
        logger.error("All multipliers vanish for a non-trivial family")
    return ModulusSolution(p, best_lower, best_upper, best_rho, rows, restricted.lambdas.copy(), eta=eta,
                           iterations=iterations, oracle_calls=oracle_calls, converged=converged,
                           radius=clarkson_radius(best_upper, best_lower, sigma, p), family=family.describe())


def _exact_solution(problem, value, rho, row, oracle_calls=1):
    return ModulusSolution(problem.p, value, value, rho, [row], [1.0], iterations=1,
                           oracle_calls=oracle_calls, converged=True, family=problem.family.describe())


def solve_modulus_p1(problem, vertices=None):
    """Modulus for p = 1, the minimum of sigma . x over the blocker vertices.

    * connect: minimum ab-cut with capacities sigma
    * cut: shortest ab-path with lengths sigma
    * tree: min sigma(E_P) / (k_P - 1) over feasible partitions
    * explicit: min over the enumerated blocker vertices

    The density of the solution is the minimizing vertex and its single
    row is the vertex itself.

    :param vertices: precomputed blocker vertices (explicit and tree
        families), enumerated if None
    """
    if problem.p != 1:
        raise ValueError("solve_modulus_p1 needs p = 1")
    from . import duality
    family = problem.family
    graph = problem.graph
    sigma = problem.sigma
    if isinstance(family, families.ConnectingFamily):
        if graph.directed:
            raise UnsupportedFamilyError("p=1 is not available for directed connecting families")
        cut = oracles.min_cut(graph, family.a, family.b, sigma)
        row = families.UsageRow.indicator(cut.edges)
        return _exact_solution(problem, cut.value, row.dense(graph.m), row)
    if isinstance(family, families.CutFamily):
        path = oracles.shortest_path_length(graph, family.a, family.b, sigma)
        row = families.UsageRow.indicator(path.edges)
        return _exact_solution(problem, path.length, row.dense(graph.m), row)
    if isinstance(family, (families.SpanningTreeFamily, families.ExplicitFamily)):
        if vertices is None:
            vertices = duality.blocker_vertices(family)
        costs = numpy.array([numpy.dot(sigma, v.coords) for v in vertices])
        best = int(numpy.argmin(costs))
        row = families.UsageRow.from_vector(vertices[best].coords)
        return _exact_solution(problem, float(costs[best]), vertices[best].coords, row, oracle_calls=len(vertices))
    raise UnsupportedFamilyError("No p=1 method for %s" % family.describe())


def solve_modulus_pinf(problem):
    """Modulus for p = inf with weights w = sigma: the reciprocal of the
    smallest sum_e N(gamma, e) / w(e); the optimal density is Mod / w"""
    if not math.isinf(problem.p):
        raise ValueError("solve_modulus_pinf needs p = inf")
    w = problem.sigma
    row, length = problem.family.shortest_object(1.0 / w)
    value = 1.0 / length
    return _exact_solution(problem, value, value / w, row)


def solve(problem):
    """Dispatch on the exponent: p = 1, 1 < p < inf or p = inf"""
    if problem.p == 1:
        return solve_modulus_p1(problem)
    if math.isinf(problem.p):
        return solve_modulus_pinf(problem)
    return solve_modulus(problem)


def modulus(family, p, options=None):
    """Shortcut for ``solve(ModulusProblem(family, p, options))``"""
    return solve(ModulusProblem(family, p, options))


def density_from_rows(rows, lambdas, sigma, p):
    """KKT reconstruction of rho from multipliers on `rows`"""
    sigma = as_vector(sigma, len(sigma), "sigma")
    usage = numpy.zeros((len(rows), len(sigma)))
    for i, row in enumerate(rows):
        usage[i, list(row.edges)] = row.values
    return rho_from_lambda(usage, numpy.asarray(lambdas, dtype=numpy.float64), sigma, p)
