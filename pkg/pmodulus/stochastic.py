# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Monte Carlo experiments on randomly weighted graphs

The weights are independent exponential variables, whose joint survival
function is log-concave. With ``E G`` the graph weighted by the expected
values, the expected modulus is bracketed by::

    E Mod_1(sigma) >= N_min Mod_{2, E sigma}
    E Mod_1(sigma) >= N_min E sigma(E)**(1 - 2/p) Mod_{p, E sigma}**(2/p)    1 < p <= 2
    E Mod_p(sigma) <= Mod_{p, E sigma}                                       (concavity)
    E Mod_p(sigma) >= N_min**p / E sigma(E) * Mod_{p, E sigma}**2            1 <= p <= 2

Every inequality is accepted within three standard errors of the mean.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "stable"
__docformat__ = 'restructuredtext'

import math
import logging

import numpy

from . import solver
from . import duality
from . import families
from .graph import Density
from .modutils import StochasticCheckFailed, parallel_map
from .utils.mathutils import mean_and_error, z_score

logger = logging.getLogger(__name__)

BAND = 3.0
"""Acceptance band in standard errors"""

MIN_TRIALS = 100

TRIAL_OPTIONS = solver.SolverOptions(rel_tol=1e-6)


class WeightSampler(object):
    """Independent exponential edge weights

    :param rates: per edge rates theta(e) > 0, E sigma(e) = 1 / theta(e)
    :param int seed: root of the random streams
    """

    def __init__(self, rates, seed=0):
        rates = numpy.array(rates, dtype=numpy.float64).ravel()
        if not numpy.all(numpy.isfinite(rates)) or (rates <= 0).any():
            raise ValueError("Exponential rates must be finite and positive")
        rates.setflags(write=False)
        self.rates = rates
        self.seed = int(seed)

    @classmethod
    def uniform(cls, m, rate=1.0, seed=0):
        return cls(numpy.full(m, float(rate)), seed)

    @property
    def mean(self):
        """E sigma"""
        return 1.0 / self.rates

    def generators(self, count):
        """`count` independent generators, one per trial"""
        children = numpy.random.SeedSequence(self.seed).spawn(count)
        return [numpy.random.default_rng(child) for child in children]

    def draw(self, rng):
        return rng.exponential(1.0 / self.rates)

    def __repr__(self):
        return "<WeightSampler m=%d seed=%d>" % (len(self.rates), self.seed)


def sample_weights(sampler, rng=None):
    """One draw of the weights, from `rng` or from a generator seeded by
    the sampler seed

    :rtype: Density
    """
    if rng is None:
        rng = numpy.random.default_rng(sampler.seed)
    return Density(sampler.draw(rng))


class MonteCarloReport(object):
    """Sample statistics and bound comparisons of an experiment

    :ivar values: per trial modulus
    :ivar bounds: name -> bound value
    :ivar z: name -> signed z-score of the sample mean against the bound,
        positive on the side the inequality predicts
    :ivar checks: name -> passed
    """

    def __init__(self, name, p, family, values, seed):
        self.name = name
        self.p = p
        self.family = family
        self.values = numpy.asarray(values, dtype=numpy.float64)
        self.trials = len(self.values)
        self.mean, self.standard_error = mean_and_error(self.values)
        self.seed = seed
        self.bounds = {}
        self.z = {}
        self.checks = {}

    def lower_bound(self, name, value):
        """Record a check mean >= value - 3 SE"""
        self.bounds[name] = float(value)
        self.z[name] = z_score(self.mean, value, self.standard_error)
        self.checks[name] = self.mean >= value - BAND * self.standard_error

    def upper_bound(self, name, value):
        """Record a check mean <= value + 3 SE"""
        self.bounds[name] = float(value)
        self.z[name] = z_score(value, self.mean, self.standard_error)
        self.checks[name] = self.mean <= value + BAND * self.standard_error

    @property
    def passed(self):
        return all(self.checks.values())

    def check(self):
        """Raise StochasticCheckFailed listing the failed checks"""
        failed = [name for name, ok in self.checks.items() if not ok]
        if failed:
            details = ", ".join("%s (bound %.6g, z=%.2f)" % (n, self.bounds[n], self.z[n]) for n in failed)
            raise StochasticCheckFailed("%s: mean %.6g +- %.2g fails %s" % (self.name, self.mean, self.standard_error, details))
        return self

    def to_dict(self, values=False):
        doc = {"name": self.name,
               "p": self.p,
               "family": self.family,
               "trials": self.trials,
               "seed": self.seed,
               "mean": self.mean,
               "standard_error": self.standard_error,
               "bounds": self.bounds,
               "z": self.z,
               "checks": self.checks,
               "passed": self.passed}
        if values:
            doc["values"] = self.values.tolist()
        return doc


def _check_trials(trials):
    if trials < MIN_TRIALS:
        raise ValueError("At least %d trials are needed, got %d" % (MIN_TRIALS, trials))
    if trials < 1000:
        logger.warning("Only %d trials, the 3 SE band is unreliable below 1000", trials)


def _trial_moduli(family, sampler, p, trials, options, jobs):
    """Per trial modulus with freshly drawn weights"""
    vertices = None
    if p == 1 and isinstance(family, (families.ExplicitFamily, families.SpanningTreeFamily)):
        # the blocker does not depend on the weights
        vertices = duality.blocker_vertices(family)

    def work(rng):
        graph = family.graph.with_weights(sampler.draw(rng))
        problem = solver.ModulusProblem(family.with_graph(graph), p, options)
        if p == 1:
            return solver.solve_modulus_p1(problem, vertices=vertices).value
        return solver.solve_modulus(problem).value
    return parallel_map(work, sampler.generators(trials), jobs)


def _expected_modulus(family, sampler, p, options):
    expected = family.with_graph(family.graph.with_weights(sampler.mean))
    return solver.solve(solver.ModulusProblem(expected, p, options)).value


def verify_lovasz_bound(family, sampler, trials=1000, intermediate=(1.5,), options=None, jobs=None, values=None):
    """E Mod_1 against N_min Mod_{2, E sigma}, and against the bounds
    through Mod_{p, E sigma} for each p of `intermediate`

    :param values: per trial Mod_1 already computed with this sampler
    """
    _check_trials(trials)
    options = options or TRIAL_OPTIONS
    if values is None:
        values = _trial_moduli(family, sampler, 1, trials, options, jobs)
    report = MonteCarloReport("lovasz", 1, family.describe(), values, sampler.seed)
    n_min = family.n_min
    report.lower_bound("n_min_mod2", n_min * _expected_modulus(family, sampler, 2, options))
    total = float(numpy.sum(sampler.mean))
    for p in intermediate:
        if not 1 < p <= 2:
            raise ValueError("Intermediate exponents must lie in (1, 2], got %g" % p)
        mod_p = _expected_modulus(family, sampler, p, options)
        report.lower_bound("intermediate_p%g" % p, n_min * total ** (1 - 2.0 / p) * mod_p ** (2.0 / p))
    logger.info("Lovasz bound: mean %.6g +- %.2g, passed=%s", report.mean, report.standard_error, report.passed)
    return report


def verify_jensen_and_bounds(family, sampler, p, trials=1000, options=None, jobs=None, values=None):
    """Mod_p on random weights between the quadratic lower bound and the
    Jensen upper bound computed on E G"""
    p = float(p)
    if not 1 <= p <= 2:
        raise ValueError("The bounds hold for 1 <= p <= 2, got %g" % p)
    _check_trials(trials)
    options = options or TRIAL_OPTIONS
    if values is None:
        values = _trial_moduli(family, sampler, p, trials, options, jobs)
    report = MonteCarloReport("jensen", p, family.describe(), values, sampler.seed)
    expected = _expected_modulus(family, sampler, p, options)
    total = float(numpy.sum(sampler.mean))
    report.upper_bound("jensen", expected)
    report.lower_bound("quadratic", family.n_min ** p / total * expected ** 2)
    logger.info("Jensen bounds at p=%g: mean %.6g +- %.2g, passed=%s", p, report.mean, report.standard_error, report.passed)
    return report


def no_contradiction_check(family, sampler, p, options=None):
    """Mod_{p, E sigma} <= E sigma(E) / N_min**p, the constant density
    1/N_min being admissible"""
    expected = _expected_modulus(family, sampler, p, options or TRIAL_OPTIONS)
    bound = float(numpy.sum(sampler.mean)) / family.n_min ** p
    tolerance = 1e-6 * bound
    return {"modulus": expected, "bound": bound, "holds": expected <= bound + tolerance}


def expmin_check(rates, trials=10000, seed=0):
    """Expected minimum of independent exponentials.

    E[min] >= (sum_e 1 / E W(e))**-1, with equality for exponentials
    since the minimum is Exp(sum theta).

    :return: dict with the sample statistics, the bound and both checks
    """
    rates = numpy.asarray(rates, dtype=numpy.float64)
    if not 1 <= len(rates) <= 4:
        raise ValueError("expmin_check handles 1 to 4 variables")
    rng = numpy.random.default_rng(seed)
    draws = rng.exponential(1.0 / rates, size=(trials, len(rates))).min(axis=1)
    mean, error = mean_and_error(draws)
    means = 1.0 / rates
    bound = 1.0 / float(numpy.sum(1.0 / means))
    return {"mean": mean,
            "standard_error": error,
            "bound": bound,
            "lower_bound_holds": mean >= bound - BAND * error,
            "equality_holds": abs(mean - 1.0 / rates.sum()) <= BAND * error}


def survival_logconcavity_check(rate=1.0, draws=100000, seed=0, points=20):
    """Second differences of the empirical log-survival on a uniform grid

    :return: (largest second difference, allowed noise, holds)
    """
    rng = numpy.random.default_rng(seed)
    samples = numpy.sort(rng.exponential(1.0 / rate, size=draws))
    grid = numpy.linspace(0.0, numpy.quantile(samples, 0.9), points)
    survival = 1.0 - numpy.searchsorted(samples, grid, side="left") / float(draws)
    log_survival = numpy.log(survival)
    variance = (1.0 - survival) / (survival * draws)
    second = log_survival[:-2] - 2 * log_survival[1:-1] + log_survival[2:]
    noise = BAND * numpy.sqrt(variance[:-2] + 4 * variance[1:-1] + variance[2:])
    worst = int(numpy.argmax(second - noise))
    return float(second.max()), float(noise[worst]), bool(numpy.all(second <= noise + 1e-12))


def run_experiment(family, sampler, p, trials=1000, options=None, jobs=None, strict=False):
    """Lovasz bound for p = 1, Jensen and quadratic bounds otherwise

    :param bool strict: raise StochasticCheckFailed on failure
    """
    if p == 1:
        _check_trials(trials)
        values = _trial_moduli(family, sampler, 1, trials, options or TRIAL_OPTIONS, jobs)
        reports = [verify_lovasz_bound(family, sampler, trials, options=options, jobs=jobs, values=values),
                   verify_jensen_and_bounds(family, sampler, 1, trials, options=options, jobs=jobs, values=values)]
    else:
        reports = [verify_jensen_and_bounds(family, sampler, p, trials, options=options, jobs=jobs)]
    if strict:
        for report in reports:
            report.check()
    return reports
