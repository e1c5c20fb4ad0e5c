# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""End to end checks of the classical identifications, the blocking
duality and the certificates on small fixture graphs"""

import math
import itertools
import unittest
import logging

import numpy
import scipy.optimize

logger = logging.getLogger(__name__)

from .. import solver
from .. import duality
from .. import metrics
from .. import oracles
from .. import sensitivity
from .. import stochastic
from ..solver import SolverOptions, ModulusProblem, modulus
from ..families import ConnectingFamily, CutFamily, ExplicitFamily
from ..graph import Graph
from ..utils import polyhedron
from ..utils.mathutils import p_norm
from . import utilstest

TIGHT = SolverOptions(rel_tol=1e-9, adm_tol=1e-11)


def connected_graphs(n):
    """Every connected simple graph on n labelled vertices"""
    pairs = list(itertools.combinations(range(n), 2))
    labels = ["v%d" % i for i in range(n)]
    for mask in range(1, 2 ** len(pairs)):
        edges = [(labels[i], labels[j]) for k, (i, j) in enumerate(pairs) if mask >> k & 1]
        g = Graph.from_edges(edges, vertices=labels)
        if g.is_connected():
            yield g


def brute_force_density(family, p):
    """Extremal density of an explicit family by a generic constrained
    minimizer"""
    usage = family.matrix(family.rows)
    sigma = family.graph.weights
    start = numpy.full(family.graph.m, 1.0 / family.n_min)
    result = scipy.optimize.minimize(lambda rho: numpy.sum(sigma * rho ** p),
                                     start,
                                     jac=lambda rho: p * sigma * rho ** (p - 1),
                                     method="SLSQP",
                                     bounds=[(0, None)] * family.graph.m,
                                     constraints=[{"type": "ineq",
                                                   "fun": lambda rho: usage @ rho - 1.0,
                                                   "jac": lambda rho: usage}],
                                     options={"ftol": 1e-14, "maxiter": 1000})
    return result.x


class TestParallelPaths(unittest.TestCase):

    def test_formula(self):
        for k, length in itertools.product(range(1, 5), repeat=2):
            family = ConnectingFamily(utilstest.parallel_paths(k, length), "a", "b")
            for p in (1.0, 1.5, 2.0, 3.0):
                expected = k / length ** (p - 1)
                self.assertAlmostEqual(modulus(family, p).value / expected, 1.0, delta=1e-5,
                                       msg="k=%d l=%d p=%g" % (k, length, p))
            self.assertEqual(modulus(family, math.inf).value, 1.0 / length)


class TestPathSharpness(unittest.TestCase):

    def test_path(self):
        g = utilstest.path_graph()
        family = ConnectingFamily(g, "a", "c")
        for p in (1.5, 2.0, 3.0):
            self.assertAlmostEqual(modulus(family, p, TIGHT).value, 2.0 ** (1 - p), delta=1e-6)
        report = metrics.delta_p_matrix(g, 2, TIGHT)
        self.assertAlmostEqual(report.distance("a", "c"), 2.0, delta=1e-5)
        witness = metrics.anti_snowflake_witness(2, 0.1)
        self.assertTrue(witness["violated"])


class TestClassicalIdentifications(unittest.TestCase):

    def graphs(self):
        for seed in range(20):
            n = 4 + seed % 3
            g = utilstest.random_connected_graph(n, seed=seed, extra=seed % 5, weighted=False)
            yield g, 0, n - 1

    def test_min_cut(self):
        for g, a, b in self.graphs():
            value = modulus(ConnectingFamily(g, a, b), 1).value
            self.assertEqual(value, round(value))
            self.assertEqual(value, oracles.min_cut(g, a, b).value)

    def test_resistance(self):
        for g, a, b in self.graphs():
            value = modulus(ConnectingFamily(g, a, b), 2).value
            conductance = 1.0 / oracles.effective_resistance(g, a, b)
            self.assertAlmostEqual(value / conductance, 1.0, delta=1e-5)

    def test_hop_distance(self):
        # Mod_50**(1/50) * hop lies in [1, m**(1/50)]
        for g, a, b in self.graphs():
            value = modulus(ConnectingFamily(g, a, b), 50).value
            ratio = value ** (1.0 / 50) * g.hop_distance(a, b)
            self.assertLess(abs(ratio - 1.0), 0.05)


class TestDuality(unittest.TestCase):

    def test_connecting(self):
        for seed in range(20):
            g = utilstest.random_connected_graph(5, seed=seed, extra=2)
            family = ConnectingFamily(g, "v0", "v4")
            for p in (1.5, 2.0, 3.0):
                report = duality.verify_duality_product(family, p, TIGHT)
                self.assertLessEqual(report["residual"], 1e-4)
                self.assertLessEqual(report["eta_deviation"], 1e-4)

    def test_explicit(self):
        for seed in range(20):
            family = utilstest.random_explicit_family(seed)
            for p in (1.5, 2.0, 3.0):
                report = duality.verify_duality_product(family, p, TIGHT)
                self.assertLessEqual(report["residual"], 1e-4, msg="seed=%d p=%g" % (seed, p))
                self.assertLessEqual(report["eta_deviation"], 1e-4, msg="seed=%d p=%g" % (seed, p))

    def check_probabilistic(self, family, p):
        problem = ModulusProblem(family, p, TIGHT)
        solution = solver.solve_modulus(problem)
        self.assertLessEqual(duality.verify_expected_usage(solution), 10 * 1e-6, msg=family.describe())
        self.assertLess(duality.prob_interp_value(solution, problem)[2], 1e-4, msg=family.describe())

    def test_probabilistic(self):
        for seed in range(20):
            g = utilstest.random_connected_graph(5, seed=seed, extra=2)
            for p in (1.5, 2.0, 3.0):
                self.check_probabilistic(ConnectingFamily(g, "v0", "v4"), p)
                self.check_probabilistic(utilstest.random_explicit_family(seed), p)


class TestBlockerEnumeration(unittest.TestCase):

    def test_minimal_cuts(self):
        for g, a, b in ((utilstest.path_graph(), "a", "c"), (utilstest.triangle(), "a", "b")):
            family = ExplicitFamily(g, ConnectingFamily(g, a, b).enumerate())
            enumerated = {v.key for v in duality.enumerate_blocker_vertices(family)}
            cuts = {polyhedron.round_key(row.dense(g.m)) for row in CutFamily(g, a, b).enumerate()}
            self.assertEqual(enumerated, cuts)

    def check_spanning_trees(self, graphs):
        for g in graphs:
            equal, enumerated, partitions = duality.spanning_tree_blocker_check(g)
            self.assertTrue(equal, msg=repr(g))
            self.assertEqual(enumerated, partitions)

    def test_spanning_trees(self):
        graphs = [utilstest.single_edge()]
        graphs.extend(connected_graphs(3))
        graphs.extend(connected_graphs(4))
        graphs.extend(utilstest.random_connected_graph(5, seed=s, extra=s % 3) for s in range(5))
        self.check_spanning_trees(graphs)

    @unittest.skipUnless(utilstest.UtilsTest.slow, "slow test, set PMODULUS_TEST_SLOW=1")
    def test_spanning_trees_five_vertices(self):
        self.check_spanning_trees(connected_graphs(5))


class TestSensitivity(unittest.TestCase):

    def test_gradient(self):
        for seed in range(10):
            family = ConnectingFamily(utilstest.random_connected_graph(5, seed=seed), "v0", "v4")
            self.assertTrue(sensitivity.gradient_check(family, 2.0).passed, msg="seed=%d" % seed)

    def test_concavity_and_lipschitz(self):
        rng = numpy.random.default_rng(11)
        family = ConnectingFamily(utilstest.random_connected_graph(5, seed=3), "v0", "v4")
        for _ in range(20):
            sigma0 = rng.uniform(0.5, 2.0, family.graph.m)
            sigma1 = rng.uniform(0.5, 2.0, family.graph.m)
            report = sensitivity.concavity_check(family, 2.0, sigma0, sigma1, ts=[0.25, 0.5, 0.75])
            self.assertGreaterEqual(report.to_dict()["min_slack"], -1e-5)
            self.assertTrue(sensitivity.lipschitz_witness(family, 2.0, sigma0, sigma1)["holds"])

    def test_monotonicity(self):
        family = ConnectingFamily(utilstest.random_connected_graph(5, seed=4), "v0", "v4")
        for edge in range(family.graph.m):
            self.assertTrue(sensitivity.monotonicity_sweep(family, 2.0, edge, [0.5, 1.0, 1.5, 2.0]).passed)


class TestStochasticBounds(unittest.TestCase):

    def fixtures(self):
        return [ConnectingFamily(utilstest.triangle(), "a", "b"),
                ConnectingFamily(utilstest.parallel_paths(2, 2), "a", "b"),
                ConnectingFamily(utilstest.path_graph(), "a", "c")]

    def check_fixtures(self, trials):
        for family in self.fixtures():
            sampler = stochastic.WeightSampler.uniform(family.graph.m, 1.0, seed=7)
            for p in (1.0, 1.5, 2.0):
                for report in stochastic.run_experiment(family, sampler, p, trials=trials):
                    self.assertTrue(report.passed, msg="%s p=%g %s" % (family.describe(), p, report.to_dict()))

    def test_fixtures(self):
        self.check_fixtures(2000)

    @unittest.skipUnless(utilstest.UtilsTest.slow, "slow test, set PMODULUS_TEST_SLOW=1")
    def test_fixtures_full_size(self):
        self.check_fixtures(5000)


class TestCertificates(unittest.TestCase):

    def test_converged_solves(self):
        for seed in range(10):
            family = ConnectingFamily(utilstest.random_connected_graph(6, seed=seed), "v0", "v5")
            solution = modulus(family, 2.5, TIGHT)
            self.assertTrue(solution.converged)
            self.assertLessEqual((solution.upper - solution.lower) / solution.upper, 1e-6)
            _, length = family.shortest_object(solution.rho.values)
            self.assertGreaterEqual(length, 1.0 - 1e-12)

    def test_radius(self):
        for seed in range(5):
            family = utilstest.random_explicit_family(seed, m=6)
            for p in (2.0, 3.0):
                solution = modulus(family, p)
                reference = brute_force_density(family, p)
                distance = p_norm(solution.rho.values - reference, p)
                self.assertLessEqual(distance, solution.radius + 1e-6, msg="seed=%d p=%g" % (seed, p))


def suite():
    loadTests = unittest.defaultTestLoader.loadTestsFromTestCase
    testsuite = unittest.TestSuite()
    testsuite.addTest(loadTests(TestParallelPaths))
    testsuite.addTest(loadTests(TestPathSharpness))
    testsuite.addTest(loadTests(TestClassicalIdentifications))
    testsuite.addTest(loadTests(TestDuality))
    testsuite.addTest(loadTests(TestBlockerEnumeration))
    testsuite.addTest(loadTests(TestSensitivity))
    testsuite.addTest(loadTests(TestStochasticBounds))
    testsuite.addTest(loadTests(TestCertificates))
    return testsuite


if __name__ == '__main__':
    runner = unittest.TextTestRunner()
    runner.run(suite())
