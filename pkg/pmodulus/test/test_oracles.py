# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Test of the shortest path, min cut, effective resistance and spanning
tree oracles"""

import itertools
import unittest
import logging

import numpy

logger = logging.getLogger(__name__)

from .. import oracles
from ..graph import Graph
from ..modutils import EmptyFamilyError, GraphError
from . import utilstest


def brute_force_cut(g, a, b, capacities):
    others = [v for v in range(g.n) if v not in (a, b)]
    best = numpy.inf
    for size in range(len(others) + 1):
        for extra in itertools.combinations(others, size):
            side = {a, *extra}
            best = min(best, float(capacities[g.boundary(side)].sum()))
    return best


class TestShortestPath(unittest.TestCase):

    def test_path_graph(self):
        result = oracles.shortest_path_length(utilstest.path_graph(), "a", "c")
        self.assertEqual(result.length, 2)
        self.assertEqual(result.edges, [0, 1])

    def test_zero_lengths(self):
        result = oracles.shortest_path_length(utilstest.triangle(), "a", "c", numpy.zeros(3))
        self.assertEqual(result.length, 0)

    def test_direct_edge(self):
        result = oracles.shortest_path_length(utilstest.triangle(), "a", "b")
        self.assertEqual(result.length, 1)
        self.assertEqual(result.edges, [0])

    def test_parallel_edges(self):
        g = Graph.from_edges([("a", "b", 1.0), ("a", "b", 1.0)])
        result = oracles.shortest_path_length(g, "a", "b", [2.0, 1.0])
        self.assertEqual(result.edges, [1])
        result = oracles.shortest_path_length(g, "a", "b", [1.0, 1.0])
        self.assertEqual(result.edges, [0])

    def test_unreachable(self):
        g = Graph.from_edges([("a", "b")], directed=True)
        self.assertRaises(EmptyFamilyError, oracles.shortest_path_length, g, "b", "a")
        g = Graph.from_edges([("a", "b"), ("c", "d")])
        self.assertRaises(EmptyFamilyError, oracles.shortest_path_length, g, "a", "d")


class TestMinCut(unittest.TestCase):

    def test_triangle(self):
        result = oracles.min_cut(utilstest.triangle(), "a", "b")
        self.assertAlmostEqual(result.value, 2.0)
        self.assertIn(0, result.side)
        self.assertNotIn(1, result.side)

    def test_path(self):
        result = oracles.min_cut(utilstest.path_graph(), "a", "c")
        self.assertAlmostEqual(result.value, 1.0)
        self.assertEqual(len(result.edges), 1)

    def test_parallel_paths(self):
        result = oracles.min_cut(utilstest.parallel_paths(3, 2), "a", "b")
        self.assertAlmostEqual(result.value, 3.0)
        self.assertEqual(len(result.edges), 3)

    def test_capacities(self):
        g = utilstest.path_graph()
        result = oracles.min_cut(g, "a", "c", [1.0, 0.5])
        self.assertAlmostEqual(result.value, 0.5)
        self.assertEqual(result.edges, [1])

    def test_random_graphs(self):
        for seed in range(10):
            g = utilstest.random_connected_graph(6, seed=seed)
            capacities = numpy.random.default_rng(seed).uniform(0.1, 1.0, g.m)
            result = oracles.min_cut(g, 0, g.n - 1, capacities)
            self.assertAlmostEqual(result.value, brute_force_cut(g, 0, g.n - 1, capacities), places=9)
            self.assertAlmostEqual(result.value, float(capacities[result.edges].sum()), places=12)

    def test_directed(self):
        g = Graph.from_edges([("a", "b")], directed=True)
        self.assertRaises(GraphError, oracles.min_cut, g, "a", "b")


class TestEffectiveResistance(unittest.TestCase):

    def test_series(self):
        self.assertAlmostEqual(oracles.effective_resistance(utilstest.path_graph(), "a", "c"), 2.0, places=12)

    def test_triangle(self):
        self.assertAlmostEqual(oracles.effective_resistance(utilstest.triangle(), "a", "b"), 2.0 / 3.0, places=12)

    def test_parallel(self):
        g = utilstest.parallel_paths(2, 2)
        self.assertAlmostEqual(oracles.effective_resistance(g, "a", "b"), 1.0, places=12)

    def test_conductances(self):
        g = utilstest.path_graph()
        value = oracles.effective_resistance(g, "a", "c", [2.0, 2.0])
        self.assertAlmostEqual(value, 1.0, places=12)

    def test_disconnected(self):
        g = Graph.from_edges([("a", "b"), ("c", "d")])
        self.assertRaises(GraphError, oracles.effective_resistance, g, "a", "b")


class TestSpanningTree(unittest.TestCase):

    def test_lengths(self):
        result = oracles.minimum_spanning_tree(utilstest.triangle(), [0.1, 0.2, 0.3])
        self.assertEqual(result.edges, [0, 1])
        self.assertAlmostEqual(result.length, 0.3)

    def test_tie_break(self):
        result = oracles.minimum_spanning_tree(utilstest.triangle(), numpy.ones(3))
        self.assertEqual(result.edges, [0, 1])
        self.assertEqual(result.length, 2)

    def test_tree_graph(self):
        g = utilstest.path_graph()
        self.assertEqual(oracles.minimum_spanning_tree(g).edges, [0, 1])

    def test_count(self):
        self.assertEqual(oracles.count_spanning_trees(utilstest.triangle()), 3)
        self.assertEqual(oracles.count_spanning_trees(utilstest.complete_graph(4)), 16)
        self.assertEqual(oracles.count_spanning_trees(utilstest.complete_graph(5)), 125)
        self.assertEqual(oracles.count_spanning_trees(utilstest.path_graph()), 1)


def suite():
    loadTests = unittest.defaultTestLoader.loadTestsFromTestCase
    testsuite = unittest.TestSuite()
    testsuite.addTest(loadTests(TestShortestPath))
    testsuite.addTest(loadTests(TestMinCut))
    testsuite.addTest(loadTests(TestEffectiveResistance))
    testsuite.addTest(loadTests(TestSpanningTree))
    return testsuite


if __name__ == '__main__':
    runner = unittest.TextTestRunner()
    runner.run(suite())
