# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Test of the families: usage rows, oracles, enumeration and explicit
family files"""

import io
import os
import json
import unittest
import logging

import numpy

logger = logging.getLogger(__name__)

from .. import families
from ..families import UsageRow, ConnectingFamily, CutFamily, SpanningTreeFamily, ExplicitFamily
from ..graph import Graph
from ..modutils import TrivialFamilyError, EmptyFamilyError, GuardExceeded, GraphError, GraphFormatError
from .utilstest import UtilsTest
from . import utilstest


class TestUsageRow(unittest.TestCase):

    def test_zeros_dropped(self):
        row = UsageRow({2: 1.0, 0: 0.0, 1: 0.5})
        self.assertEqual(row.edges, (1, 2))
        self.assertEqual(row.values, (0.5, 1.0))
        self.assertEqual(row.min_usage(), 0.5)
        self.assertEqual(row.dense(3).tolist(), [0.0, 0.5, 1.0])
        self.assertEqual(row.length([1.0, 2.0, 3.0]), 4.0)

    def test_trivial(self):
        self.assertRaises(TrivialFamilyError, UsageRow, {})
        self.assertRaises(TrivialFamilyError, UsageRow, {0: 0.0})
        self.assertRaises(TrivialFamilyError, UsageRow, {0: -1.0})
        self.assertRaises(TrivialFamilyError, UsageRow, {0: float("inf")})

    def test_key(self):
        a = UsageRow.indicator([0, 1], label="first")
        b = UsageRow.from_vector([1.0, 1.0, 0.0])
        self.assertEqual(a, b)
        self.assertEqual(len(families.dedup([a, b])), 1)

    def test_describe(self):
        g = utilstest.path_graph()
        self.assertEqual(UsageRow({0: 1.0, 1: 2.0}).describe(g), "a-b + 2*b-c")
        self.assertEqual(UsageRow({0: 1.0}, label="x").describe(g), "x")


class TestConnecting(unittest.TestCase):

    def test_shortest_object(self):
        family = ConnectingFamily(utilstest.path_graph(), "a", "c")
        row, length = family.shortest_object(numpy.ones(2))
        self.assertEqual(row.edges, (0, 1))
        self.assertEqual(length, 2)
        self.assertEqual(family.length(), 2)
        self.assertEqual(family.describe(), "connect:a,c")

    def test_enumerate(self):
        rows = ConnectingFamily(utilstest.single_edge(), "a", "b").enumerate()
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0].edges, (0,))
        rows = ConnectingFamily(utilstest.parallel_paths(3, 2), "a", "b").enumerate()
        self.assertEqual(len(rows), 3)
        self.assertTrue(all(len(row.edges) == 2 for row in rows))

    def test_guard(self):
        family = ConnectingFamily(utilstest.complete_graph(6), "v0", "v1")
        self.assertRaises(GuardExceeded, family.enumerate, 10)

    def test_unreachable(self):
        g = Graph.from_edges([("a", "b"), ("c", "d")])
        self.assertRaises(EmptyFamilyError, ConnectingFamily, g, "a", "c")
        g = Graph.from_edges([("a", "b")], directed=True)
        self.assertRaises(EmptyFamilyError, ConnectingFamily, g, "b", "a")

    def test_brute_force(self):
        rng = numpy.random.default_rng(1)
        for seed in range(5):
            g = utilstest.random_connected_graph(7, seed=seed)
            family = ConnectingFamily(g, "v0", "v6")
            rows = family.enumerate()
            for _ in range(20):
                rho = rng.uniform(0.0, 1.0, g.m)
                _, length = family.shortest_object(rho)
                self.assertAlmostEqual(length, min(row.length(rho) for row in rows), places=12)


class TestCut(unittest.TestCase):

    def test_shortest_object(self):
        family = CutFamily(utilstest.path_graph(), "a", "c")
        row, length = family.shortest_object([1.0, 0.5])
        self.assertEqual(row.edges, (1,))
        self.assertEqual(length, 0.5)

    def test_minimal_cuts(self):
        rows = CutFamily(utilstest.triangle(), "a", "b").enumerate()
        self.assertEqual(sorted(row.edges for row in rows), [(0, 1), (0, 2)])
        # {a, c} is disconnected in the path a-b-c: two cuts only
        rows = CutFamily(utilstest.path_graph(), "a", "c").enumerate()
        self.assertEqual(sorted(row.edges for row in rows), [(0,), (1,)])

    def test_brute_force(self):
        rng = numpy.random.default_rng(2)
        for seed in range(5):
            g = utilstest.random_connected_graph(6, seed=seed)
            family = CutFamily(g, "v0", "v5")
            rows = family.enumerate()
            for _ in range(20):
                rho = rng.uniform(0.0, 1.0, g.m)
                _, length = family.shortest_object(rho)
                self.assertAlmostEqual(length, min(row.length(rho) for row in rows), places=9)

    def test_preconditions(self):
        g = Graph.from_edges([("a", "b")], directed=True)
        self.assertRaises(GraphError, CutFamily, g, "a", "b")
        g = Graph.from_edges([("a", "b"), ("c", "d")])
        self.assertRaises(GraphError, CutFamily, g, "a", "b")


class TestSpanningTrees(unittest.TestCase):

    def test_triangle(self):
        family = SpanningTreeFamily(utilstest.triangle())
        rows = family.enumerate()
        self.assertEqual(len(rows), 3)
        self.assertTrue(all(row.values == (1.0, 1.0) for row in rows))
        row, length = family.shortest_object(numpy.ones(3))
        self.assertEqual(row.edges, (0, 1))
        self.assertEqual(length, 2)

    def test_count_guard(self):
        family = SpanningTreeFamily(utilstest.complete_graph(5))
        self.assertEqual(len(family.enumerate()), 125)
        self.assertRaises(GuardExceeded, family.enumerate, 100)


class TestExplicit(unittest.TestCase):

    def test_n_min(self):
        g = utilstest.path_graph()
        family = ExplicitFamily(g, [UsageRow({0: 1.0}), UsageRow({1: 1.0})])
        self.assertEqual(family.n_min, 1.0)
        family = ExplicitFamily(g, [UsageRow({0: 0.5, 1: 2.0})])
        self.assertEqual(family.n_min, 0.5)

    def test_shortest_object(self):
        family = ExplicitFamily.from_matrix(utilstest.path_graph(), [[1.0, 0.0], [0.0, 1.0]])
        row, length = family.shortest_object([2.0, 3.0])
        self.assertEqual(row.edges, (0,))
        self.assertEqual(length, 2.0)

    def test_empty(self):
        self.assertRaises(EmptyFamilyError, ExplicitFamily, utilstest.path_graph(), [])
        self.assertRaises(TrivialFamilyError, ExplicitFamily.from_matrix, utilstest.path_graph(), [[0.0, 0.0]])

    def test_load(self):
        g = utilstest.path_graph()
        text = json.dumps({"rows": [{"edges": {"a-b": 1}, "label": "first"}, {"b-c": 1}]})
        family = families.load_explicit_family(io.StringIO(text), g)
        self.assertEqual(len(family.rows), 2)
        self.assertEqual(family.rows[0].label, "first")
        self.assertEqual(family.rows[1].edges, (1,))

    def test_load_errors(self):
        g = utilstest.path_graph()
        self.assertRaises(TrivialFamilyError, families.load_explicit_family, io.StringIO('{"rows": [{}]}'), g)
        self.assertRaises(TrivialFamilyError, families.load_explicit_family, io.StringIO('{"rows": [{"a-c": 1}]}'), g)
        self.assertRaises(GraphFormatError, families.load_explicit_family, io.StringIO('{"rows": [{"a-b": "x"}]}'), g)
        self.assertRaises(GraphFormatError, families.load_explicit_family, io.StringIO('{"rows": 1}'), g)

    def test_dump(self):
        g = utilstest.path_graph()
        family = ExplicitFamily(g, [UsageRow({0: 0.5, 1: 2.0}, label="row")])
        filename = os.path.join(UtilsTest.tempdir, "family.json")
        families.dump_explicit_family(family, filename)
        loaded = families.load_explicit_family(filename, g)
        self.assertEqual(loaded.rows, family.rows)
        self.assertEqual(loaded.rows[0].label, "row")


class TestFactory(unittest.TestCase):

    def test_kinds(self):
        g = utilstest.triangle()
        self.assertIsInstance(families.family_factory("connect:a,b", g), ConnectingFamily)
        self.assertIsInstance(families.family_factory("cut: a , c", g), CutFamily)
        self.assertIsInstance(families.family_factory("tree", g), SpanningTreeFamily)

    def test_explicit(self):
        g = utilstest.path_graph()
        filename = os.path.join(UtilsTest.tempdir, "rows.json")
        with open(filename, "w") as f:
            json.dump({"rows": [{"edges": {"0": 1, "1": 1}}]}, f)
        family = families.family_factory("explicit:" + filename, g)
        self.assertEqual(family.describe(), "explicit:" + filename)

    def test_malformed(self):
        g = utilstest.triangle()
        for spec in ("loop", "connect:a", "connect", "tree:a", "explicit"):
            self.assertRaises(ValueError, families.family_factory, spec, g)

    def test_with_graph(self):
        g = utilstest.triangle()
        family = families.family_factory("connect:a,b", g)
        other = family.with_graph(g.with_weights([2.0, 2.0, 2.0]))
        self.assertEqual(other.describe(), "connect:a,b")
        self.assertEqual(other.graph.weights[0], 2.0)
        self.assertRaises(GraphError, family.with_graph, utilstest.path_graph())


class TestShortestObject(unittest.TestCase):

    def test_monotone_in_lengths(self):
        rng = numpy.random.default_rng(2)
        g = utilstest.random_connected_graph(5, seed=9)
        fams = [ConnectingFamily(g, "v0", "v4"), CutFamily(g, "v0", "v4"), SpanningTreeFamily(g),
                ExplicitFamily(g, ConnectingFamily(g, "v1", "v3").enumerate())]
        for family in fams:
            for _ in range(20):
                rho = rng.uniform(0.0, 1.0, g.m)
                longer = rho + rng.exponential(0.5, g.m) * (rng.random(g.m) < 0.5)
                _, before = family.shortest_object(rho)
                _, after = family.shortest_object(longer)
                self.assertGreaterEqual(after, before - 1e-12, msg=family.describe())


def suite():
    loadTests = unittest.defaultTestLoader.loadTestsFromTestCase
    testsuite = unittest.TestSuite()
    testsuite.addTest(loadTests(TestUsageRow))
    testsuite.addTest(loadTests(TestConnecting))
    testsuite.addTest(loadTests(TestCut))
    testsuite.addTest(loadTests(TestSpanningTrees))
    testsuite.addTest(loadTests(TestExplicit))
    testsuite.addTest(loadTests(TestFactory))
    testsuite.addTest(loadTests(TestShortestObject))
    return testsuite


if __name__ == '__main__':
    runner = unittest.TextTestRunner()
    runner.run(suite())
