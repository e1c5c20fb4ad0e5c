# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Test of the pmodulus command line application"""

import os
import io
import sys
import json
import shutil
import logging
import unittest
import contextlib
import subprocess

logger = logging.getLogger(__name__)

from .. import write_graph
from ..app import modulus as app
from .utilstest import UtilsTest
from . import utilstest


class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self.path = os.path.join(UtilsTest.tempdir, self.id())
        os.makedirs(self.path)
        self.p3 = self.filename("p3.txt")
        write_graph(utilstest.path_graph(), self.p3)
        self.parallel = self.filename("parallel.json")
        write_graph(utilstest.parallel_paths(3, 2), self.parallel)
        self.triangle = self.filename("triangle.txt")
        write_graph(utilstest.triangle(), self.triangle)

    def tearDown(self):
        shutil.rmtree(self.path)

    def filename(self, name):
        return os.path.join(self.path, name)

    def run_app(self, *args):
        """Run main in process, return (status, stdout, stderr)"""
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            status = app.main(list(args))
        logger.debug("stderr: %s", err.getvalue())
        return status, out.getvalue(), err.getvalue()

    def test_solve_series(self):
        status, out, err = self.run_app("solve", "--graph", self.p3, "--family", "connect:a,c", "--p", "2")
        self.assertEqual(status, app.EXIT_SUCCESS)
        report = json.loads(out)
        self.assertEqual(report["command"], "solve")
        self.assertAlmostEqual(report["result"]["value"], 0.5, delta=1e-6)
        self.assertIn("seed: 0", err)
        self.assertIn("Mod_2(connect:a,c)", err)
        self.assertIn("versions", report)
        self.assertIn("load", report["timings"])

    def test_solve_p1(self):
        status, out, _ = self.run_app("solve", "--graph", self.parallel, "--family", "connect:a,b", "--p", "1")
        self.assertEqual(status, app.EXIT_SUCCESS)
        self.assertAlmostEqual(json.loads(out)["result"]["value"], 3.0)

    def test_solve_inf(self):
        status, out, _ = self.run_app("solve", "--graph", self.parallel, "--family", "connect:a,b", "--p", "inf")
        self.assertEqual(status, app.EXIT_SUCCESS)
        self.assertAlmostEqual(json.loads(out)["result"]["value"], 0.5)

    def test_output_file(self):
        output = self.filename("solution.json")
        status, out, _ = self.run_app("solve", "--graph", self.p3, "--family", "connect:a,c", "--p", "3",
                                      "--output", output)
        self.assertEqual(status, app.EXIT_SUCCESS)
        self.assertIn("Mod_3", out)
        with open(output) as f:
            self.assertAlmostEqual(json.load(f)["result"]["value"], 0.25, delta=1e-6)

    def test_solve_csv(self):
        status, out, _ = self.run_app("solve", "--graph", self.p3, "--family", "connect:a,c", "--p", "2", "--csv")
        self.assertEqual(status, app.EXIT_SUCCESS)
        lines = out.splitlines()
        self.assertEqual(lines[0], "edge,rho,eta")
        self.assertEqual(len(lines), 3)
        self.assertAlmostEqual(float(lines[1].split(",")[1]), 0.5, delta=1e-6)

    def test_missing_graph(self):
        status, out, _ = self.run_app("solve", "--graph", self.filename("nothing.txt"), "--family", "connect:a,c", "--p", "2")
        self.assertEqual(status, app.EXIT_ARGUMENT_FAILURE)
        self.assertEqual(out, "")

    def test_bad_arguments(self):
        self.assertEqual(self.run_app("solve", "--graph", self.p3, "--p", "2")[0], app.EXIT_ARGUMENT_FAILURE)
        self.assertEqual(self.run_app("solve", "--graph", self.p3, "--family", "connect:a,c")[0], app.EXIT_ARGUMENT_FAILURE)
        self.assertEqual(self.run_app("solve", "--graph", self.p3, "--family", "connect:a,c", "--p", "0.5")[0],
                         app.EXIT_ARGUMENT_FAILURE)
        self.assertEqual(self.run_app("solve", "--graph", self.p3, "--family", "loop", "--p", "2")[0],
                         app.EXIT_ARGUMENT_FAILURE)
        self.assertEqual(self.run_app("solve", "--graph", self.p3, "--family", "connect:a,z", "--p", "2")[0],
                         app.EXIT_ARGUMENT_FAILURE)
        self.assertEqual(self.run_app()[0], app.EXIT_ARGUMENT_FAILURE)

    def test_unknown_config_key(self):
        config = self.filename("config.json")
        with open(config, "w") as f:
            json.dump({"graph": self.p3, "family": "connect:a,c", "p": 2, "colour": "blue"}, f)
        status, _, _ = self.run_app("solve", "--config", config)
        self.assertEqual(status, app.EXIT_ARGUMENT_FAILURE)

    def test_config_echo(self):
        status, out, _ = self.run_app("solve", "--graph", self.p3, "--family", "connect:a,c", "--p", "2.5",
                                      "--rel-tol", "1e-8")
        self.assertEqual(status, app.EXIT_SUCCESS)
        first = json.loads(out)
        config = self.filename("echo.json")
        with open(config, "w") as f:
            json.dump(first["config"], f)
        status, out, _ = self.run_app("solve", "--config", config)
        self.assertEqual(status, app.EXIT_SUCCESS)
        second = json.loads(out)
        self.assertEqual(second["config"], first["config"])
        self.assertEqual(second["result"]["value"], first["result"]["value"])
        # the flags override the file
        status, out, _ = self.run_app("solve", "--config", config, "--p", "2")
        self.assertAlmostEqual(json.loads(out)["result"]["value"], 0.5, delta=1e-6)
        status, _, _ = self.run_app("metric", "--config", config)
        self.assertEqual(status, app.EXIT_ARGUMENT_FAILURE)

    def test_duality(self):
        status, out, _ = self.run_app("duality", "--graph", self.parallel, "--family", "connect:a,b", "--p", "3")
        self.assertEqual(status, app.EXIT_SUCCESS)
        result = json.loads(out)["result"]
        self.assertLessEqual(result["residual"], 1e-5)
        self.assertIn("expected_usage_deviation", result)
        status, out, _ = self.run_app("duality", "--graph", self.parallel, "--family", "connect:a,b", "--p", "1")
        self.assertAlmostEqual(json.loads(out)["result"]["product"], 1.0)

    def test_blocker(self):
        status, out, _ = self.run_app("blocker", "--graph", self.triangle, "--family", "tree", "--csv")
        self.assertEqual(status, app.EXIT_SUCCESS)
        lines = out.splitlines()
        self.assertEqual(lines[0].split(",")[0], "provenance")
        self.assertEqual(len(lines), 5)

    def test_guard(self):
        rows = self.filename("rows.json")
        with open(rows, "w") as f:
            json.dump({"rows": [{"a-b": 1, "b-c": 1}, {"c-a": 1}]}, f)
        status, _, _ = self.run_app("blocker", "--graph", self.triangle, "--family", "explicit:" + rows,
                                    "--max-edges", "2")
        self.assertEqual(status, app.EXIT_GUARD_EXCEEDED)
        status, out, _ = self.run_app("blocker", "--graph", self.triangle, "--family", "explicit:" + rows)
        self.assertEqual(status, app.EXIT_SUCCESS)
        self.assertEqual(json.loads(out)["result"]["counts"]["vertices"], 2)
        status, _, _ = self.run_app("duality", "--graph", self.triangle, "--family", "explicit:" + rows,
                                    "--p", "2", "--max-edges", "2")
        self.assertEqual(status, app.EXIT_GUARD_EXCEEDED)
        status, out, _ = self.run_app("duality", "--graph", self.triangle, "--family", "explicit:" + rows, "--p", "2")
        self.assertEqual(status, app.EXIT_SUCCESS)
        self.assertLessEqual(json.loads(out)["result"]["residual"], 1e-4)

    def test_metric(self):
        status, out, _ = self.run_app("metric", "--graph", self.triangle, "--p", "2")
        self.assertEqual(status, app.EXIT_SUCCESS)
        result = json.loads(out)["result"]
        self.assertAlmostEqual(result["matrix"][0][1], 2.0 / 3.0, delta=1e-5)
        self.assertLess(result["comparisons"]["resistance"], 1e-4)
        status, out, _ = self.run_app("metric", "--graph", self.triangle, "--p", "2", "--csv")
        self.assertEqual(out.splitlines()[0], ",a,b,c")

    def test_sensitivity(self):
        status, out, _ = self.run_app("sensitivity", "--graph", self.p3, "--family", "connect:a,c", "--p", "2",
                                      "--check", "monotonicity", "--edge", "a-b", "--grid", "0.5,1,2", "--csv")
        self.assertEqual(status, app.EXIT_SUCCESS)
        self.assertEqual(len(out.splitlines()), 4)
        status, _, _ = self.run_app("sensitivity", "--graph", self.p3, "--family", "connect:a,c", "--p", "2",
                                    "--check", "monotonicity")
        self.assertEqual(status, app.EXIT_ARGUMENT_FAILURE)

    def test_random(self):
        status, out, err = self.run_app("random", "--graph", self.triangle, "--family", "connect:a,b", "--p", "2",
                                        "--trials", "1000", "--seed", "7")
        self.assertEqual(status, app.EXIT_SUCCESS)
        report = json.loads(out)
        self.assertEqual(report["seed"], 7)
        self.assertIn("seed: 7", err)
        self.assertEqual(report["result"]["experiments"][0]["name"], "jensen")
        self.assertTrue(report["result"]["no_contradiction"]["holds"])
        status, _, _ = self.run_app("random", "--graph", self.triangle, "--family", "connect:a,b", "--p", "2",
                                    "--trials", "10")
        self.assertEqual(status, app.EXIT_ARGUMENT_FAILURE)


class TestSubprocess(unittest.TestCase):
    """The script run by the interpreter, as installed"""

    def setUp(self):
        self.path = os.path.join(UtilsTest.tempdir, self.id())
        os.makedirs(self.path)
        self.graph = os.path.join(self.path, "p3.txt")
        write_graph(utilstest.path_graph(), self.graph)
        self.env = UtilsTest.subprocess_env()
        self.script = UtilsTest.script_path("pmodulus.app.modulus")

    def tearDown(self):
        shutil.rmtree(self.path)

    def run_script(self, *args):
        command = [sys.executable, self.script] + list(args)
        logger.info("Execute: %s", " ".join(command))
        p = subprocess.Popen(command, env=self.env, shell=False,
                             stdout=subprocess.PIPE, stderr=subprocess.PIPE)
        out, err = p.communicate()
        logger.info("Return code: %d", p.returncode)
        if p.returncode != 0:
            logger.info("stderr: %s", err)
        return p.returncode, out.decode(), err.decode()

    def test_solve(self):
        status, out, _ = self.run_script("solve", "--graph", self.graph, "--family", "connect:a,c", "--p", "2")
        self.assertEqual(status, 0)
        self.assertAlmostEqual(json.loads(out)["result"]["value"], 0.5, delta=1e-6)

    def test_missing_graph(self):
        status, _, err = self.run_script("solve", "--graph", "missing.txt", "--family", "connect:a,c", "--p", "2")
        self.assertEqual(status, 2)
        self.assertIn("missing.txt", err)

    def test_version(self):
        status, out, _ = self.run_script("--version")
        self.assertEqual(status, 0)


def suite():
    loadTests = unittest.defaultTestLoader.loadTestsFromTestCase
    testsuite = unittest.TestSuite()
    testsuite.addTest(loadTests(TestCommandLine))
    testsuite.addTest(loadTests(TestSubprocess))
    return testsuite


if __name__ == '__main__':
    runner = unittest.TextTestRunner()
    runner.run(suite())
