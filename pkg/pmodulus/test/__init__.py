# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""
Test module pmodulus
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"

import unittest
from . import utilstest
from . import test_all


def suite():
    test_suite = unittest.TestSuite()
    test_suite.addTest(test_all.suite())
    return test_suite


def run_tests():
    """Run test complete test_suite"""
    mysuite = test_all.suite()
    runner = unittest.TextTestRunner()
    try:
        successful = runner.run(mysuite).wasSuccessful()
    finally:
        utilstest.UtilsTest.clean_up()
    if not successful:
        print("Test suite failed")
        return 1
    else:
        print("Test suite succeeded")
        return 0
