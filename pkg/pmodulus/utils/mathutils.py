# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Math functions which can be useful on the full project
"""

import math

import numpy


def mean_and_error(samples):
    """Sample mean and standard error of the mean, from the unbiased
    sample variance; numpy sums are pairwise

    :return: (mean, standard error)
    """
    samples = numpy.asarray(samples, dtype=numpy.float64)
    if samples.size < 2:
        raise ValueError("At least two samples are needed, got %d" % samples.size)
    mean = float(samples.mean())
    error = float(samples.std(ddof=1) / math.sqrt(samples.size))
    return mean, error


def z_score(value, reference, error):
    """(value - reference) / error, signed; +-inf when error vanishes"""
    if error > 0:
        return (value - reference) / error
    if value == reference:
        return 0.0
    return math.copysign(math.inf, value - reference)


def relative_difference(a, b):
    """|a - b| / max(|a|, |b|), 0 when both vanish"""
    scale = max(abs(a), abs(b))
    if scale == 0:
        return 0.0
    return abs(a - b) / scale


def p_norm(x, p):
    x = numpy.abs(numpy.asarray(x, dtype=numpy.float64))
    if math.isinf(p):
        return float(x.max()) if x.size else 0.0
    return float(numpy.sum(x ** p) ** (1.0 / p))
