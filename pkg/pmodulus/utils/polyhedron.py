# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Vertices of the admissible polyhedron ``{x >= 0 : N x >= 1}``

The polyhedron is homogenized into the cone ``{(x, t) >= 0 : N x - t >= 0}``
whose extreme rays are obtained by the double description method: start
from the unit vectors of the orthant and add the constraints one at a
time, combining every adjacent pair of rays lying on opposite sides.
Adjacency is decided combinatorially from the zero sets. Rays with
``t > 0`` give the vertices ``x / t``.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"

import logging

import numpy
import scipy.optimize

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-10
VERTEX_TOL = 1e-9
KEY_DIGITS = 6


def extreme_rays(constraints):
    """Extreme rays of ``{y >= 0 : constraints @ y >= 0}``

    :param constraints: (k, d) array
    :return: (rays, zero) with the rays as rows, normalized to unit
        max-norm, and the boolean matrix of tight constraints (the d
        orthant constraints first, then the k rows)
    """
    constraints = numpy.atleast_2d(numpy.asarray(constraints, dtype=numpy.float64))
    d = constraints.shape[1]
    rays = numpy.eye(d)
    zero = ~numpy.eye(d, dtype=bool)
    for k, row in enumerate(constraints):
        values = rays @ row
        tol = ZERO_TOL * max(1.0, float(numpy.abs(row).max()))
        positive = numpy.nonzero(values > tol)[0]
        negative = numpy.nonzero(values < -tol)[0]
        tight = numpy.abs(values) <= tol
        new_rays = []
        new_zero = []
        for i in positive:
            for j in negative:
                common = zero[i] & zero[j]
                if common.sum() < d - 2:
                    continue
                if numpy.count_nonzero(zero[:, common].all(axis=1)) > 2:
                    continue
                ray = values[i] * rays[j] - values[j] * rays[i]
                ray /= numpy.abs(ray).max()
                new_rays.append(ray)
                new_zero.append(common)
        keep = ~(values < -tol)
        zero = numpy.hstack([zero[keep], tight[keep, None]])
        rays = rays[keep]
        if new_rays:
            rays = numpy.vstack([rays, numpy.array(new_rays)])
            block = numpy.hstack([numpy.array(new_zero), numpy.ones((len(new_rays), 1), dtype=bool)])
            zero = numpy.vstack([zero, block])
        logger.debug("constraint %d: %d rays", k, len(rays))
    return rays, zero


def is_admissible(usage, x, tol=VERTEX_TOL):
    """True if x >= 0 and usage @ x >= 1, up to `tol`"""
    x = numpy.asarray(x, dtype=numpy.float64)
    return bool(numpy.all(x >= -tol) and numpy.all(usage @ x >= 1.0 - tol))


def is_extreme(usage, x, tol=VERTEX_TOL):
    """True if x is a vertex of the admissible polyhedron: admissible and
    the constraints tight at x have full rank"""
    usage = numpy.atleast_2d(usage)
    m = usage.shape[1]
    if not is_admissible(usage, x, tol):
        return False
    tight = [numpy.eye(m)[numpy.abs(x) <= tol], usage[numpy.abs(usage @ x - 1.0) <= tol]]
    tight = numpy.vstack(tight)
    if len(tight) < m:
        return False
    return int(numpy.linalg.matrix_rank(tight, tol=tol)) == m


def round_key(x, digits=KEY_DIGITS):
    """Hashable key of a vector rounded to `digits` decimals.

    Vertex coordinates are ratios of small integers, far from the rounding
    boundaries; use :func:`unique_vectors` or :func:`same_vectors` to
    compare computed vectors.
    """
    return tuple(float(i) + 0.0 for i in numpy.round(numpy.asarray(x, dtype=numpy.float64), digits))


def _find(vectors, x, tol):
    for i, y in enumerate(vectors):
        if numpy.max(numpy.abs(y - x)) <= tol:
            return i
    return None


def unique_vectors(vectors, tol=VERTEX_TOL):
    """Vectors without the ones within `tol` (max-norm) of an earlier one"""
    result = []
    for x in vectors:
        x = numpy.asarray(x, dtype=numpy.float64)
        if _find(result, x, tol) is None:
            result.append(x)
    return result


def same_vectors(left, right, tol=VERTEX_TOL):
    """True when both collections hold the same vectors up to `tol`"""
    left = unique_vectors(left, tol)
    right = unique_vectors(right, tol)
    if len(left) != len(right):
        return False
    return all(_find(right, x, tol) is not None for x in left)


def dominant_vertices(points, tol=VERTEX_TOL):
    """Indices of the points which are vertices of conv(points) + R^m_+.

    A point is dropped when it dominates a convex combination of the
    other points, decided by a feasibility linear program.
    """
    points = numpy.atleast_2d(numpy.asarray(points, dtype=numpy.float64))
    keep = []
    for i, x in enumerate(points):
        others = numpy.delete(points, i, axis=0)
        others = others[numpy.max(numpy.abs(others - x), axis=1) > tol]
        if len(others) == 0:
            keep.append(i)
            continue
        result = scipy.optimize.linprog(numpy.zeros(len(others)),
                                        A_ub=others.T, b_ub=x + tol,
                                        A_eq=numpy.ones((1, len(others))), b_eq=[1.0],
                                        bounds=(0, None), method="highs")
        if result.status == 2:
            keep.append(i)
        elif result.status != 0:
            raise RuntimeError("Linear program failed: %s" % result.message)
    return keep


def admissible_vertices(usage):
    """All vertices of ``{x >= 0 : usage @ x >= 1}``, deduplicated and
    sorted lexicographically

    :param usage: (k, m) nonnegative matrix without zero row
    :rtype: list of numpy arrays
    """
    usage = numpy.atleast_2d(numpy.asarray(usage, dtype=numpy.float64))
    k, m = usage.shape
    homogeneous = numpy.hstack([usage, -numpy.ones((k, 1))])
    rays, _ = extreme_rays(homogeneous)
    found = []
    for ray in rays:
        t = ray[-1]
        if t <= ZERO_TOL:
            continue
        x = ray[:-1] / t
        x[numpy.abs(x) <= VERTEX_TOL] = 0.0
        if _find(found, x, VERTEX_TOL) is not None:
            continue
        if not is_extreme(usage, x):
            logger.debug("Dropping non extreme candidate %s", x)
            continue
        found.append(x)
    return sorted(found, key=tuple)
