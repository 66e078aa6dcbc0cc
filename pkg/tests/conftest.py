"""Shared fixtures: the small named configurations used across the suite."""

from __future__ import annotations

import random

import pytest

from patchwork.combinatorics import (
    dual_curve,
    simplex_polygon,
    validate_triangulation,
)
from patchwork import ragsdale as rg
from patchwork.phases import admissible_space_basis

CONIC_TRIANGLES = [
    ((0, 0), (1, 0), (0, 1)),
    ((1, 0), (1, 1), (0, 1)),
    ((1, 0), (2, 0), (1, 1)),
    ((0, 1), (1, 1), (0, 2)),
]


def staircase_triangles(d):
    """Unit cells split along the anti-diagonal; the hypotenuse row stays."""
    tris = []
    for i in range(d):
        for j in range(d - i):
            if i + j <= d - 2:
                tris.append(((i, j), (i + 1, j), (i, j + 1)))
                tris.append(((i + 1, j), (i + 1, j + 1), (i, j + 1)))
            elif i + j == d - 1:
                tris.append(((i, j), (i + 1, j), (i, j + 1)))
    return tris


def convex_heights(tri):
    """Strictly concave heights whose upper hull induces the anti-diagonal
    staircase subdivisions (and the conic fixture)."""
    return {(x, y): -2 * (x * x + y * y) - (x + y) ** 2 for (x, y) in tri.points}


def sample_admissible(curve, rng: random.Random, count: int):
    """Random elements of the admissible twist space."""
    basis = admissible_space_basis(curve)
    out = []
    for _ in range(count):
        acc = frozenset()
        for vec in basis:
            if rng.getrandbits(1):
                acc ^= vec
        out.append(acc)
    return out


@pytest.fixture(scope="session")
def conic():
    tri = validate_triangulation(simplex_polygon(2), CONIC_TRIANGLES)
    return tri, dual_curve(tri)


@pytest.fixture(scope="session")
def quartic():
    tri = validate_triangulation(simplex_polygon(4), staircase_triangles(4))
    return tri, dual_curve(tri)


@pytest.fixture(scope="session")
def cubic():
    tri = validate_triangulation(simplex_polygon(3), staircase_triangles(3))
    return tri, dual_curve(tri)


@pytest.fixture(scope="session")
def deg10_block():
    block = rg.single_block(5, 0, 1)
    tri, curve, twists = rg.realize_blocks(5, [block])
    return tri, curve, twists, block


@pytest.fixture(scope="session")
def deg14_block():
    block = rg.single_block(7, 0, 2)
    tri, curve, twists = rg.realize_blocks(7, [block])
    return tri, curve, twists, block


@pytest.fixture(scope="session")
def deg14_full():
    return rg.full_construction(7)


@pytest.fixture(scope="session")
def small_curves():
    """Validated curves of degree 2..8 for the randomized property suites."""
    out = {}
    for d in range(2, 9):
        tri = rg.triangulate_with_constraints(simplex_polygon(d))
        out[d] = (tri, dual_curve(tri))
    return out
