"""Constrained triangulation and the counter-example generators."""

import pytest

from patchwork.combinatorics import (
    is_even_point,
    simplex_polygon,
    validate_triangulation,
)
from patchwork.classify import classify
from patchwork.errors import (
    ConstraintViolated,
    CrossingRequiredEdges,
    NonPrimitiveRequiredEdge,
)
from patchwork.ragsdale import (
    S_BY_RESIDUE,
    full_construction,
    ragsdale_bound,
    single_block,
    triangulate_with_constraints,
)


def test_canonical_deg2_triangulation():
    tri = triangulate_with_constraints(simplex_polygon(2))
    assert len(tri.triangles) == 4
    # greedy places the lex-least diagonal (0,0)-(1,1)
    assert tri.edge_between((0, 0), (1, 1)) is not None
    assert tri.edge_between((0, 1), (1, 0)) is None


def test_required_edges_respected(deg10_block):
    tri, _, _, block = deg10_block
    for a, b in block.segments:
        assert tri.edge_between(a, b) is not None
    # the result is a valid unimodular triangulation (validate re-checks)
    validate_triangulation(tri.polygon, [tuple(tri.points[i] for i in t)
                                         for t in tri.triangles])


def test_crossing_required_edges():
    with pytest.raises(CrossingRequiredEdges):
        triangulate_with_constraints(
            simplex_polygon(4), [((0, 1), (2, 2)), ((1, 2), (2, 0))])


def test_non_primitive_required_edge():
    with pytest.raises(NonPrimitiveRequiredEdge):
        triangulate_with_constraints(simplex_polygon(4), [((0, 0), (2, 2))])


def test_ragsdale_bound_is_odd_point_census():
    from patchwork.combinatorics import polygon_data
    for k in range(2, 11):
        _, points, _ = polygon_data(simplex_polygon(2 * k))
        interior_odd = sum(
            1 for (x, y) in points
            if x > 0 and y > 0 and x + y < 2 * k and not is_even_point((x, y)))
        assert ragsdale_bound(k) == interior_odd


def test_single_block_defaults(deg10_block, deg14_block):
    _, _, _, b10 = deg10_block
    assert b10.apex_top == (3, 6) and b10.apex_bottom == (3, 0)
    assert b10.base == ((1, 3), (2, 3), (4, 3), (5, 3))
    _, _, _, b14 = deg14_block
    assert b14.apex_top == (5, 6) and b14.apex_bottom == (5, 0)
    assert b14.base[0] == (0, 3) and b14.base[-1] == (10, 3)


def test_single_block_constraints():
    with pytest.raises(ConstraintViolated):
        single_block(5, 0, 1, apex_x=4)          # even apex
    with pytest.raises(ConstraintViolated):
        single_block(5, 0, 2)                    # too long for degree 10
    with pytest.raises(ConstraintViolated):
        single_block(5, 1, 1)                    # row out of range


def test_single_block_is_dividing_m2(deg10_block):
    _, curve, twists, _ = deg10_block
    rep = classify(curve, twists)
    assert rep.dividing and rep.rank == 2
    assert rep.m2 is not None


def test_full_construction_deg14(deg14_full):
    cfg = deg14_full
    assert len(cfg.blocks) == 2
    t0, t1 = cfg.blocks
    assert t0.base[0] == (1, 3) and t0.base[-1] == (11, 3)
    assert t0.apex_top == (3, 6) and t0.apex_bottom == (3, 0)
    assert t1.apex_top == (3, 10) and t1.apex_bottom == (9, 4)
    assert t1.base[0] == (1, 7) and t1.base[-1] == (5, 7)
    assert cfg.adjustments == []
    assert cfg.predicted_even == 68 == cfg.table_even
    rep = classify(cfg.curve, cfg.twists)
    assert rep.dividing and rep.rank == 4 and rep.components == 75


def test_full_construction_k5():
    cfg = full_construction(5)
    assert len(cfg.blocks) == 1
    assert cfg.predicted_even == 32 == cfg.table_even


def test_full_construction_k8_adjusts():
    cfg = full_construction(8)
    assert cfg.adjustments                      # table row yields even vertices
    assert cfg.table_even is None               # (k^2-5k+8)/6 is not an integer
    assert cfg.predicted_even == ragsdale_bound(8) + 1 + sum(
        2 * b.m - 1 for b in cfg.blocks) == 89


def test_blocks_even_free_and_fitting():
    for k in (5, 6, 7, 8, 9):
        cfg = full_construction(k)
        for b in cfg.blocks:
            assert all(not is_even_point(v) for v in b.vertices)
            assert b.length == 6 * b.m - 2
            assert b.length <= 2 * k - 3 - 4 * b.t


def test_table_s_values():
    assert S_BY_RESIDUE == {0: 0, 1: 10, 2: 8, 3: 6, 4: 4, 5: 6}
