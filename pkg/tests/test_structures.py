"""Hand-built certificate shapes: tripartite blocks, K_1 blocks, interior
bipartite blocks and their zone censuses."""


from patchwork.classify import classify, compose_cycle_disjoint
from patchwork.combinatorics import dual_curve, simplex_polygon
from patchwork.phases import is_dividing, signs_from_twists
from patchwork.ragsdale import triangulate_with_constraints
from patchwork.realization import complement_regions, nesting, phase_structure
from patchwork.zones import bipartite_count, zone_decomposition


def _geometric(curve, twists):
    signs = signs_from_twists(curve, twists)
    rep = nesting(complement_regions(phase_structure(curve, signs)))
    return rep.p, rep.n


def test_tripartite_certificate_on_square():
    """Diamond plus spokes on a 4x4 square: the non-exposed dual graph is the
    complete tripartite K_{2,2,1}; exposed twists fix admissibility."""
    square = [(0, 0), (4, 0), (4, 4), (0, 4)]
    c, a1, a2, b1, b2 = (2, 2), (1, 2), (3, 2), (2, 1), (2, 3)
    segments = [(a1, b1), (a1, b2), (a2, b1), (a2, b2),
                (c, a1), (c, a2), (c, b1), (c, b2),
                (a1, (0, 2)), (a2, (4, 2)), (b1, (2, 0)), (b2, (2, 4))]
    tri = triangulate_with_constraints(square, segments)
    curve = dual_curve(tri)
    twists = frozenset(tri.edge_between(p, q) for p, q in segments)
    assert is_dividing(curve, twists)
    rep = classify(curve, twists)
    assert rep.rank == 2
    assert rep.m2 is not None and len(rep.m2.parts) == 3
    assert rep.m2.shape == "K_{1,2,2}"
    assert rep.components == curve.genus - 1


def test_two_k1_blocks_compose_nondividing():
    """Two cycle-disjoint odd blocks made of exposed edges: rank adds to 2
    and the union is non-dividing."""
    tri = triangulate_with_constraints(simplex_polygon(6))
    curve = dual_curve(tri)

    def k1_block(v):
        edges = []
        for ei in sorted(curve.cycles[curve.cycle_points.index(v)]):
            if curve.edges[ei].exposed:
                edges.append(ei)
        chosen = {}
        for ei in edges:
            d = curve.edges[ei].direction
            if d not in chosen and len(curve.cycles_of_edge[ei]) == 1:
                chosen[d] = ei
        assert set(chosen) == {(0, 1), (1, 0), (1, 1)}
        return frozenset(chosen.values())

    t1, t2 = k1_block((1, 1)), k1_block((4, 1))
    for t in (t1, t2):
        rep = classify(curve, t)
        assert rep.rank == 1
        assert rep.m1 is not None and rep.m1.shape == "K_1"
        assert not rep.dividing
    union, expected = compose_cycle_disjoint(curve, [t1, t2])
    assert expected == 2
    rep = classify(curve, union)
    assert rep.rank == 2 and not rep.dividing
    assert rep.components == curve.genus - 1


def test_interior_block_zone_census():
    """A fully interior K_{2,4}: 2l-1 bounded zones, l in Y0 and l-1 in Y1,
    and the count formula matches the geometric one with no merges."""
    from patchwork.ragsdale import Block
    interior = Block(t=0, m=1, apex_top=(3, 8), apex_bottom=(3, 2),
                     base=tuple((x, 5) for x in (1, 2, 4, 5)))
    segments = interior.segments
    tri = triangulate_with_constraints(simplex_polygon(12), segments)
    curve = dual_curve(tri)
    twists = frozenset(tri.edge_between(a, b) for a, b in segments)
    assert all(not curve.edges[ei].exposed for ei in twists)

    zd = zone_decomposition(curve, twists)
    assert zd.n_zones == 4                   # special + (2l - 1) bounded, l = 2
    assert len(zd.boundary_zones) == 1
    bounded = [z for z in range(zd.n_zones) if z not in zd.boundary_zones]
    y0 = [z for z in bounded if zd.color[z] == 0]
    y1 = [z for z in bounded if zd.color[z] == 1]
    assert (len(y0), len(y1)) == (2, 1)

    pred = bipartite_count(zd, [twists])
    assert pred.block_even == (3,)           # l + 1, no boundary merges
    assert (pred.p, pred.n) == _geometric(curve, twists)


def test_diamond_blocks_formula_matches_geometry():
    """Disjoint even-free K_{2,2} diamonds: formula equals geometric count."""
    square = [(0, 0), (6, 0), (6, 6), (0, 6)]
    diamonds = [((2, 3), (1, 2), (3, 2), (2, 1)), ((4, 5), (3, 4), (5, 4), (4, 3))]
    segments = []
    blocks = []
    for n, w, e, s in diamonds:
        segs = [(n, w), (n, e), (s, w), (s, e)]
        segments += segs
        blocks.append(segs)
    tri = triangulate_with_constraints(square, segments)
    curve = dual_curve(tri)
    block_sets = [frozenset(tri.edge_between(a, b) for a, b in segs)
                  for segs in blocks]
    twists = frozenset().union(*block_sets)
    zd = zone_decomposition(curve, twists)
    pred = bipartite_count(zd, block_sets)
    assert pred.block_even == (2, 2) and pred.block_odd == (0, 0)
    assert (pred.p, pred.n) == _geometric(curve, twists)
    rep = classify(curve, twists)
    assert rep.dividing and rep.rank == 4
    assert pred.p + pred.n == rep.components
