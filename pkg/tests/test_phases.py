"""Signs <-> twists correspondence, admissibility, multi-bridge decomposition."""

import itertools
import random

import pytest

from patchwork.combinatorics import is_even_point
from patchwork.errors import Inadmissible, NotDividing
from patchwork.phases import (
    analyze_twists,
    decompose_multibridges,
    harnack_signs,
    is_admissible,
    is_dividing,
    is_even_free,
    signs_from_twists,
    twists_from_signs,
    violating_cycle,
)

from conftest import sample_admissible


def test_harnack_values(conic):
    tri, _ = conic
    signs = harnack_signs(tri)
    expected = {(0, 0): -1, (1, 0): 1, (2, 0): -1, (0, 1): 1, (1, 1): 1, (0, 2): -1}
    assert signs == expected


def test_harnack_no_twists(conic, quartic, deg14_block):
    for tri, curve in (conic, quartic, (deg14_block[0], deg14_block[1])):
        signs = harnack_signs(tri)
        assert twists_from_signs(curve, signs) == frozenset()
        negated = {p: -s for p, s in signs.items()}
        assert twists_from_signs(curve, negated) == frozenset()


def test_twist_rule_single_flip(conic):
    tri, curve = conic
    signs = harnack_signs(tri)
    signs[(1, 1)] = -signs[(1, 1)]
    twists = twists_from_signs(curve, signs)
    assert is_admissible(curve, twists)
    # flipping one apex toggles exactly the edges whose rule involves it
    assert twists == {ei for ei in curve.bounded_edges
                      if (1, 1) in [tri.points[i] for i in curve.edges[ei].dual]
                      or (1, 1) in _apexes(curve, ei)}


def _apexes(curve, ei):
    e = curve.edges[ei]
    tri = curve.tri
    out = []
    for t in e.ends:
        (v,) = set(tri.triangles[t]) - set(e.dual)
        out.append(tri.points[v])
    return out


def test_signs_round_trip_all_subsets(conic):
    _, curve = conic
    # genus 0: every subset of the 3 bounded edges is admissible
    for r in range(4):
        for sub in itertools.combinations(curve.bounded_edges, r):
            twists = frozenset(sub)
            signs = signs_from_twists(curve, twists)
            assert twists_from_signs(curve, signs) == twists


def test_inadmissible_single_edge(quartic):
    _, curve = quartic
    cyc = sorted(curve.cycles[0])
    with pytest.raises(Inadmissible) as exc:
        signs_from_twists(curve, frozenset([cyc[0]]))
    assert exc.value.cycle_point in curve.cycle_points
    assert violating_cycle(curve, frozenset([cyc[0]])) is not None


def test_orbit_partition_exhaustive(conic):
    """All 64 sign distributions split into 8 orbits of 8 with constant twists."""
    tri, curve = conic
    points = tri.points
    by_twists = {}
    for bits in range(2 ** 6):
        signs = {p: 1 if bits >> i & 1 else -1 for i, p in enumerate(points)}
        by_twists.setdefault(twists_from_signs(curve, signs), []).append(signs)
    assert len(by_twists) == 8
    assert sorted(len(v) for v in by_twists.values()) == [8] * 8

    def orbit(signs):
        out = []
        for eps in ((0, 0), (0, 1), (1, 0), (1, 1)):
            moved = {p: signs[p] * (-1 if (eps[0] * p[0] + eps[1] * p[1]) % 2 else 1)
                     for p in points}
            out.append(tuple(sorted(moved.items())))
            out.append(tuple(sorted({p: -s for p, s in moved.items()}.items())))
        return set(out)

    for members in by_twists.values():
        keys = {tuple(sorted(m.items())) for m in members}
        assert orbit(members[0]) == keys


def test_admissible_space_is_closed(quartic):
    _, curve = quartic
    rng = random.Random(7)
    samples = sample_admissible(curve, rng, 40)
    for a, b in zip(samples[::2], samples[1::2]):
        assert is_admissible(curve, a) and is_admissible(curve, b)
        assert is_admissible(curve, a ^ b)
        if is_dividing(curve, a) and is_dividing(curve, b):
            assert is_dividing(curve, a ^ b)


def test_empty_twists_maximal(quartic):
    _, curve = quartic
    ts = analyze_twists(curve, frozenset())
    assert ts.admissible and ts.dividing and ts.maximal and ts.even_free


def test_deg10_flags(deg10_block):
    tri, curve, twists, _ = deg10_block
    ts = analyze_twists(curve, twists)
    assert ts.admissible and ts.dividing and ts.even_free
    assert not ts.maximal      # non-exposed twisted edges exist
    # removing one exposed twisted edge breaks the conditions
    exposed = sorted(ei for ei in twists if curve.edges[ei].exposed)
    broken = twists - {exposed[0]}
    assert not is_dividing(curve, broken)


def test_decompose_singleton_bridge(conic):
    _, curve = conic
    # genus 0: every bounded edge is a bridge on no cycle
    e = curve.bounded_edges[0]
    dec = decompose_multibridges(curve, frozenset([e]))
    assert len(dec.parts) == 1
    assert dec.parts[0].edges == frozenset([e])
    assert not dec.parts[0].circuit      # its dual touches the boundary


def test_decompose_requires_dividing(quartic):
    _, curve = quartic
    cyc = sorted(curve.cycles[0])
    with pytest.raises(NotDividing):
        decompose_multibridges(curve, frozenset([cyc[0]]))


def _decomposition_invariants(curve, twists, dec):
    union = frozenset()
    for part in dec.parts:
        assert union & part.edges == frozenset()
        union |= part.edges
        dirs = {curve.edges[ei].direction for ei in part.edges}
        assert len(dirs) == 1
        assert part.circuit == all(not curve.edges[ei].exposed for ei in part.edges)
        duals = {p for ei in part.edges for p in curve.dual_points(ei)}
        assert part.even == any(is_even_point(p) for p in duals)
        assert is_dividing(curve, part.edges)
    assert union == twists


def test_decompose_deg14_single(deg14_block):
    """Boundary-touching K_{2,8}: quadrilateral circuits degenerate into
    exposed multi-bridges plus one bridge on no cycle."""
    tri, curve, twists, block = deg14_block
    dec = decompose_multibridges(curve, twists)
    _decomposition_invariants(curve, twists, dec)
    sizes = sorted(len(p.edges) for p in dec.parts)
    assert sizes == [1, 3, 4, 4, 4]
    assert all(p.even_free for p in dec.parts)
    assert not any(p.circuit for p in dec.parts)


def test_decompose_interior_block_quads(deg14_full):
    """The fully interior block of the stacked construction splits into
    quadrilateral circuits, two per K_{2,4}."""
    from patchwork.ragsdale import block_twists
    cfg = deg14_full
    curve = cfg.curve
    inner = [b for b in cfg.blocks if b.t == 1][0]
    twists = block_twists(curve, inner)
    dec = decompose_multibridges(curve, twists)
    _decomposition_invariants(curve, twists, dec)
    assert len(dec.parts) == 2
    assert all(p.circuit and p.even_free and len(p.edges) == 4 for p in dec.parts)


def test_decompose_full_deg14(deg14_full):
    cfg = deg14_full
    dec = decompose_multibridges(cfg.curve, cfg.twists)
    _decomposition_invariants(cfg.curve, cfg.twists, dec)


def test_even_free_detection(deg14_full):
    cfg = deg14_full
    assert is_even_free(cfg.curve, cfg.twists)


def test_decompose_many_parallel_edges():
    """Cycles with four twisted edges of one direction (beyond the usual
    at-most-two situation) still decompose into verified minimal cuts."""
    from patchwork.combinatorics import dual_curve, simplex_polygon
    from patchwork.phases import dividing_space_basis
    from patchwork.ragsdale import triangulate_with_constraints

    star = [((3, 3), (2, 3)), ((3, 3), (4, 3)), ((3, 3), (3, 2)),
            ((3, 3), (3, 4)), ((3, 3), (5, 2)), ((3, 3), (1, 4))]
    tri = triangulate_with_constraints(simplex_polygon(8), star)
    curve = dual_curve(tri)
    cyc = curve.cycles[curve.cycle_points.index((3, 3))]
    assert sorted(
        [curve.edges[e].direction for e in cyc].count(d)
        for d in ((0, 1), (1, 0), (1, 1))) == [2, 4, 4]

    basis = dividing_space_basis(curve)
    rng = random.Random(5)
    hits = 0
    for _ in range(300):
        t = frozenset()
        for vec in basis:
            if rng.getrandbits(1):
                t ^= vec
        parallel = [e for e in cyc & t if curve.edges[e].direction == (1, 0)]
        if len(parallel) >= 4:
            hits += 1
            dec = decompose_multibridges(curve, t)    # minimal cuts asserted
            _decomposition_invariants(curve, t, dec)
    assert hits >= 20
