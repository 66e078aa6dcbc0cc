"""Sign distributions, twist sets, and their correspondence.

A sign distribution assigns +1/-1 to every lattice point of the subdivision;
a twist set is a subset of bounded curve edges.  The two descriptions are
interconvertible: signs determine twists locally at each bounded edge, and an
admissible twist set determines signs up to the 8-element symmetry group
(global negation and the four quadrant reflections).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from . import gf2
from .combinatorics import CurveGraph, LatticeTriangulation, Point, is_even_point
from .errors import Inadmissible, NotDividing

Signs = dict[Point, int]


# --- sign distributions ---------------------------------------------------------

def harnack_signs(tri: LatticeTriangulation) -> Signs:
    """-1 on points with both coordinates even, +1 elsewhere."""
    return {p: -1 if is_even_point(p) else +1 for p in tri.points}


def _apex_points(curve: CurveGraph, edge: int) -> tuple[Point, Point]:
    """Third vertices of the two triangles adjacent to a bounded edge's dual."""
    e = curve.edges[edge]
    assert e.bounded
    tri = curve.tri
    t1, t2 = e.ends
    dual = set(e.dual)
    (v3,) = set(tri.triangles[t1]) - dual
    (v4,) = set(tri.triangles[t2]) - dual
    return tri.points[v3], tri.points[v4]


def _is_twisted(curve: CurveGraph, edge: int, signs: Signs) -> bool:
    p1, p2 = curve.dual_points(edge)
    p3, p4 = _apex_points(curve, edge)
    if (p3[0] - p4[0]) % 2 == 0 and (p3[1] - p4[1]) % 2 == 0:
        return signs[p3] * signs[p4] == -1
    return signs[p1] * signs[p2] * signs[p3] * signs[p4] == +1


def twists_from_signs(curve: CurveGraph, signs: Signs) -> frozenset[int]:
    """Set of twisted bounded edges induced by a sign distribution.

    The result is always admissible; asserted.
    """
    twists = frozenset(e.index for e in curve.edges
                       if e.bounded and _is_twisted(curve, e.index, signs))
    assert is_admissible(curve, twists), "signs induced an inadmissible twist set"
    return twists


def signs_from_twists(curve: CurveGraph, twists: Iterable[int]) -> Signs:
    """A sign distribution inducing the given admissible twist set.

    Signs are fixed to Harnack values on the lowest-index triangle and
    propagated across the triangle-adjacency spanning tree; every non-tree
    edge is then verified, so an inadmissible set raises Inadmissible with a
    violated cycle attached.
    """
    tri = curve.tri
    twists = frozenset(twists)
    signs: Signs = {}
    root = tri.triangles[0]
    for vi in root:
        p = tri.points[vi]
        signs[p] = -1 if is_even_point(p) else +1

    visited = {0}
    frontier = [0]
    interior_edges = [e for e in curve.edges if e.bounded]
    while frontier:
        t = frontier.pop(0)
        for ei in sorted(curve.incident[t]):
            e = curve.edges[ei]
            if not e.bounded:
                continue
            other = e.ends[0] if e.ends[1] == t else e.ends[1]
            if other in visited:
                continue
            p1, p2 = curve.dual_points(ei)
            p3, p4 = _apex_points(curve, ei)
            known, unknown = (p3, p4) if p4 not in signs else (p4, p3)
            if unknown in signs:
                visited.add(other)
                frontier.append(other)
                continue
            same_class = (known[0] - unknown[0]) % 2 == 0 and (known[1] - unknown[1]) % 2 == 0
            if same_class:
                val = -signs[known] if ei in twists else signs[known]
            else:
                prod = signs[p1] * signs[p2] * signs[known]
                val = prod if ei in twists else -prod
            signs[unknown] = val
            visited.add(other)
            frontier.append(other)

    assert len(signs) == len(tri.points), "sign propagation did not reach every point"
    for e in interior_edges:
        if _is_twisted(curve, e.index, signs) != (e.index in twists):
            cyc = violating_cycle(curve, twists)
            point = curve.cycle_points[cyc] if cyc is not None else None
            raise Inadmissible(
                f"twist set violates the direction condition (cycle around {point})",
                cycle_point=point)
    return signs


# --- admissibility, dividing, maximal --------------------------------------------

def is_admissible(curve: CurveGraph, twists: Iterable[int]) -> bool:
    """Per primitive cycle, the mod-2 directions of its twisted edges sum to 0."""
    twists = set(twists)
    for cyc in curve.cycles:
        s0 = s1 = 0
        for ei in cyc & twists:
            d = curve.edges[ei].direction
            s0 ^= d[0]
            s1 ^= d[1]
        if s0 or s1:
            return False
    return True


def violating_cycle(curve: CurveGraph, twists: Iterable[int]) -> Optional[int]:
    """Index of the first primitive cycle violating admissibility, if any."""
    twists = set(twists)
    for ci, cyc in enumerate(curve.cycles):
        s0 = s1 = 0
        for ei in cyc & twists:
            d = curve.edges[ei].direction
            s0 ^= d[0]
            s1 ^= d[1]
        if s0 or s1:
            return ci
    return None


def is_dividing(curve: CurveGraph, twists: Iterable[int]) -> bool:
    twists = set(twists)
    if not is_admissible(curve, twists):
        return False
    return all(len(cyc & twists) % 2 == 0 for cyc in curve.cycles)


def is_maximal(curve: CurveGraph, twists: Iterable[int]) -> bool:
    twists = set(twists)
    return is_dividing(curve, twists) and \
        all(curve.edges[ei].exposed for ei in twists)


def is_even_free(curve: CurveGraph, twists: Iterable[int]) -> bool:
    """No endpoint of a twisted edge's dual is an even lattice point.

    Dual edges are primitive, so endpoints are the only lattice points on
    them.
    """
    for ei in twists:
        p, q = curve.dual_points(ei)
        if is_even_point(p) or is_even_point(q):
            return False
    return True


@dataclass(frozen=True)
class TwistSet:
    edges: frozenset[int]
    admissible: bool
    dividing: bool
    maximal: bool
    even_free: bool


def analyze_twists(curve: CurveGraph, twists: Iterable[int]) -> TwistSet:
    twists = frozenset(twists)
    for ei in twists:
        assert curve.edges[ei].bounded, "twists are bounded edges only"
    return TwistSet(
        edges=twists,
        admissible=is_admissible(curve, twists),
        dividing=is_dividing(curve, twists),
        maximal=is_maximal(curve, twists),
        even_free=is_even_free(curve, twists),
    )


# --- sampling helpers --------------------------------------------------------------

def admissible_space_basis(curve: CurveGraph) -> list[frozenset[int]]:
    """Basis of the space of admissible twist sets, as edge-id sets."""
    bounded = curve.bounded_edges
    col_of = {ei: j for j, ei in enumerate(bounded)}
    rows = []
    for cyc in curve.cycles:
        r0 = r1 = 0
        for ei in cyc:
            d = curve.edges[ei].direction
            if d[0]:
                r0 |= 1 << col_of[ei]
            if d[1]:
                r1 |= 1 << col_of[ei]
        rows.extend([r0, r1])
    basis = gf2.nullspace(rows, len(bounded))
    return [frozenset(bounded[j] for j in range(len(bounded)) if vec >> j & 1)
            for vec in basis]


def dividing_space_basis(curve: CurveGraph) -> list[frozenset[int]]:
    """Basis of the space of dividing twist sets."""
    bounded = curve.bounded_edges
    col_of = {ei: j for j, ei in enumerate(bounded)}
    rows = []
    for cyc in curve.cycles:
        r0 = r1 = rp = 0
        for ei in cyc:
            d = curve.edges[ei].direction
            if d[0]:
                r0 |= 1 << col_of[ei]
            if d[1]:
                r1 |= 1 << col_of[ei]
            rp |= 1 << col_of[ei]
        rows.extend([r0, r1, rp])
    basis = gf2.nullspace(rows, len(bounded))
    return [frozenset(bounded[j] for j in range(len(bounded)) if vec >> j & 1)
            for vec in basis]


# --- multi-bridge decomposition --------------------------------------------------

@dataclass(frozen=True)
class MultiBridgePart:
    edges: frozenset[int]
    direction: tuple[int, int]
    circuit: bool        # every edge non-exposed
    even: bool           # dual endpoints include an even lattice point
    even_free: bool


@dataclass(frozen=True)
class MultiBridgeDecomposition:
    parts: tuple[MultiBridgePart, ...]


def decompose_multibridges(curve: CurveGraph,
                           twists: Iterable[int]) -> MultiBridgeDecomposition:
    """Split a dividing twist set into multi-bridges.

    Within each primitive cycle the twisted edges of a common direction are
    paired in canonical (sorted) order, and parts are the connected components
    of the pairing relation.  Each part has a single direction mod 2 and is a
    minimal disconnecting set; both facts are verified.  When some cycle has
    more than two twisted edges of one direction the pairing, hence the
    decomposition, is one canonical choice among several.
    """
    twists = frozenset(twists)
    if not is_dividing(curve, twists):
        raise NotDividing("multi-bridge decomposition needs a dividing twist set")

    parent = {ei: ei for ei in twists}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for cyc in curve.cycles:
        by_dir: dict[tuple[int, int], list[int]] = {}
        for ei in sorted(cyc & twists):
            by_dir.setdefault(curve.edges[ei].direction, []).append(ei)
        for group in by_dir.values():
            assert len(group) % 2 == 0  # guaranteed by the dividing conditions
            for a, b in zip(group[::2], group[1::2]):
                union(a, b)

    groups: dict[int, list[int]] = {}
    for ei in twists:
        groups.setdefault(find(ei), []).append(ei)

    parts = []
    for key in sorted(groups):
        edges = frozenset(groups[key])
        directions = {curve.edges[ei].direction for ei in edges}
        assert len(directions) == 1, "multi-bridge must have a single direction mod 2"
        _check_minimal_cut(curve, edges)
        duals = set()
        for ei in edges:
            duals.update(curve.dual_points(ei))
        has_even = any(is_even_point(p) for p in duals)
        parts.append(MultiBridgePart(
            edges=edges,
            direction=directions.pop(),
            circuit=all(not curve.edges[ei].exposed for ei in edges),
            even=has_even,
            even_free=not has_even,
        ))
    return MultiBridgeDecomposition(parts=tuple(parts))


def _check_minimal_cut(curve: CurveGraph, removed: frozenset[int]) -> None:
    """Removal disconnects the curve into exactly two pieces and every removed
    edge joins them (equivalently, no proper subset disconnects)."""
    comp = _components_without(curve, removed)
    n_comp = len(set(comp))
    assert n_comp == 2, f"multi-bridge removal must split the curve in 2, got {n_comp}"
    for ei in removed:
        a, b = curve.edges[ei].ends
        assert comp[a] != comp[b], "multi-bridge edge must join the two sides"


def _components_without(curve: CurveGraph, removed: frozenset[int]) -> list[int]:
    comp = [-1] * curve.n_vertices
    label = 0
    for start in range(curve.n_vertices):
        if comp[start] != -1:
            continue
        stack = [start]
        comp[start] = label
        while stack:
            v = stack.pop()
            for ei in curve.incident[v]:
                if ei in removed:
                    continue
                e = curve.edges[ei]
                w = e.ends[0] if e.ends[1] == v else e.ends[1]
                if comp[w] == -1:
                    comp[w] = label
                    stack.append(w)
        label += 1
    return comp
