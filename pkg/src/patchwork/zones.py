"""Zone decomposition of the polygon by dual twisted edges, and oval counts.

Cutting the polygon along the dual segments of the twisted edges splits it
into zones; a two-coloring with the boundary zone(s) in class Y1 turns the
lattice-point census per class into closed-form even/odd oval counts for
configurations dual to disjoint complete bipartite blocks K_{2,2l}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .combinatorics import CurveGraph, Point, is_even_point, strict_even_degree
from .errors import (
    HypothesisViolated,
    Inadmissible,
    NoUniqueSpecialZone,
    NotTwoColorable,
    PreconditionFailed,
)
from .phases import is_admissible, is_dividing, is_even_free


@dataclass
class ZoneDecomposition:
    curve: CurveGraph
    twists: frozenset[int]
    zone_of_triangle: list[int]
    n_zones: int
    boundary_zones: list[int]             # zones containing a boundary segment
    special_zone: int                     # lowest boundary zone
    color: list[int]                      # 1 for Y1 (contains the special zone), 0 for Y0
    # census of lattice points interior to the polygon and not on a dual
    # twisted segment, by (zone class, point parity)
    p1: int
    n1: int
    p0: int
    n0: int

    def zone_class(self, zone: int) -> int:
        return self.color[zone]


def zone_decomposition(curve: CurveGraph, twists: Iterable[int]) -> ZoneDecomposition:
    """Union triangles across non-dual-twisted interior edges; two-color the
    zone adjacency; census interior lattice points per class."""
    tri = curve.tri
    twists = frozenset(twists)
    if not is_admissible(curve, twists):
        raise Inadmissible("zone decomposition needs an admissible twist set")

    cut_edges = {curve.edges[ei].dual for ei in twists}
    n_tris = len(tri.triangles)
    parent = list(range(n_tris))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for te in tri.edges:
        if not te.boundary and (te.a, te.b) not in cut_edges:
            union(te.triangles[0], te.triangles[1])

    roots: dict[int, int] = {}
    zone_of = [0] * n_tris
    for t in range(n_tris):
        r = find(t)
        if r not in roots:
            roots[r] = len(roots)
        zone_of[t] = roots[r]
    n_zones = len(roots)

    boundary_zones = sorted({zone_of[te.triangles[0]] for te in tri.edges if te.boundary})
    if len(boundary_zones) > 1 and all(not curve.edges[ei].exposed for ei in twists):
        raise NoUniqueSpecialZone(
            f"{len(boundary_zones)} boundary zones from non-exposed twists")

    adj: dict[int, set[int]] = {z: set() for z in range(n_zones)}
    for te in tri.edges:
        if not te.boundary and (te.a, te.b) in cut_edges:
            z1, z2 = zone_of[te.triangles[0]], zone_of[te.triangles[1]]
            if z1 == z2:
                raise NotTwoColorable(
                    f"dual twisted segment {tri.points[te.a]}-{tri.points[te.b]} "
                    "has the same zone on both sides")
            adj[z1].add(z2)
            adj[z2].add(z1)

    color = [-1] * n_zones
    special = boundary_zones[0]
    for start in range(n_zones):
        if color[start] != -1:
            continue
        color[start] = 1
        stack = [start]
        while stack:
            z = stack.pop()
            for w in adj[z]:
                if color[w] == -1:
                    color[w] = 1 - color[z]
                    stack.append(w)
                elif color[w] == color[z]:
                    raise NotTwoColorable("zone adjacency graph has an odd cycle")

    if any(color[z] != color[special] for z in boundary_zones):
        raise NoUniqueSpecialZone("boundary zones fall in both color classes")
    if color[special] == 0:
        color = [1 - c for c in color]

    cut_points = set()
    for (a, b) in cut_edges:
        cut_points.add(a)
        cut_points.add(b)

    p1 = n1 = p0 = n0 = 0
    for pi, p in enumerate(tri.points):
        if pi in tri.boundary_points or pi in cut_points:
            continue
        z = zone_of[tri.triangles_at_point[pi][0]]
        cls = color[z]
        if is_even_point(p):
            if cls == 1:
                p1 += 1
            else:
                p0 += 1
        else:
            if cls == 1:
                n1 += 1
            else:
                n0 += 1

    return ZoneDecomposition(
        curve=curve, twists=twists, zone_of_triangle=zone_of, n_zones=n_zones,
        boundary_zones=boundary_zones, special_zone=special, color=color,
        p1=p1, n1=n1, p0=p0, n0=n0,
    )


# --- complete bipartite block recognition ------------------------------------------------

@dataclass(frozen=True)
class BipartiteBlock:
    edges: frozenset[int]
    two_set: tuple[Point, Point]
    big_set: tuple[Point, ...]
    boundary_contacts: int     # merge count: 2-set class on boundary + big-set vertices on boundary

    @property
    def l(self) -> int:
        return len(self.big_set) // 2


def recognize_bipartite_block(curve: CurveGraph,
                              edges: Iterable[int]) -> Optional[BipartiteBlock]:
    """Detect whether the dual segments of a twist subset form exactly a
    complete bipartite graph K_{2,2l}; returns the two vertex classes."""
    tri = curve.tri
    edges = frozenset(edges)
    duals = [curve.edges[ei].dual for ei in edges]
    adj: dict[int, set[int]] = {}
    for a, b in duals:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    verts = sorted(adj)
    if not verts:
        return None
    colors: dict[int, int] = {}
    stack = [(verts[0], 0)]
    while stack:
        v, c = stack.pop()
        if v in colors:
            if colors[v] != c:
                return None
            continue
        colors[v] = c
        for w in adj[v]:
            stack.append((w, 1 - c))
    if len(colors) != len(verts):
        return None     # dual graph not connected
    side0 = sorted(v for v in verts if colors[v] == 0)
    side1 = sorted(v for v in verts if colors[v] == 1)
    if len(side0) > len(side1):
        side0, side1 = side1, side0
    if len(side0) != 2 or len(side1) % 2 != 0 or len(side1) < 2:
        return None
    if len(edges) != len(side0) * len(side1):
        return None     # not complete
    contacts = (1 if any(v in tri.boundary_points for v in side0) else 0) \
        + sum(1 for v in side1 if v in tri.boundary_points)
    if sum(1 for v in verts if v in tri.boundary_points) > 2:
        raise HypothesisViolated(
            "block-boundary-contacts",
            "a bipartite block may touch the polygon boundary in at most 2 vertices")
    return BipartiteBlock(
        edges=edges,
        two_set=tuple(tri.points[v] for v in side0),
        big_set=tuple(tri.points[v] for v in side1),
        boundary_contacts=contacts,
    )


# --- counts -------------------------------------------------------------------------------

def _check_even_free_circuit_like(curve: CurveGraph, twists: frozenset[int]) -> None:
    """Precondition for the count formulas: dividing, even-free, and every
    exposed twisted edge accounted for by a boundary-touching K_{2,2l} block."""
    if not is_dividing(curve, twists):
        raise PreconditionFailed("twist set must be dividing")
    if not is_even_free(curve, twists):
        raise PreconditionFailed("twist set must be even-free")
    exposed = {ei for ei in twists if curve.edges[ei].exposed}
    if not exposed:
        return
    for comp_edges in _dual_components(curve, twists):
        if comp_edges & exposed:
            if recognize_bipartite_block(curve, comp_edges) is None:
                raise PreconditionFailed(
                    "exposed twisted edges are only allowed inside complete "
                    "bipartite K_{2,2l} blocks touching the boundary")


def _dual_components(curve: CurveGraph, twists: frozenset[int]) -> list[frozenset[int]]:
    """Connected components of the dual segment graph, as edge sets."""
    point_edges: dict[int, list[int]] = {}
    for ei in twists:
        a, b = curve.edges[ei].dual
        point_edges.setdefault(a, []).append(ei)
        point_edges.setdefault(b, []).append(ei)
    unseen = set(twists)
    comps = []
    while unseen:
        seed = min(unseen)
        comp = {seed}
        unseen.discard(seed)
        stack = [seed]
        while stack:
            ei = stack.pop()
            for v in curve.edges[ei].dual:
                for ej in point_edges[v]:
                    if ej in unseen:
                        unseen.discard(ej)
                        comp.add(ej)
                        stack.append(ej)
        comps.append(frozenset(comp))
    return comps


def even_free_lower_bound(zd: ZoneDecomposition) -> tuple[int, int]:
    """Lower bounds (even, odd) on the oval counts from the zone census alone.

    The realization dominates these coordinatewise, with at least n1+p0 empty
    even ovals and p1+n0 empty odd ovals.
    """
    _check_even_free_circuit_like(zd.curve, zd.twists)
    return zd.n1 + zd.p0 + 1, zd.p1 + zd.n0


@dataclass
class OvalCountPrediction:
    p: int
    n: int
    base_even: int                       # n1 + p0 + 1
    base_odd: int                        # p1 + n0
    block_even: tuple[int, ...]          # per block, l_i + 1 - merges
    block_odd: tuple[int, ...]           # per block, l_i - 1


def bipartite_count(zd: ZoneDecomposition,
                    blocks: Sequence[Iterable[int]]) -> OvalCountPrediction:
    """Exact oval counts for twist sets partitioned into cycle-disjoint
    even-free complete bipartite K_{2,2l} blocks.

    Blocks touching the polygon boundary in a vertex merge the corresponding
    zone oval with the special component, one merge per touched vertex class
    of the 2-set and one per touched big-set vertex; the even count drops
    accordingly.
    """
    curve = zd.curve
    tri = curve.tri
    if not strict_even_degree(tri):
        raise HypothesisViolated("strict-even-degree",
                                 "every polygon edge must have even lattice length")
    block_sets = [frozenset(b) for b in blocks]
    union = frozenset().union(*block_sets) if block_sets else frozenset()
    if union != zd.twists or sum(map(len, block_sets)) != len(zd.twists):
        raise HypothesisViolated("block-partition",
                                 "blocks must partition the twist set")

    touched = []
    for bs in block_sets:
        cyc = set()
        for ei in bs:
            cyc.update(curve.cycles_of_edge.get(ei, ()))
        touched.append(cyc)
    for i in range(len(block_sets)):
        for j in range(i + 1, len(block_sets)):
            if touched[i] & touched[j]:
                raise HypothesisViolated("cycle-disjoint",
                                         f"blocks {i} and {j} meet a common cycle")

    _check_even_free_circuit_like(curve, zd.twists)

    block_even = []
    block_odd = []
    for k, bs in enumerate(block_sets):
        block = recognize_bipartite_block(curve, bs)
        if block is None:
            raise HypothesisViolated(
                "block-shape", f"block {k} is not a complete bipartite K_{{2,2l}}")
        if not all(not is_even_point(p) for p in block.two_set + block.big_set):
            raise HypothesisViolated("even-free", f"block {k} has an even vertex")
        block_even.append(block.l + 1 - block.boundary_contacts)
        block_odd.append(block.l - 1)

    base_even = zd.n1 + zd.p0 + 1
    base_odd = zd.p1 + zd.n0
    return OvalCountPrediction(
        p=base_even + sum(block_even),
        n=base_odd + sum(block_odd),
        base_even=base_even, base_odd=base_odd,
        block_even=tuple(block_even), block_odd=tuple(block_odd),
    )
