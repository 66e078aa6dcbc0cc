"""Real part of a tropical curve in the four symmetric copies of the polygon.

The real part lives on nodes (edge, quadrant); the complement of the curve in
the glued surface is tracked on cells (lattice point, quadrant) with two kinds
of gluings: across curve-edge copies that carry no real part, and across toric
strata (quadrant identifications along the polygon boundary).  Components,
regions, oval tests and the nesting tree are all exact and position-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .combinatorics import CurveGraph, LatticeTriangulation, Point, strict_even_degree
from .errors import (
    MultipleEssentialRegions,
    NotAllOvals,
    NotATree,
    SignConflict,
)
from .phases import Signs

Eps = tuple[int, int]
EPS: tuple[Eps, ...] = ((0, 0), (0, 1), (1, 0), (1, 1))
Node = tuple[int, Eps]        # (curve edge index, quadrant)
Cell = tuple[int, Eps]        # (lattice point index, quadrant)


def extended_sign(signs: Signs, p: Point, eps: Eps) -> int:
    """Sign of the point's copy in quadrant eps."""
    return signs[p] * (-1 if (eps[0] * p[0] + eps[1] * p[1]) % 2 else 1)


# --- phase structure -----------------------------------------------------------

@dataclass
class PhaseStructure:
    curve: CurveGraph
    signs: Signs
    phases: list[tuple[Eps, Eps]]       # per curve edge, sorted pair

    def has_phase(self, edge: int, eps: Eps) -> bool:
        return eps in self.phases[edge]


def phase_structure(curve: CurveGraph, signs: Signs) -> PhaseStructure:
    """Per-edge quadrant pairs whose copy of the edge carries real points.

    The two phases of an edge differ by its direction mod 2, and around every
    trivalent vertex each quadrant appears on 0 or 2 incident edges; both
    facts are asserted.
    """
    tri = curve.tri
    phases = []
    for e in curve.edges:
        p, q = tri.points[e.dual[0]], tri.points[e.dual[1]]
        eps_pair = tuple(sorted(
            eps for eps in EPS
            if extended_sign(signs, p, eps) != extended_sign(signs, q, eps)))
        assert len(eps_pair) == 2, f"edge {e.index} must have exactly 2 phases"
        d = e.direction
        assert ((eps_pair[0][0] ^ eps_pair[1][0]), (eps_pair[0][1] ^ eps_pair[1][1])) == d, \
            "phases must differ by the edge direction mod 2"
        phases.append(eps_pair)

    ps = PhaseStructure(curve=curve, signs=signs, phases=phases)
    for t in range(len(tri.triangles)):
        for eps in EPS:
            k = sum(1 for ei in curve.incident[t] if ps.has_phase(ei, eps))
            assert k in (0, 2), f"phase pairing rule violated at vertex {t}"
    return ps


# --- real part graph -------------------------------------------------------------

@dataclass
class RealPartGraph:
    phases: PhaseStructure
    nodes: list[Node]
    components: list[frozenset[Node]]
    component_of: dict[Node, int] = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.components)


def real_part(phases: PhaseStructure) -> RealPartGraph:
    """Connected components of the (edge, quadrant) graph.

    Nodes pair up at trivalent vertices through the shared quadrant and at
    1-valent vertices through the two phases of the unbounded edge, so every
    component is a closed cycle.
    """
    curve = phases.curve
    n_tris = len(curve.tri.triangles)
    adj: dict[Node, list[Node]] = {}
    nodes: list[Node] = []
    for e in curve.edges:
        for eps in phases.phases[e.index]:
            node = (e.index, eps)
            nodes.append(node)
            adj[node] = []

    for t in range(n_tris):
        for eps in EPS:
            members = [ei for ei in curve.incident[t] if phases.has_phase(ei, eps)]
            if members:
                a, b = members
                adj[(a, eps)].append((b, eps))
                adj[(b, eps)].append((a, eps))
    for ei in curve.unbounded_edges:
        e1, e2 = phases.phases[ei]
        adj[(ei, e1)].append((ei, e2))
        adj[(ei, e2)].append((ei, e1))

    for node, nbrs in adj.items():
        assert len(nbrs) == 2, f"real part node {node} must have 2 neighbors"

    seen: dict[Node, int] = {}
    components: list[frozenset[Node]] = []
    for node in nodes:
        if node in seen:
            continue
        stack = [node]
        seen[node] = len(components)
        comp = {node}
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen[nxt] = len(components)
                    comp.add(nxt)
                    stack.append(nxt)
        components.append(frozenset(comp))
    return RealPartGraph(phases=phases, nodes=nodes, components=components,
                         component_of=seen)


def components(rp: RealPartGraph) -> list[frozenset[Node]]:
    return rp.components


# --- complement regions -------------------------------------------------------------

def _eps_code(eps: Eps) -> int:
    return eps[0] * 2 + eps[1]


@dataclass
class RegionComplex:
    tri: LatticeTriangulation
    curve: CurveGraph
    phases: PhaseStructure
    real: RealPartGraph
    n_cells: int
    region_of: list[int]                      # cell id -> region id
    regions: list[list[int]]                  # region id -> cell ids
    cell_sign: list[int]                      # raw extended sign per cell
    region_sign: list[int]                    # corrected sign of each region root
    essential: list[bool]

    def cell_id(self, point_index: int, eps: Eps) -> int:
        return point_index * 4 + _eps_code(eps)

    @property
    def count(self) -> int:
        return len(self.regions)


class _SignedUnionFind:
    """Union-find carrying a +-1 potential relative to the class root."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.weight = [1] * n  # sign of element relative to parent

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        sign = 1
        for y in reversed(path):
            sign *= self.weight[y]
            self.parent[y] = x
            self.weight[y] = sign
        return x, self.weight[path[0]] if path else 1

    def union(self, x: int, y: int, rel: int) -> bool:
        """Declare sign(x) = rel * sign(y); returns False on conflict."""
        rx, wx = self.find(x)
        ry, wy = self.find(y)
        if rx == ry:
            return wx == rel * wy
        self.parent[rx] = ry
        self.weight[rx] = rel * wy * wx  # wx is sign(x)/sign(rx)
        return True


def complement_regions(phases: PhaseStructure) -> RegionComplex:
    """Union-find the 4*|points| cells along non-real edge copies and toric
    identifications; propagate signs with the per-stratum correction."""
    curve = phases.curve
    tri = curve.tri
    n_pts = len(tri.points)
    n_cells = 4 * n_pts
    uf = _SignedUnionFind(n_cells)

    def cid(pi: int, eps: Eps) -> int:
        return pi * 4 + _eps_code(eps)

    cell_sign = [0] * n_cells
    for pi, p in enumerate(tri.points):
        for eps in EPS:
            cell_sign[cid(pi, eps)] = extended_sign(phases.signs, p, eps)

    # type a: cells glued across edge copies carrying no real part
    for e in curve.edges:
        a, b = e.dual
        for eps in EPS:
            if not phases.has_phase(e.index, eps):
                if not uf.union(cid(a, eps), cid(b, eps), 1):
                    raise SignConflict(f"sign conflict across edge copy {e.dual}, {eps}")

    # type b: quadrant identification along each stratum, sign corrected by
    # the parity of the stratum's support value
    type_b: list[tuple[int, int, int]] = []   # (cell, cell, stratum index)
    for pi in tri.boundary_points:
        for si in tri.point_strata[pi]:
            s = tri.strata[si]
            nbar = (s.normal[0] % 2, s.normal[1] % 2)
            rel = -1 if s.support % 2 else 1
            for eps in EPS:
                other = (eps[0] ^ nbar[0], eps[1] ^ nbar[1])
                x, y = cid(pi, eps), cid(pi, other)
                if not uf.union(x, y, rel):
                    raise SignConflict(
                        f"sign conflict across stratum {si} at point {tri.points[pi]}")
                type_b.append((x, y, si))

    roots: dict[int, int] = {}
    region_of = [0] * n_cells
    regions: list[list[int]] = []
    for c in range(n_cells):
        r, _ = uf.find(c)
        if r not in roots:
            roots[r] = len(regions)
            regions.append([])
        region_of[c] = roots[r]
        regions[roots[r]].append(c)

    region_sign = [0] * len(regions)
    for r, cells in enumerate(regions):
        root_cell = min(cells)
        region_sign[r] = cell_sign[root_cell]

    essential = _essential_regions(tri, curve, phases, region_of, len(regions), type_b)

    return RegionComplex(
        tri=tri, curve=curve, phases=phases, real=real_part(phases),
        n_cells=n_cells, region_of=region_of, regions=regions,
        cell_sign=cell_sign, region_sign=region_sign, essential=essential,
    )


def _essential_regions(tri, curve, phases, region_of, n_regions, type_b) -> list[bool]:
    """A region is essential when it contains a gluing loop crossing some
    toric stratum an odd number of times."""
    n_cells = 4 * len(tri.points)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_cells)]  # (cell, label)

    def cid(pi, eps):
        return pi * 4 + _eps_code(eps)

    for e in curve.edges:
        a, b = e.dual
        for eps in EPS:
            if not phases.has_phase(e.index, eps):
                adj[cid(a, eps)].append((cid(b, eps), 0))
                adj[cid(b, eps)].append((cid(a, eps), 0))
    for x, y, si in type_b:
        adj[x].append((y, 1 << si))
        adj[y].append((x, 1 << si))

    label = [None] * n_cells
    essential = [False] * n_regions
    for start in range(n_cells):
        if label[start] is not None:
            continue
        region = region_of[start]
        label[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w, lab in adj[v]:
                if label[w] is None:
                    label[w] = label[v] ^ lab
                    stack.append(w)
                elif label[v] ^ lab ^ label[w]:
                    essential[region] = True
    return essential


# --- oval test ------------------------------------------------------------------------

def oval_test(rc: RegionComplex, component: frozenset[Node]) -> bool:
    """Re-glue across every edge copy except the component's own; the
    component is an oval iff its two sides remain separated."""
    tri, curve, phases = rc.tri, rc.curve, rc.phases
    n_cells = rc.n_cells
    parent = list(range(n_cells))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    def cid(pi, eps):
        return pi * 4 + _eps_code(eps)

    comp = set(component)
    for e in curve.edges:
        a, b = e.dual
        for eps in EPS:
            if (e.index, eps) not in comp:
                union(cid(a, eps), cid(b, eps))
    for pi in tri.boundary_points:
        for si in tri.point_strata[pi]:
            s = tri.strata[si]
            nbar = (s.normal[0] % 2, s.normal[1] % 2)
            for eps in EPS:
                other = (eps[0] ^ nbar[0], eps[1] ^ nbar[1])
                union(cid(pi, eps), cid(pi, other))

    verdicts = set()
    for (ei, eps) in comp:
        a, b = curve.edges[ei].dual
        verdicts.add(find(cid(a, eps)) != find(cid(b, eps)))
    assert len(verdicts) == 1, "all copies of a component must agree on separation"
    return verdicts.pop()


# --- nesting tree -----------------------------------------------------------------------

@dataclass
class NestingReport:
    root: int
    parent: list[Optional[int]]           # region id -> parent region id
    depth: list[int]                      # region id -> tree depth
    oval_depth: dict[int, int]            # component id -> nesting depth
    p: int
    n: int


def special_component(rc: RegionComplex, twists: Iterable[int]) -> Optional[int]:
    """Component through every unbounded edge copy, if one exists.

    Guaranteed to exist when no twisted edge is exposed; boundary-touching
    bipartite blocks keep it alive as well, with the exterior twisted edges
    absorbed into it.
    """
    curve = rc.curve
    unbounded = curve.unbounded_edges
    if not unbounded:
        return None
    first = unbounded[0]
    eps = rc.phases.phases[first][0]
    comp_id = rc.real.component_of[(first, eps)]
    comp = rc.real.components[comp_id]
    for ei in unbounded:
        for e in rc.phases.phases[ei]:
            if (ei, e) not in comp:
                assert any(curve.edges[ti].exposed for ti in twists), \
                    "non-exposed twists must leave a single boundary-traversing component"
                return None
    return comp_id


def curve_class(tri: LatticeTriangulation) -> tuple[int, ...]:
    """Per stratum, the parity of real intersection points of the curve with
    the stratum line; zero exactly for strict even degree."""
    return tuple(s.lattice_length % 2 for s in tri.strata)


def _normalized_cell_sign(rc: RegionComplex, cell: int) -> int:
    """Extended sign re-based so that all stratum corrections vanish.

    Valid for strict even degree polygons: all corners share one parity class,
    and shifting by it makes every stratum support even.
    """
    tri = rc.tri
    v0 = tri.polygon[0]
    pi, code = divmod(cell, 4)
    eps = EPS[code]
    p = tri.points[pi]
    flip = (eps[0] * (p[0] - v0[0]) + eps[1] * (p[1] - v0[1])) % 2
    return rc.phases.signs[p] * (-1 if flip else 1)


def nesting(rc: RegionComplex) -> NestingReport:
    """Region/oval tree, per-oval depth, and the even/odd oval counts.

    Requires every component to be an oval.  The root is the unique essential
    region; an oval is even iff its outer region sits at even depth.  The
    normalized region signs are checked against depth parity.
    """
    curve = rc.curve
    comps = rc.real.components
    for ci, comp in enumerate(comps):
        if not oval_test(rc, comp):
            raise NotAllOvals(f"component {ci} does not separate the surface")

    n_regions = rc.count
    if n_regions != len(comps) + 1:
        raise NotATree(
            f"expected {len(comps) + 1} regions for {len(comps)} ovals, got {n_regions}")

    edges: dict[int, tuple[int, int]] = {}
    for ci, comp in enumerate(comps):
        sides = set()
        for (ei, eps) in comp:
            a, b = curve.edges[ei].dual
            sides.add(rc.region_of[rc.cell_id(a, eps)])
            sides.add(rc.region_of[rc.cell_id(b, eps)])
        if len(sides) != 2:
            raise NotATree(f"oval {ci} must touch exactly 2 regions, got {sorted(sides)}")
        pair = tuple(sorted(sides))
        if pair in edges.values():
            raise NotATree(f"two ovals separate the same region pair {pair}")
        edges[ci] = pair

    ess = [r for r in range(n_regions) if rc.essential[r]]
    if len(ess) != 1:
        raise MultipleEssentialRegions(
            f"expected exactly one essential region, found {len(ess)}")
    root = ess[0]

    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_regions)]
    for ci, (r1, r2) in edges.items():
        adj[r1].append((r2, ci))
        adj[r2].append((r1, ci))

    parent: list[Optional[int]] = [None] * n_regions
    depth = [-1] * n_regions
    depth[root] = 0
    queue = [root]
    seen = 1
    while queue:
        r = queue.pop(0)
        for (s, _) in adj[r]:
            if depth[s] == -1:
                depth[s] = depth[r] + 1
                parent[s] = r
                queue.append(s)
                seen += 1
    if seen != n_regions:
        raise NotATree("region/oval graph is not connected")

    oval_depth = {}
    p = n = 0
    for ci, (r1, r2) in edges.items():
        d1, d2 = depth[r1], depth[r2]
        assert abs(d1 - d2) == 1, "adjacent regions must differ by one tree level"
        d = min(d1, d2)
        oval_depth[ci] = d
        if d % 2 == 0:
            p += 1
        else:
            n += 1

    if strict_even_degree(rc.tri):
        _check_sign_parity(rc, depth, root)

    return NestingReport(root=root, parent=parent, depth=depth,
                         oval_depth=oval_depth, p=p, n=n)


def _check_sign_parity(rc: RegionComplex, depth: list[int], root: int) -> None:
    """Normalized signs are constant per region and alternate with depth."""
    region_norm: dict[int, int] = {}
    for cell in range(rc.n_cells):
        r = rc.region_of[cell]
        s = _normalized_cell_sign(rc, cell)
        if r in region_norm:
            if region_norm[r] != s:
                raise SignConflict(f"normalized sign not constant on region {r}")
        else:
            region_norm[r] = s
    for r, s in region_norm.items():
        expected = region_norm[root] * (-1 if depth[r] % 2 else 1)
        if s != expected:
            raise SignConflict(f"region {r} sign does not match depth parity")
