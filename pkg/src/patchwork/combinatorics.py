"""Lattice polygons, unimodular triangulations, and dual tropical curves.

Everything here is exact integer / rational arithmetic.  A validated
triangulation knows its lattice points, edge incidences and toric strata;
its dual curve knows edge directions mod 2, exposure flags and the primitive
cycles indexed by interior lattice points in lexicographic order (all
downstream matrices use that order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    BadIncidence,
    MissingLatticePoint,
    NonConvexPolygon,
    NotInducing,
    NotUnimodular,
)

Point = tuple[int, int]
Vec = tuple[int, int]


# --- elementary lattice geometry ----------------------------------------------

def is_even_point(p: Point) -> bool:
    """Both coordinates even; every other lattice point is "odd"."""
    return p[0] % 2 == 0 and p[1] % 2 == 0


def lattice_length(a: Point, b: Point) -> int:
    return math.gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))


def is_primitive(a: Point, b: Point) -> bool:
    return lattice_length(a, b) == 1


def cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def swap_mod2(v: Vec) -> Vec:
    """Direction mod 2 of the 90-degree rotation of v."""
    return (v[1] % 2, v[0] % 2)


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Proper interior crossing of two primitive lattice segments.

    Primitive segments contain no lattice point in their interior, so
    endpoint-in-interior and collinear-overlap cases cannot occur; only the
    transversal test is needed.
    """
    o1 = cross(a, b, c)
    o2 = cross(a, b, d)
    o3 = cross(c, d, a)
    o4 = cross(c, d, b)
    return (o1 > 0) != (o2 > 0) and o1 != 0 and o2 != 0 and \
        (o3 > 0) != (o4 > 0) and o3 != 0 and o4 != 0


# --- polygon and strata ----------------------------------------------------------

@dataclass(frozen=True)
class Stratum:
    """A 1-dimensional toric stratum, i.e. an edge of the polygon.

    ``normal`` is the primitive inner normal and ``support`` its value on the
    edge (the minimum of normal.v over the polygon).
    """

    index: int
    start: Point
    end: Point
    normal: Vec
    support: int
    lattice_length: int


def _corner_vertices(vertices: Sequence[Point]) -> list[Point]:
    """Drop collinear vertices, keeping true corners in ccw order."""
    n = len(vertices)
    corners = []
    for i in range(n):
        a, b, c = vertices[i - 1], vertices[i], vertices[(i + 1) % n]
        if cross(a, b, c) != 0:
            corners.append(b)
    return corners


def _validate_polygon(vertices: Sequence[Point]) -> list[Point]:
    if len(vertices) < 3:
        raise NonConvexPolygon("polygon needs at least 3 vertices")
    if len(set(vertices)) != len(vertices):
        raise NonConvexPolygon("repeated polygon vertex")
    area2 = 0
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        area2 += a[0] * b[1] - b[0] * a[1]
    if area2 <= 0:
        raise NonConvexPolygon("vertices must be counterclockwise with positive area")
    for i in range(n):
        a, b, c = vertices[i - 1], vertices[i], vertices[(i + 1) % n]
        if cross(a, b, c) < 0:
            raise NonConvexPolygon(f"reflex corner at {b}")
    # left turns plus positive area still allow winding > 1; the edge
    # directions of a convex ccw boundary sweep the circle exactly once
    directions = []
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        directions.append((b[0] - a[0], b[1] - a[1]))
    descents = 0
    for i in range(n):
        u, v = directions[i], directions[(i + 1) % n]
        if u[0] * v[1] - u[1] * v[0] == 0 and u[0] * v[0] + u[1] * v[1] < 0:
            raise NonConvexPolygon("boundary reverses direction")
        if _angle_class(v) < _angle_class(u):
            descents += 1
    if descents != 1:
        raise NonConvexPolygon("boundary winds around more than once")
    corners = _corner_vertices(vertices)
    if len(corners) < 3:
        raise NonConvexPolygon("degenerate polygon")
    return corners


def _angle_class(v: Vec) -> tuple[int, Fraction]:
    """Exact sort key for direction angle in [0, 2pi)."""
    x, y = v
    if y == 0:
        return (0 if x > 0 else 2, Fraction(0))
    if y > 0:
        return (1, Fraction(-x, y))
    return (3, Fraction(-x, y))


def _polygon_lattice_points(corners: Sequence[Point]) -> list[Point]:
    xs = [p[0] for p in corners]
    ys = [p[1] for p in corners]
    pts = []
    n = len(corners)
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            inside = True
            for i in range(n):
                if cross(corners[i], corners[(i + 1) % n], (x, y)) < 0:
                    inside = False
                    break
            if inside:
                pts.append((x, y))
    pts.sort()
    return pts


def _strata(corners: Sequence[Point]) -> list[Stratum]:
    strata = []
    n = len(corners)
    for i in range(n):
        a, b = corners[i], corners[(i + 1) % n]
        dx, dy = b[0] - a[0], b[1] - a[1]
        g = math.gcd(abs(dx), abs(dy))
        # inner normal: rotate the ccw edge direction by +90 degrees
        normal = (-dy // g, dx // g)
        strata.append(Stratum(
            index=i, start=a, end=b, normal=normal,
            support=normal[0] * a[0] + normal[1] * a[1],
            lattice_length=g,
        ))
    return strata


# --- validated triangulation ---------------------------------------------------

@dataclass(frozen=True)
class TriEdge:
    """Edge of the triangulation: unordered pair of point indices, i < j."""

    a: int
    b: int
    boundary: bool
    triangles: tuple[int, ...]  # 1 for boundary edges, 2 for interior


@dataclass
class LatticeTriangulation:
    polygon: list[Point]              # corner vertices, ccw
    points: list[Point]               # all lattice points, lex sorted
    triangles: list[tuple[int, int, int]]
    edges: list[TriEdge]
    strata: list[Stratum]
    point_index: dict[Point, int] = field(repr=False)
    edge_index: dict[tuple[int, int], int] = field(repr=False)
    boundary_points: set[int] = field(repr=False)
    point_strata: dict[int, list[int]] = field(repr=False)
    triangles_at_point: dict[int, list[int]] = field(repr=False)
    smooth_fan: bool = True

    @property
    def interior_points(self) -> list[int]:
        return [i for i in range(len(self.points)) if i not in self.boundary_points]

    def is_boundary_point(self, i: int) -> bool:
        return i in self.boundary_points

    def edge_between(self, p: Point, q: Point) -> Optional[int]:
        i, j = self.point_index.get(p), self.point_index.get(q)
        if i is None or j is None:
            return None
        return self.edge_index.get((min(i, j), max(i, j)))


def _point_on_boundary(corners: Sequence[Point], p: Point) -> bool:
    n = len(corners)
    for i in range(n):
        a, b = corners[i], corners[(i + 1) % n]
        if cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return True
    return False


def validate_triangulation(polygon: Sequence[Point],
                           triangles: Iterable[Sequence[Point]]) -> LatticeTriangulation:
    """Validate an alleged unimodular triangulation of a convex lattice polygon.

    Checks convexity, area-1/2 triangles, coverage of the polygon area, use of
    every lattice point, and the 1-or-2 edge incidence rule.  Returns the
    derived structure (edges, strata, boundary classification).
    """
    polygon = [tuple(p) for p in polygon]
    corners = _validate_polygon(polygon)
    points = _polygon_lattice_points(corners)
    point_index = {p: i for i, p in enumerate(points)}
    strata = _strata(corners)

    tri_list: list[tuple[int, int, int]] = []
    area2_total = 0
    for raw in triangles:
        tri_pts = [tuple(p) for p in raw]
        if len(tri_pts) != 3:
            raise BadIncidence(f"triangle must have 3 vertices: {tri_pts}")
        for p in tri_pts:
            if p not in point_index:
                raise BadIncidence(f"triangle vertex {p} is not a lattice point of the polygon")
        a, b, c = tri_pts
        ar2 = cross(a, b, c)
        if abs(ar2) != 1:
            raise NotUnimodular(f"triangle {tri_pts} has area {abs(ar2)}/2, expected 1/2")
        if ar2 < 0:
            b, c = c, b
        tri_list.append((point_index[a], point_index[b], point_index[c]))
        area2_total += 1
    tri_list.sort(key=lambda t: tuple(sorted(t)))
    if len(set(tuple(sorted(t)) for t in tri_list)) != len(tri_list):
        raise BadIncidence("duplicate triangle")

    used = set()
    for t in tri_list:
        used.update(t)
    if len(used) != len(points):
        missing = [points[i] for i in range(len(points)) if i not in used]
        raise MissingLatticePoint(f"lattice points not used as vertices: {missing}")

    poly_area2 = 0
    n = len(corners)
    for i in range(n):
        a, b = corners[i], corners[(i + 1) % n]
        poly_area2 += a[0] * b[1] - b[0] * a[1]
    if area2_total != poly_area2:
        raise BadIncidence(
            f"triangle areas sum to {area2_total}/2 but polygon area is {poly_area2}/2")

    boundary_points = {i for i, p in enumerate(points) if _point_on_boundary(corners, p)}

    point_strata: dict[int, list[int]] = {}
    for i in boundary_points:
        p = points[i]
        point_strata[i] = [s.index for s in strata
                           if s.normal[0] * p[0] + s.normal[1] * p[1] == s.support
                           and _on_segment(s.start, s.end, p)]

    incident: dict[tuple[int, int], list[int]] = {}
    for ti, t in enumerate(tri_list):
        for u, v in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            key = (min(u, v), max(u, v))
            incident.setdefault(key, []).append(ti)

    edges: list[TriEdge] = []
    for key in sorted(incident):
        tris = tuple(sorted(incident[key]))
        a, b = key
        # a segment lies on the boundary iff its endpoints share a stratum
        on_boundary = a in boundary_points and b in boundary_points \
            and bool(set(point_strata[a]) & set(point_strata[b]))
        expected = 1 if on_boundary else 2
        if len(tris) != expected:
            raise BadIncidence(
                f"edge {points[a]}-{points[b]} lies in {len(tris)} triangles, expected {expected}")
        edges.append(TriEdge(a=a, b=b, boundary=on_boundary, triangles=tris))
    edge_index = {(e.a, e.b): i for i, e in enumerate(edges)}

    triangles_at_point: dict[int, list[int]] = {i: [] for i in range(len(points))}
    for ti, t in enumerate(tri_list):
        for v in t:
            triangles_at_point[v].append(ti)

    smooth = all(
        abs(strata[i].normal[0] * strata[(i + 1) % len(strata)].normal[1]
            - strata[i].normal[1] * strata[(i + 1) % len(strata)].normal[0]) == 1
        for i in range(len(strata)))

    return LatticeTriangulation(
        polygon=corners, points=points, triangles=tri_list, edges=edges,
        strata=strata, point_index=point_index, edge_index=edge_index,
        boundary_points=boundary_points, point_strata=point_strata,
        triangles_at_point=triangles_at_point, smooth_fan=smooth,
    )


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    return cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


# --- dual curve -------------------------------------------------------------------

@dataclass(frozen=True)
class CurveEdge:
    """Edge of the dual tropical curve.

    ``dual`` is the pair of triangulation point indices; bounded edges join two
    trivalent vertices (triangles), unbounded edges join a trivalent vertex to
    a 1-valent leaf on a toric stratum.
    """

    index: int
    dual: tuple[int, int]
    bounded: bool
    direction: Vec          # mod 2, the 90-degree rotation of the dual edge
    exposed: bool
    ends: tuple[int, int]   # curve vertex ids


@dataclass
class CurveGraph:
    tri: LatticeTriangulation
    edges: list[CurveEdge]
    genus: int
    cycles: list[frozenset[int]]        # edge-index sets, one per interior point
    cycle_points: list[Point]           # lex order; fixes all matrix orderings
    n_vertices: int
    incident: list[list[int]]           # curve vertex id -> incident edge ids
    edge_by_dual: dict[tuple[int, int], int] = field(repr=False)
    cycles_of_edge: dict[int, tuple[int, ...]] = field(repr=False)

    @property
    def bounded_edges(self) -> list[int]:
        return [e.index for e in self.edges if e.bounded]

    @property
    def unbounded_edges(self) -> list[int]:
        return [e.index for e in self.edges if not e.bounded]

    def leaf_of(self, edge: int) -> int:
        e = self.edges[edge]
        assert not e.bounded
        return e.ends[1]

    def dual_points(self, edge: int) -> tuple[Point, Point]:
        a, b = self.edges[edge].dual
        return self.tri.points[a], self.tri.points[b]


def dual_curve(tri: LatticeTriangulation) -> CurveGraph:
    """Build the dual tropical curve of a validated triangulation."""
    n_tris = len(tri.triangles)
    edges: list[CurveEdge] = []
    leaf_count = 0
    for idx, te in enumerate(tri.edges):
        p, q = tri.points[te.a], tri.points[te.b]
        direction = swap_mod2(((p[0] + q[0]) % 2, (p[1] + q[1]) % 2))
        exposed = te.a in tri.boundary_points or te.b in tri.boundary_points
        if te.boundary:
            ends = (te.triangles[0], n_tris + leaf_count)
            leaf_count += 1
            edges.append(CurveEdge(index=idx, dual=(te.a, te.b), bounded=False,
                                   direction=direction, exposed=True, ends=ends))
        else:
            ends = (te.triangles[0], te.triangles[1])
            edges.append(CurveEdge(index=idx, dual=(te.a, te.b), bounded=True,
                                   direction=direction, exposed=exposed, ends=ends))

    n_vertices = n_tris + leaf_count
    incident: list[list[int]] = [[] for _ in range(n_vertices)]
    for e in edges:
        incident[e.ends[0]].append(e.index)
        incident[e.ends[1]].append(e.index)
    for v in range(n_tris):
        assert len(incident[v]) == 3, "dual vertex of a triangle must be 3-valent"

    interior = tri.interior_points
    cycle_points = [tri.points[i] for i in interior]
    cycles = []
    for pi in interior:
        cyc = frozenset(e.index for e in edges if pi in e.dual)
        # the link of an interior point is a closed triangle fan
        assert all(edges[i].bounded for i in cyc)
        cycles.append(cyc)

    cycles_of_edge: dict[int, tuple[int, ...]] = {}
    for ci, cyc in enumerate(cycles):
        for ei in cyc:
            cycles_of_edge[ei] = cycles_of_edge.get(ei, ()) + (ci,)

    return CurveGraph(
        tri=tri, edges=edges, genus=len(interior), cycles=cycles,
        cycle_points=cycle_points, n_vertices=n_vertices, incident=incident,
        edge_by_dual={e.dual: e.index for e in edges},
        cycles_of_edge=cycles_of_edge,
    )


# --- polygon-level predicates ------------------------------------------------------

def strict_even_degree(tri: LatticeTriangulation) -> bool:
    """True iff every polygon edge has even lattice length."""
    return all(s.lattice_length % 2 == 0 for s in tri.strata)


def is_lattice_transform_of_simplex(tri: LatticeTriangulation) -> Optional[int]:
    """Return k if the polygon is a unimodular affine image of the triangle
    conv{(0,0),(2k,0),(0,2k)}, else None."""
    corners = tri.polygon
    if len(corners) != 3:
        return None
    lengths = {lattice_length(corners[i], corners[(i + 1) % 3]) for i in range(3)}
    if len(lengths) != 1:
        return None
    length = lengths.pop()
    if length % 2 != 0:
        return None
    a, b, c = corners
    g = length
    u = ((b[0] - a[0]) // g, (b[1] - a[1]) // g)
    v = ((c[0] - b[0]) // g, (c[1] - b[1]) // g)
    if abs(u[0] * v[1] - u[1] * v[0]) != 1:
        return None
    return length // 2


# --- geometric realization of the curve ----------------------------------------------

@dataclass
class CurvePositions:
    """Exact positions of the trivalent vertices plus outward ray directions.

    ``vertex_pos[t]`` is the corner locus point of triangle t; unbounded edges
    carry the primitive outward normal of their stratum as ray direction.
    """

    vertex_pos: list[tuple[Fraction, Fraction]]
    ray_direction: dict[int, Vec]       # unbounded edge index -> outward direction


def curve_geometry(tri: LatticeTriangulation,
                   heights: dict[Point, Fraction]) -> CurvePositions:
    """Verify that ``heights`` induce the triangulation (upper hull of the
    lifted points) and return vertex positions / ray directions.

    Raises NotInducing when the regular subdivision differs.
    """
    h: list[Fraction] = []
    for p in tri.points:
        if p not in heights:
            raise NotInducing(f"missing height for lattice point {p}")
        h.append(Fraction(heights[p]))

    for ti, (ia, ib, ic) in enumerate(tri.triangles):
        a, b, c = tri.points[ia], tri.points[ib], tri.points[ic]
        # affine function l(x) = alpha.x + beta interpolating the lifted triangle
        d1 = (b[0] - a[0], b[1] - a[1])
        d2 = (c[0] - a[0], c[1] - a[1])
        det = d1[0] * d2[1] - d1[1] * d2[0]
        r1 = h[ib] - h[ia]
        r2 = h[ic] - h[ia]
        alpha = (Fraction(r1 * d2[1] - r2 * d1[1], det),
                 Fraction(r2 * d1[0] - r1 * d2[0], det))
        beta = h[ia] - (alpha[0] * a[0] + alpha[1] * a[1])
        for qi, q in enumerate(tri.points):
            if qi in (ia, ib, ic):
                continue
            if alpha[0] * q[0] + alpha[1] * q[1] + beta <= h[qi]:
                raise NotInducing(
                    f"heights do not induce the triangulation: point {q} is not "
                    f"strictly below the lifted triangle {a},{b},{c}")

    vertex_pos = []
    for (ia, ib, ic) in tri.triangles:
        a, b, c = tri.points[ia], tri.points[ib], tri.points[ic]
        # corner locus: h(a)+a.x = h(b)+b.x = h(c)+c.x
        m11, m12 = b[0] - a[0], b[1] - a[1]
        m21, m22 = c[0] - a[0], c[1] - a[1]
        r1, r2 = h[tri.point_index[a]] - h[tri.point_index[b]], \
            h[tri.point_index[a]] - h[tri.point_index[c]]
        det = m11 * m22 - m12 * m21
        x = Fraction(r1 * m22 - r2 * m12, det)
        y = Fraction(r2 * m11 - r1 * m21, det)
        vertex_pos.append((x, y))

    rays = {}
    for ei, te in enumerate(tri.edges):
        if te.boundary:
            stratum = _stratum_of_edge(tri, te)
            rays[ei] = (-stratum.normal[0], -stratum.normal[1])
    return CurvePositions(vertex_pos=vertex_pos, ray_direction=rays)


def _stratum_of_edge(tri: LatticeTriangulation, te: TriEdge) -> Stratum:
    common = set(tri.point_strata[te.a]) & set(tri.point_strata[te.b])
    assert common, "boundary edge must lie on a stratum"
    return tri.strata[min(common)]


def barycentric_positions(tri: LatticeTriangulation) -> CurvePositions:
    """Position-free fallback layout for rendering: triangle centroids."""
    vertex_pos = []
    for (ia, ib, ic) in tri.triangles:
        a, b, c = tri.points[ia], tri.points[ib], tri.points[ic]
        vertex_pos.append((Fraction(a[0] + b[0] + c[0], 3),
                           Fraction(a[1] + b[1] + c[1], 3)))
    rays = {}
    for ei, te in enumerate(tri.edges):
        if te.boundary:
            stratum = _stratum_of_edge(tri, te)
            rays[ei] = (-stratum.normal[0], -stratum.normal[1])
    return CurvePositions(vertex_pos=vertex_pos, ray_direction=rays)


# --- canonical triangle polygon -------------------------------------------------------

def simplex_polygon(d: int) -> list[Point]:
    """Vertices of conv{(0,0),(d,0),(0,d)} in ccw order."""
    return [(0, 0), (d, 0), (0, d)]


def polygon_data(polygon: Sequence[Point]) -> tuple[list[Point], list[Point], list[Stratum]]:
    """(corners, lattice points, strata) of a convex lattice polygon."""
    corners = _validate_polygon([tuple(p) for p in polygon])
    return corners, _polygon_lattice_points(corners), _strata(corners)
