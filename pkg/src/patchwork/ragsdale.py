"""Generators for the counter-example families on degree-2k triangles.

A single block plants one complete bipartite graph K_{2,4m} of primitive
segments inside the triangle of size 2k and completes it deterministically to
a unimodular triangulation; the full construction stacks one block per row
t = 0..floor((k-5)/2) following the published coordinate tables, adjusting
vertices that the tables place on even lattice points (the adjustment is
recorded).  Twisting exactly the dual edges of the planted segments yields
dividing curves whose even-oval count exceeds the classical bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .combinatorics import (
    CurveGraph,
    LatticeTriangulation,
    Point,
    cross,
    dual_curve,
    is_primitive,
    polygon_data,
    segments_cross,
    simplex_polygon,
    validate_triangulation,
)
from .errors import (
    ConstraintViolated,
    CrossingRequiredEdges,
    NonPrimitiveRequiredEdge,
)

Segment = tuple[Point, Point]


def ragsdale_bound(k: int) -> int:
    """Number of odd interior lattice points of the size-2k triangle."""
    return (3 * k * k - 3 * k) // 2


S_BY_RESIDUE = {0: 0, 1: 10, 2: 8, 3: 6, 4: 4, 5: 6}


# --- constrained triangulation ------------------------------------------------------

def triangulate_with_constraints(polygon: Sequence[Point],
                                 required: Sequence[Segment] = ()) -> LatticeTriangulation:
    """Deterministic unimodular triangulation containing the required segments.

    After the boundary pieces and the required segments, the shortest (then
    lexicographically least) primitive segment crossing nothing already placed
    is added until the family is maximal; maximal crossing-free families on
    all lattice points triangulate the polygon unimodularly.
    """
    _, points, strata = polygon_data(polygon)
    point_set = set(points)

    placed: list[Segment] = []
    buckets: dict[Point, list[int]] = {}

    def add(seg: Segment) -> None:
        idx = len(placed)
        placed.append(seg)
        for cell in _segment_cells(seg):
            buckets.setdefault(cell, []).append(idx)

    def crosses_placed(seg: Segment) -> bool:
        cand = set()
        for cell in _segment_cells(seg):
            cand.update(buckets.get(cell, ()))
        for idx in cand:
            a, b = placed[idx]
            if (a, b) == seg or (b, a) == seg:
                return False
            if segments_cross(seg[0], seg[1], a, b):
                return True
        return False

    for s in strata:
        g = s.lattice_length
        dx, dy = (s.end[0] - s.start[0]) // g, (s.end[1] - s.start[1]) // g
        for i in range(g):
            add(((s.start[0] + i * dx, s.start[1] + i * dy),
                 (s.start[0] + (i + 1) * dx, s.start[1] + (i + 1) * dy)))

    seen = {tuple(sorted(seg)) for seg in placed}
    for seg in required:
        a, b = tuple(seg[0]), tuple(seg[1])
        if a not in point_set or b not in point_set:
            raise ConstraintViolated(f"required segment endpoint outside the polygon: {seg}")
        if not is_primitive(a, b):
            raise NonPrimitiveRequiredEdge(f"required segment {a}-{b} is not primitive")
        key = tuple(sorted((a, b)))
        if key in seen:
            continue
        if crosses_placed((a, b)):
            raise CrossingRequiredEdges(f"required segment {a}-{b} crosses another")
        add((a, b))
        seen.add(key)

    candidates = []
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            if is_primitive(p, q):
                candidates.append((p, q))
    candidates.sort(key=lambda s: ((s[1][0] - s[0][0]) ** 2 + (s[1][1] - s[0][1]) ** 2, s))

    for seg in candidates:
        key = tuple(sorted(seg))
        if key in seen or crosses_placed(seg):
            continue
        add(seg)
        seen.add(key)

    triangles = _extract_triangles(points, seen)
    return validate_triangulation(polygon, triangles)


def _segment_cells(seg: Segment) -> list[Point]:
    """Unit grid cells touched by the segment (supercover), for bucketing."""
    (x0, y0), (x1, y1) = seg
    cells = set()
    steps = 2 * max(abs(x1 - x0), abs(y1 - y0), 1)
    for i in range(steps + 1):
        x = x0 + (x1 - x0) * i / steps
        y = y0 + (y1 - y0) * i / steps
        fx, fy = int(math.floor(x)), int(math.floor(y))
        for cx in (fx - 1, fx):
            for cy in (fy - 1, fy):
                cells.add((cx, cy))
    return sorted(cells)


def _extract_triangles(points: Sequence[Point],
                       segments: set[tuple[Point, Point]]) -> list[tuple[Point, Point, Point]]:
    adj: dict[Point, set[Point]] = {p: set() for p in points}
    for a, b in segments:
        adj[a].add(b)
        adj[b].add(a)
    triangles = set()
    for a, b in segments:
        for c in adj[a] & adj[b]:
            if abs(cross(a, b, c)) == 1:
                triangles.add(tuple(sorted((a, b, c))))
    return sorted(triangles)


# --- block placement -----------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """One planted K_{2,4m}: two apex vertices and 4m base vertices on a row."""

    t: int
    m: int
    apex_top: Point
    apex_bottom: Point
    base: tuple[Point, ...]

    @property
    def segments(self) -> list[Segment]:
        return [(apex, b) for apex in (self.apex_top, self.apex_bottom) for b in self.base]

    @property
    def vertices(self) -> tuple[Point, ...]:
        return (self.apex_top, self.apex_bottom) + self.base

    @property
    def length(self) -> int:
        return self.base[-1][0] - self.base[0][0]


def _base_row(b1: int, m: int, y: int) -> tuple[Point, ...]:
    """4m points with x-gaps alternating +1, +2 starting at b1."""
    xs = [b1]
    for i in range(1, 4 * m):
        xs.append(xs[-1] + (1 if i % 2 == 1 else 2))
    return tuple((x, y) for x in xs)


def _validate_block(k: int, block: Block) -> None:
    for v in block.vertices:
        if v[0] % 2 == 0 and v[1] % 2 == 0:
            raise ConstraintViolated(f"block vertex {v} is an even lattice point")
        if not (v[0] >= 0 and v[1] >= 0 and v[0] + v[1] <= 2 * k):
            raise ConstraintViolated(f"block vertex {v} falls outside the polygon")
    for a, b in block.segments:
        if not is_primitive(a, b):
            raise ConstraintViolated(f"block segment {a}-{b} is not primitive")
    expected = 6 * block.m - 2
    if block.length != expected:
        raise ConstraintViolated(
            f"block length {block.length}, expected {expected} for m={block.m}")


def single_block(k: int, t: int, m: int, *,
                 apex_x: Optional[int] = None, b1: Optional[int] = None) -> Block:
    """Centered K_{2,4m} on row 4t+3 with both apexes on one column.

    Default placement puts the base at the smallest admissible offset; with
    the apex column at the base midpoint the mod-3 primitivity conditions
    hold automatically.
    """
    if not (0 <= t <= (k - 5) // 2):
        raise ConstraintViolated(f"row index t={t} out of range for k={k}")
    if not (1 <= m <= (2 * k - 1 - 4 * t) // 6):
        raise ConstraintViolated(f"block size m={m} out of range for k={k}, t={t}")
    y = 3 + 4 * t
    if b1 is None:
        b1 = 1 if m % 2 == 1 else 0     # makes the centered apex column odd
    if apex_x is None:
        apex_x = b1 + 3 * m - 1
    block = Block(
        t=t, m=m,
        apex_top=(apex_x, y + 3), apex_bottom=(apex_x, y - 3),
        base=_base_row(b1, m, y),
    )
    _validate_block(k, block)
    return block


@dataclass
class RagsdaleConfig:
    k: int
    blocks: list[Block]
    adjustments: list[str]
    tri: LatticeTriangulation
    curve: CurveGraph
    twists: frozenset[int]
    predicted_even: int                  # R(k) + 1 + sum(2 m_t - 1)
    table_even: Optional[int]            # R(k) + 1 + (k^2-5k+s(k))/6 when integral

    @property
    def expected_defect(self) -> int:
        return 2 * len(self.blocks)


def _table_apexes(k: int, t: int, x_t: int) -> tuple[Point, Point]:
    col = x_t % 3
    if t % 2 == 0:
        return (3, 4 * t + 6), (3, 4 * t)
    if col == 0:
        return (x_t - 3, 4 * t + 6), (x_t + 3, 4 * t)
    if col == 1:
        return (x_t - 4, 4 * t + 6), (x_t + 2, 4 * t)
    return (x_t - 5, 4 * t + 6), (x_t + 1, 4 * t)


def _place_apex(k: int, p: Point, base: tuple[Point, ...],
                placed: list[Segment], adjustments: list[str], label: str) -> Point:
    """Smallest horizontal shift of the table value giving an odd, mod-3
    primitive apex inside the polygon whose segments cross nothing already
    placed (leftward on ties); shifts are recorded."""
    x, y = p
    residues = {base[0][0] % 3, base[-1][0] % 3}

    def admissible(v: int) -> bool:
        if v % 2 != 1 or v < 0 or v + y > 2 * k:
            return False
        if any((v - r) % 3 == 0 for r in residues):
            return False
        return all(not segments_cross((v, y), b, s0, s1)
                   for b in base for (s0, s1) in placed)

    for offset in sorted(range(-12, 13), key=lambda o: (abs(o), o)):
        if admissible(x + offset):
            if offset:
                adjustments.append(
                    f"{label}: moved apex {p} to {(x + offset, y)} "
                    f"(table value even, non-primitive, or crossing)")
            return (x + offset, y)
    raise ConstraintViolated(f"no admissible apex near {p}")


def full_construction(k: int) -> RagsdaleConfig:
    """Stacked blocks for degree 2k following the coordinate tables, with the
    documented adjustment wherever a table row yields an even vertex or a
    crossing with an already placed block."""
    if k < 5:
        raise ConstraintViolated("full construction needs k >= 5")
    blocks: list[Block] = []
    adjustments: list[str] = []
    placed: list[Segment] = []
    for t in range(0, (k - 5) // 2 + 1):
        x_t = 2 * k - (4 * t + 3)
        col = x_t % 3
        b_last = x_t - (4, 2, 0)[col]
        m = (b_last - 1 + 2) // 6
        base = _base_row(1, m, 4 * t + 3)
        assert base[-1][0] == b_last
        top, bottom = _table_apexes(k, t, x_t)
        top = _place_apex(k, top, base, placed, adjustments, f"k={k} t={t} top")
        bottom = _place_apex(k, bottom, base, placed, adjustments, f"k={k} t={t} bottom")
        block = Block(t=t, m=m, apex_top=top, apex_bottom=bottom, base=base)
        _validate_block(k, block)
        blocks.append(block)
        placed.extend(block.segments)

    seen_vertices: set[Point] = set()
    for block in blocks:
        overlap = seen_vertices & set(block.vertices)
        if overlap:
            raise ConstraintViolated(f"blocks share vertices {sorted(overlap)}")
        seen_vertices.update(block.vertices)

    tri, curve, twists = realize_blocks(k, blocks)
    gain = sum(2 * b.m - 1 for b in blocks)
    r = ragsdale_bound(k)
    s = S_BY_RESIDUE[k % 6]
    table = None
    if (k * k - 5 * k + s) % 6 == 0:
        table = r + 1 + (k * k - 5 * k + s) // 6
    return RagsdaleConfig(
        k=k, blocks=blocks, adjustments=adjustments, tri=tri, curve=curve,
        twists=twists, predicted_even=r + 1 + gain, table_even=table,
    )


def _check_classification(curve: CurveGraph, twists: frozenset[int],
                          expected_rank: int) -> None:
    from .classify import intersection_matrix
    from .phases import is_dividing
    assert is_dividing(curve, twists), "generated twist set must be dividing"
    rank = intersection_matrix(curve, twists).rank
    assert rank == expected_rank, f"generated rank {rank}, expected {expected_rank}"


def realize_blocks(k: int,
                   blocks: Sequence[Block]) -> tuple[LatticeTriangulation, CurveGraph, frozenset[int]]:
    """Triangulate the size-2k triangle around the blocks and return the dual
    twist set (one twisted edge per planted segment); each block contributes
    rank 2, so the result is a dividing (M-2s) configuration, verified."""
    required: list[Segment] = []
    for block in blocks:
        required.extend(block.segments)
    tri = triangulate_with_constraints(simplex_polygon(2 * k), required)
    curve = dual_curve(tri)
    twists = set()
    for a, b in required:
        ei = curve.tri.edge_between(a, b)
        assert ei is not None, "planted segment missing from the triangulation"
        twists.add(ei)
    twists = frozenset(twists)
    _check_classification(curve, twists, 2 * len(blocks))
    return tri, curve, twists


def block_twists(curve: CurveGraph, block: Block) -> frozenset[int]:
    """Edge ids of one block's twisted edges in a realized configuration."""
    out = set()
    for a, b in block.segments:
        ei = curve.tri.edge_between(a, b)
        assert ei is not None
        out.add(ei)
    return frozenset(out)
