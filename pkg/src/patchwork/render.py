"""Deterministic SVG views: subdivision, zones, real part.

No timestamps, no randomness; coordinates are formatted to fixed precision so
identical inputs give byte-identical documents.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .combinatorics import (
    CurveGraph,
    CurvePositions,
    LatticeTriangulation,
    barycentric_positions,
)
from .errors import ViewUnavailable
from .phases import Signs
from .realization import EPS, NestingReport, RealPartGraph
from .zones import ZoneDecomposition

SCALE = 48
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def _fmt(x) -> str:
    return f"{float(x):.2f}"


class _Doc:
    def __init__(self, width: float, height: float):
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
            f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        ]

    def add(self, element: str) -> None:
        self.parts.append(element)

    def finish(self) -> str:
        self.parts.append("</svg>")
        return "\n".join(self.parts) + "\n"


def _bounds(tri: LatticeTriangulation) -> tuple[int, int, int, int]:
    xs = [p[0] for p in tri.points]
    ys = [p[1] for p in tri.points]
    return min(xs), min(ys), max(xs), max(ys)


def render_subdivision(tri: LatticeTriangulation, signs: Signs,
                       curve: CurveGraph, twists: Iterable[int]) -> str:
    """Triangulation with the sign at each lattice point and a mark on every
    dual twisted segment."""
    twists = set(twists)
    x0, y0, x1, y1 = _bounds(tri)
    pad = 1.0
    w = (x1 - x0 + 2 * pad) * SCALE
    h = (y1 - y0 + 2 * pad) * SCALE

    def T(p):
        return ((p[0] - x0 + pad) * SCALE, (y1 - p[1] + pad) * SCALE)

    doc = _Doc(w, h)
    for te in tri.edges:
        a, b = T(tri.points[te.a]), T(tri.points[te.b])
        doc.add(f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
                f'y2="{_fmt(b[1])}" stroke="#999999" stroke-width="1"/>')
    for ei in sorted(twists):
        pa, pb = curve.dual_points(ei)
        a, b = T(pa), T(pb)
        doc.add(f'<line class="twist" x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
                f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" stroke="#d62728" stroke-width="3"/>')
        mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
        doc.add(f'<circle cx="{_fmt(mx)}" cy="{_fmt(my)}" r="4" fill="#d62728"/>')
    for p in tri.points:
        x, y = T(p)
        s = signs[p]
        doc.add(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="9" '
                f'fill="{"#ffffff" if s > 0 else "#222222"}" stroke="#222222"/>')
        doc.add(f'<text x="{_fmt(x)}" y="{_fmt(y + 4)}" text-anchor="middle" '
                f'font-size="12" fill="{"#222222" if s > 0 else "#ffffff"}">'
                f'{"+" if s > 0 else "-"}</text>')
    return doc.finish()


def render_zones(tri: LatticeTriangulation, zd: ZoneDecomposition) -> str:
    """Zones colored by class, the boundary zone singled out."""
    x0, y0, x1, y1 = _bounds(tri)
    pad = 1.0
    w = (x1 - x0 + 2 * pad) * SCALE
    h = (y1 - y0 + 2 * pad) * SCALE

    def T(p):
        return ((p[0] - x0 + pad) * SCALE, (y1 - p[1] + pad) * SCALE)

    doc = _Doc(w, h)
    for ti, t in enumerate(tri.triangles):
        zone = zd.zone_of_triangle[ti]
        if zone == zd.special_zone:
            fill = "#c7e9c0"
        elif zd.color[zone] == 1:
            fill = "#deebf7"
        else:
            fill = "#fdd0a2"
        pts = " ".join(f"{_fmt(T(tri.points[v])[0])},{_fmt(T(tri.points[v])[1])}" for v in t)
        doc.add(f'<polygon class="zone-{zone}" points="{pts}" fill="{fill}" '
                f'stroke="#ffffff" stroke-width="0.5"/>')
    for ei in sorted(zd.twists):
        pa, pb = zd.curve.dual_points(ei)
        a, b = T(pa), T(pb)
        doc.add(f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
                f'y2="{_fmt(b[1])}" stroke="#d62728" stroke-width="3"/>')
    return doc.finish()


def render_realpart(curve: CurveGraph, rp: RealPartGraph,
                    positions: Optional[CurvePositions] = None,
                    nest: Optional[NestingReport] = None) -> str:
    """The four reflected copies of the polygon with one colored closed curve
    per component; even ovals solid, odd ovals dashed when nesting is known."""
    tri = curve.tri
    if positions is None:
        positions = barycentric_positions(tri)
    x0, y0, x1, y1 = _bounds(tri)
    extent = max(x1, y1, -x0, -y0) + 1.5
    w = h = 2 * extent * SCALE

    def T(x, y):
        return ((float(x) + extent) * SCALE, (extent - float(y)) * SCALE)

    doc = _Doc(w, h)
    ax = T(0, 0)
    doc.add(f'<line x1="0" y1="{_fmt(ax[1])}" x2="{_fmt(w)}" y2="{_fmt(ax[1])}" '
            f'stroke="#cccccc" stroke-width="1"/>')
    doc.add(f'<line x1="{_fmt(ax[0])}" y1="0" x2="{_fmt(ax[0])}" y2="{_fmt(h)}" '
            f'stroke="#cccccc" stroke-width="1"/>')
    for eps in EPS:
        sx = -1 if eps[0] else 1
        sy = -1 if eps[1] else 1
        pts = " ".join(f"{_fmt(T(sx * p[0], sy * p[1])[0])},{_fmt(T(sx * p[0], sy * p[1])[1])}"
                       for p in tri.polygon)
        doc.add(f'<polygon points="{pts}" fill="none" stroke="#dddddd" stroke-width="1"/>')

    for ci, comp in enumerate(rp.components):
        color = PALETTE[ci % len(PALETTE)]
        dash = ""
        if nest is not None and nest.oval_depth.get(ci, 0) % 2 == 1:
            dash = ' stroke-dasharray="6,4"'
        for (ei, eps) in sorted(comp):
            seg = _edge_segment(curve, positions, ei)
            if seg is None:
                continue
            (xa, ya), (xb, yb) = seg
            sx = -1 if eps[0] else 1
            sy = -1 if eps[1] else 1
            a = T(sx * xa, sy * ya)
            b = T(sx * xb, sy * yb)
            doc.add(f'<line class="component-{ci}" x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
                    f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" stroke="{color}" '
                    f'stroke-width="2"{dash}/>')
    return doc.finish()


def _edge_segment(curve: CurveGraph, positions: CurvePositions, ei: int):
    e = curve.edges[ei]
    n_tris = len(curve.tri.triangles)
    a = positions.vertex_pos[e.ends[0]]
    if e.bounded:
        b = positions.vertex_pos[e.ends[1]]
        return (a, b)
    d = positions.ray_direction[ei]
    length = Fraction(3, 2)
    b = (a[0] + d[0] * length, a[1] + d[1] * length)
    return (a, b)


def render_view(view: str, *, tri: LatticeTriangulation, curve: CurveGraph,
                signs: Signs, twists: frozenset[int],
                rp: Optional[RealPartGraph] = None,
                zd: Optional[ZoneDecomposition] = None,
                positions: Optional[CurvePositions] = None,
                nest: Optional[NestingReport] = None) -> str:
    if view == "subdivision":
        return render_subdivision(tri, signs, curve, twists)
    if view == "zones":
        if zd is None:
            raise ViewUnavailable("zones view needs a zone decomposition")
        return render_zones(tri, zd)
    if view == "realpart":
        if rp is None:
            raise ViewUnavailable("realpart view needs the computed real part")
        return render_realpart(curve, rp, positions=positions, nest=nest)
    raise ViewUnavailable(f"unknown view '{view}'")
