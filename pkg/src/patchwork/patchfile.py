"""Line-oriented text format for configurations.

Sections: ``polygon:`` (vertex per line), ``triangles:`` (six integers per
line), optional ``heights:`` (``i j p/q``), and exactly one of ``signs:``
(``i j +|-``) or ``twists:`` (``i1 j1 i2 j2`` naming a bounded dual edge).
``#`` starts a comment.  Emission is canonical and round-trips byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .combinatorics import (
    CurveGraph,
    LatticeTriangulation,
    Point,
    dual_curve,
    validate_triangulation,
)
from .errors import PatchSemanticError, PatchSyntaxError
from .phases import Signs, signs_from_twists, twists_from_signs

SECTIONS = ("polygon", "triangles", "signs", "twists", "heights")


@dataclass
class PatchFile:
    polygon: list[Point]
    triangles: list[tuple[Point, Point, Point]]
    signs: Optional[dict[Point, int]] = None
    twists: Optional[list[tuple[Point, Point]]] = None
    heights: dict[Point, Fraction] = field(default_factory=dict)


def parse_patch(text: str) -> PatchFile:
    polygon: list[Point] = []
    triangles: list[tuple[Point, Point, Point]] = []
    signs: dict[Point, int] = {}
    twists: list[tuple[Point, Point]] = []
    heights: dict[Point, Fraction] = {}
    seen: set[str] = set()
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.endswith(":"):
            name = line[:-1].strip()
            if name not in SECTIONS:
                raise PatchSyntaxError(f"unknown section '{name}'", lineno)
            if name in seen:
                raise PatchSyntaxError(f"duplicate section '{name}'", lineno)
            seen.add(name)
            section = name
            continue
        if section is None:
            raise PatchSyntaxError("content before any section header", lineno)
        fields = line.split()
        try:
            if section == "polygon":
                x, y = map(int, fields)
                polygon.append((x, y))
            elif section == "triangles":
                v = list(map(int, fields))
                if len(v) != 6:
                    raise ValueError
                triangles.append(((v[0], v[1]), (v[2], v[3]), (v[4], v[5])))
            elif section == "signs":
                if len(fields) != 3 or fields[2] not in "+-":
                    raise ValueError
                signs[(int(fields[0]), int(fields[1]))] = 1 if fields[2] == "+" else -1
            elif section == "twists":
                v = list(map(int, fields))
                if len(v) != 4:
                    raise ValueError
                twists.append(((v[0], v[1]), (v[2], v[3])))
            elif section == "heights":
                if len(fields) != 3:
                    raise ValueError
                heights[(int(fields[0]), int(fields[1]))] = Fraction(fields[2])
        except (ValueError, ZeroDivisionError):
            raise PatchSyntaxError(f"malformed '{section}' entry: {line!r}", lineno)

    if "polygon" not in seen or "triangles" not in seen:
        raise PatchSemanticError("polygon and triangles sections are required")
    if ("signs" in seen) == ("twists" in seen):
        raise PatchSemanticError("exactly one of signs/twists is required")
    return PatchFile(
        polygon=polygon, triangles=triangles,
        signs=signs if "signs" in seen else None,
        twists=twists if "twists" in seen else None,
        heights=heights,
    )


def emit_patch(pf: PatchFile) -> str:
    """Canonical text: lex-least polygon rotation, sorted entries."""
    out = []
    poly = _canonical_polygon(pf.polygon)
    out.append("polygon:")
    out.extend(f"{x} {y}" for x, y in poly)
    out.append("triangles:")
    for t in sorted(tuple(sorted(tr)) for tr in pf.triangles):
        out.append(" ".join(f"{x} {y}" for x, y in t))
    if pf.signs is not None:
        out.append("signs:")
        for p in sorted(pf.signs):
            out.append(f"{p[0]} {p[1]} {'+' if pf.signs[p] > 0 else '-'}")
    if pf.twists is not None:
        out.append("twists:")
        for a, b in sorted(tuple(sorted(t)) for t in pf.twists):
            out.append(f"{a[0]} {a[1]} {b[0]} {b[1]}")
    if pf.heights:
        out.append("heights:")
        for p in sorted(pf.heights):
            h = pf.heights[p]
            out.append(f"{p[0]} {p[1]} {h.numerator}/{h.denominator}")
    return "\n".join(out) + "\n"


def _canonical_polygon(polygon: list[Point]) -> list[Point]:
    k = polygon.index(min(polygon))
    return polygon[k:] + polygon[:k]


@dataclass
class LoadedPatch:
    tri: LatticeTriangulation
    curve: CurveGraph
    signs: Signs
    twists: frozenset[int]
    heights: dict[Point, Fraction]


def load_patch(pf: PatchFile) -> LoadedPatch:
    """Validate and normalize: whichever of signs/twists is given, derive the
    other so downstream code always has both."""
    tri = validate_triangulation(pf.polygon, pf.triangles)
    curve = dual_curve(tri)
    if pf.signs is not None:
        missing = [p for p in tri.points if p not in pf.signs]
        if missing:
            raise PatchSemanticError(f"signs missing for lattice points {missing}")
        extra = [p for p in pf.signs if p not in tri.point_index]
        if extra:
            raise PatchSemanticError(f"signs given for non-lattice points {extra}")
        signs = dict(pf.signs)
        twists = twists_from_signs(curve, signs)
    else:
        edge_ids = []
        for a, b in pf.twists:
            ei = tri.edge_between(a, b)
            if ei is None:
                raise PatchSemanticError(f"twist names a non-edge {a}-{b}")
            if not curve.edges[ei].bounded:
                raise PatchSemanticError(
                    f"twist {a}-{b} names a boundary dual edge; twists are bounded only")
            edge_ids.append(ei)
        twists = frozenset(edge_ids)
        signs = signs_from_twists(curve, twists)
    for p in pf.heights:
        if p not in tri.point_index:
            raise PatchSemanticError(f"height given for non-lattice point {p}")
    return LoadedPatch(tri=tri, curve=curve, signs=signs, twists=twists,
                       heights=dict(pf.heights))


def patch_from_state(tri: LatticeTriangulation, twists: frozenset[int],
                     curve: CurveGraph,
                     heights: Optional[dict[Point, Fraction]] = None) -> PatchFile:
    return PatchFile(
        polygon=list(tri.polygon),
        triangles=[tuple(tri.points[i] for i in t) for t in tri.triangles],
        twists=[curve.dual_points(ei) for ei in sorted(twists)],
        heights=dict(heights or {}),
    )
