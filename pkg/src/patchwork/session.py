"""Session state shared by the CLI and the HTTP service.

A session owns a triangulation plus canonical signs/twists (twists are the
stored truth; signs are derived deterministically) and caches the full
analysis: classification, components, regions, oval counts when every
component is an oval.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Optional

from .classify import ClassificationReport, classify
from .combinatorics import (
    CurveGraph,
    LatticeTriangulation,
    Point,
    dual_curve,
    strict_even_degree,
)
from .errors import Inadmissible, PatchworkError
from .phases import (
    Signs,
    is_admissible,
    signs_from_twists,
    twists_from_signs,
    violating_cycle,
)
from .realization import (
    NestingReport,
    PhaseStructure,
    RealPartGraph,
    RegionComplex,
    complement_regions,
    nesting,
    oval_test,
    phase_structure,
)


@dataclass
class Analysis:
    classification: ClassificationReport
    phases: PhaseStructure
    real: RealPartGraph
    regions: RegionComplex
    all_ovals: bool
    nest: Optional[NestingReport]


def analyze(curve: CurveGraph, twists: frozenset[int], signs: Signs) -> Analysis:
    cls = classify(curve, twists)
    ps = phase_structure(curve, signs)
    rc = complement_regions(ps)
    rp = rc.real
    assert rp.count == cls.components, \
        "component count must match the kernel dimension plus one"
    all_ovals = all(oval_test(rc, comp) for comp in rp.components)
    nest = None
    if all_ovals and strict_even_degree(curve.tri):
        nest = nesting(rc)
    return Analysis(classification=cls, phases=ps, real=rp, regions=rc,
                    all_ovals=all_ovals, nest=nest)


@dataclass
class Session:
    id: str
    tri: LatticeTriangulation
    curve: CurveGraph
    twists: frozenset[int]
    signs: Signs
    revision: int = 0
    analysis: Optional[Analysis] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @classmethod
    def create(cls, sid: str, tri: LatticeTriangulation,
               twists: frozenset[int]) -> "Session":
        curve = dual_curve(tri)
        signs = signs_from_twists(curve, twists)
        s = cls(id=sid, tri=tri, curve=curve, twists=twists, signs=signs)
        s.analysis = analyze(curve, twists, signs)
        return s

    def toggle_twist(self, edge: int) -> None:
        """Flip one bounded edge in/out of the twist set; inadmissible results
        are rejected with the violated cycle attached."""
        new = self.twists ^ {edge}
        if not is_admissible(self.curve, new):
            ci = violating_cycle(self.curve, new)
            point = self.curve.cycle_points[ci] if ci is not None else None
            raise Inadmissible(
                f"toggling this edge violates the cycle around {point}",
                cycle_point=point)
        self._commit(new)

    def flip_sign(self, point: Point) -> None:
        signs = dict(self.signs)
        if point not in signs:
            raise PatchworkError(f"{point} is not a lattice point of the polygon")
        signs[point] = -signs[point]
        new = twists_from_signs(self.curve, signs)
        # store twists canonically; signs are re-derived so both entry points
        # converge to the same session state
        self._commit(new)

    def _commit(self, twists: frozenset[int]) -> None:
        self.twists = twists
        self.signs = signs_from_twists(self.curve, twists)
        self.analysis = analyze(self.curve, twists, self.signs)
        self.revision += 1


def report_dict(s: Session) -> dict:
    """Full JSON-ready report; every number the explorer shows originates here."""
    tri, curve, a = s.tri, s.curve, s.analysis
    cls = a.classification
    cert = cls.certificate_label(curve.cycle_points)
    edges = []
    for e in curve.edges:
        pa, pb = curve.dual_points(e.index)
        edges.append({
            "dual": [list(pa), list(pb)],
            "bounded": e.bounded,
            "exposed": e.exposed,
            "direction": list(e.direction),
            "twisted": e.index in s.twists,
        })
    out = {
        "id": s.id,
        "revision": s.revision,
        "polygon": [list(p) for p in tri.polygon],
        "points": [list(p) for p in tri.points],
        "genus": curve.genus,
        "strict_even_degree": strict_even_degree(tri),
        "smooth_fan": tri.smooth_fan,
        "edges": edges,
        "signs": [[p[0], p[1], s.signs[p]] for p in tri.points],
        "twists": sorted([list(curve.dual_points(ei)[0]), list(curve.dual_points(ei)[1])]
                         for ei in s.twists),
        "report": {
            "g": cls.genus,
            "rank": cls.rank,
            "components": cls.components,
            "dividing": cls.dividing,
            "maximal": cls.maximal,
            "m_defect": cls.rank,
            "certificate": cert,
            "all_ovals": a.all_ovals,
            "p": a.nest.p if a.nest else None,
            "n": a.nest.n if a.nest else None,
        },
    }
    assert out["report"]["components"] == cls.genus - cls.rank + 1
    return out
