"""GF(2) twist-intersection matrix and structural component-count certificates.

The g x g matrix counts twisted edges on pairwise cycle intersections mod 2;
its kernel dimension plus one is the number of real components.  Rank-1 and
rank-2 situations admit graph-shaped certificates on the dual graph of
non-exposed twisted edges: a complete K_n (n <= 4) with odd twist counts on
its cycles, or a complete bi-/tripartite graph for dividing sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import gf2
from .combinatorics import CurveGraph, Point
from .errors import NotCycleDisjoint, NotDividing
from .phases import is_dividing, is_maximal


@dataclass
class TwistIntersectionMatrix:
    size: int
    rows: list[int]          # bitset rows, canonical cycle order
    rank: int

    @property
    def kernel_dim(self) -> int:
        return self.size - self.rank

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    @property
    def zero_diagonal(self) -> bool:
        return all(self.entry(i, i) == 0 for i in range(self.size))


def intersection_matrix(curve: CurveGraph, twists: Iterable[int]) -> TwistIntersectionMatrix:
    g = curve.genus
    rows = [0] * g
    for ei in set(twists):
        cycles = curve.cycles_of_edge.get(ei, ())
        for ci in cycles:
            rows[ci] ^= 1 << ci            # diagonal: parity of |cycle ∩ T|
        if len(cycles) == 2:
            i, j = cycles
            rows[i] ^= 1 << j
            rows[j] ^= 1 << i
    return TwistIntersectionMatrix(size=g, rows=rows, rank=gf2.rank(rows))


def nonexposed_dual_graph(curve: CurveGraph,
                          twists: Iterable[int]) -> set[tuple[int, int]]:
    """Edges (i < j) between cycles sharing a (necessarily non-exposed)
    twisted edge."""
    pairs = set()
    for ei in set(twists):
        cycles = curve.cycles_of_edge.get(ei, ())
        if len(cycles) == 2:
            pairs.add((min(cycles), max(cycles)))
    return pairs


# --- certificates -------------------------------------------------------------------

@dataclass(frozen=True)
class M1Certificate:
    cycles: tuple[int, ...]          # vertices of the complete graph

    @property
    def shape(self) -> str:
        return f"K_{len(self.cycles)}"


@dataclass(frozen=True)
class M2Certificate:
    parts: tuple[tuple[int, ...], ...]   # 2 or 3 parts of cycle indices

    @property
    def shape(self) -> str:
        sizes = ",".join(str(len(p)) for p in self.parts)
        return "K_{%s}" % sizes


def classify_m1(curve: CurveGraph, twists: Iterable[int]) -> Optional[M1Certificate]:
    """Certificate for exactly one fewer component than maximal.

    Present iff the cycles with an odd twist count form a complete subgraph
    K_n (1 <= n <= 4) of the non-exposed dual graph and carry all of its
    edges.  Equivalent to rank 1 of the intersection matrix; asserted.
    """
    twists = frozenset(twists)
    mat = intersection_matrix(curve, twists)
    odd = [i for i in range(curve.genus) if mat.entry(i, i)]
    graph = nonexposed_dual_graph(curve, twists)
    ok = bool(odd)
    if ok:
        want = {(i, j) for a, i in enumerate(odd) for j in odd[a + 1:]}
        ok = graph == want
    cert = M1Certificate(cycles=tuple(odd)) if ok else None
    assert (cert is not None) == (mat.rank == 1), \
        "K_n certificate must coincide with rank 1"
    if cert is not None:
        assert len(odd) <= 4, "complete graph on >4 cycles is impossible on a planar curve"
    return cert


def classify_m2(curve: CurveGraph, twists: Iterable[int]) -> Optional[M2Certificate]:
    """Certificate for a dividing set two off maximal.

    Present iff the non-isolated part of the non-exposed dual graph is a
    complete multipartite graph on 2 or 3 parts.  Equivalent to rank 2 with
    zero diagonal; asserted, as is K_{3,3}-freeness.
    """
    twists = frozenset(twists)
    if not is_dividing(curve, twists):
        raise NotDividing("M-2 classification needs a dividing twist set")
    mat = intersection_matrix(curve, twists)
    graph = nonexposed_dual_graph(curve, twists)
    cert = None
    vertices = sorted({v for pair in graph for v in pair})
    if vertices:
        parts = _complement_components(vertices, graph)
        if _is_complete_multipartite(vertices, graph, parts) and len(parts) in (2, 3):
            parts = tuple(sorted((tuple(sorted(p)) for p in parts),
                                 key=lambda p: (len(p), p)))
            cert = M2Certificate(parts=parts)
    assert (cert is not None) == (mat.rank == 2 and mat.zero_diagonal), \
        "complete multipartite certificate must coincide with rank 2"
    if cert is not None:
        _assert_k33_free(cert.parts)
    return cert


def _complement_components(vertices: Sequence[int],
                           graph: set[tuple[int, int]]) -> list[set[int]]:
    vset = list(vertices)
    adj = {v: set() for v in vset}
    for i, j in graph:
        adj[i].add(j)
        adj[j].add(i)
    comps = []
    unseen = set(vset)
    while unseen:
        start = min(unseen)
        comp = {start}
        stack = [start]
        unseen.discard(start)
        while stack:
            v = stack.pop()
            for w in list(unseen):
                if w not in adj[v]:
                    comp.add(w)
                    unseen.discard(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _is_complete_multipartite(vertices, graph, parts) -> bool:
    part_of = {}
    for k, part in enumerate(parts):
        for v in part:
            part_of[v] = k
    for i, j in graph:
        if part_of[i] == part_of[j]:
            return False
    n_cross = sum(len(a) * len(b)
                  for x, a in enumerate(parts) for b in parts[x + 1:])
    return len(graph) == n_cross


def _assert_k33_free(parts: tuple[tuple[int, ...], ...]) -> None:
    sizes = sorted(len(p) for p in parts)
    if len(sizes) == 2:
        assert not (sizes[0] >= 3 and sizes[1] >= 3), "K_{3,3} on a planar curve"
    else:
        assert not (sizes[2] >= 3 and sizes[0] + sizes[1] >= 3), "K_{3,3} on a planar curve"


# --- classification report --------------------------------------------------------------

@dataclass
class ClassificationReport:
    genus: int
    rank: int
    components: int
    dividing: bool
    maximal: bool
    m1: Optional[M1Certificate]
    m2: Optional[M2Certificate]

    @property
    def m_defect(self) -> int:
        return self.rank

    def certificate_label(self, cycle_points: list[Point]) -> str:
        if self.maximal:
            return "maximal"
        if self.m1 is not None:
            return self.m1.shape
        if self.m2 is not None:
            kind = "bipartite" if len(self.m2.parts) == 2 else "tripartite"
            return f"{kind} {self.m2.shape}"
        return "none"


def classify(curve: CurveGraph, twists: Iterable[int]) -> ClassificationReport:
    twists = frozenset(twists)
    mat = intersection_matrix(curve, twists)
    dividing = is_dividing(curve, twists)
    m2 = classify_m2(curve, twists) if dividing else None
    return ClassificationReport(
        genus=curve.genus,
        rank=mat.rank,
        components=curve.genus - mat.rank + 1,
        dividing=dividing,
        maximal=is_maximal(curve, twists),
        m1=classify_m1(curve, twists),
        m2=m2,
    )


# --- composition of cycle-disjoint blocks --------------------------------------------------

def compose_cycle_disjoint(curve: CurveGraph,
                           parts: Sequence[Iterable[int]]) -> tuple[frozenset[int], int]:
    """Union of pairwise cycle-disjoint twist sets plus the expected rank
    (sum of the parts' ranks, by block-diagonality); the expectation is
    verified against the full matrix."""
    part_sets = [frozenset(p) for p in parts]
    touched: list[set[int]] = []
    for ps in part_sets:
        cyc = set()
        for ei in ps:
            cyc.update(curve.cycles_of_edge.get(ei, ()))
        touched.append(cyc)
    for i in range(len(part_sets)):
        for j in range(i + 1, len(part_sets)):
            if touched[i] & touched[j]:
                shared = min(touched[i] & touched[j])
                raise NotCycleDisjoint(
                    f"parts {i} and {j} both meet the cycle around "
                    f"{curve.cycle_points[shared]}")
            assert not (part_sets[i] & part_sets[j]), "parts must be edge-disjoint"

    union = frozenset().union(*part_sets) if part_sets else frozenset()
    expected = sum(intersection_matrix(curve, ps).rank for ps in part_sets)
    actual = intersection_matrix(curve, union).rank
    assert actual == expected, "block-diagonal rank must equal the sum of block ranks"
    return union, expected
