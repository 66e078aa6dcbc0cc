"""Exception hierarchy.

Every error carries a stable ``code`` (the class name) so the CLI and the
HTTP service can map failures without string matching.
"""

from __future__ import annotations


class PatchworkError(Exception):
    """Base class for all domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- triangulation validation ------------------------------------------------

class NonConvexPolygon(PatchworkError):
    pass


class NotUnimodular(PatchworkError):
    pass


class MissingLatticePoint(PatchworkError):
    pass


class BadIncidence(PatchworkError):
    pass


class NotInducing(PatchworkError):
    """Heights induce a different regular subdivision than the given one."""


# --- twists and signs ---------------------------------------------------------

class Inadmissible(PatchworkError):
    """Twist set violates the per-cycle direction condition."""

    def __init__(self, message: str, cycle_point=None):
        super().__init__(message)
        self.cycle_point = cycle_point


class NotDividing(PatchworkError):
    pass


class NotCycleDisjoint(PatchworkError):
    pass


# --- realization ---------------------------------------------------------------

class SignConflict(PatchworkError):
    pass


class NotAllOvals(PatchworkError):
    pass


class NotATree(PatchworkError):
    pass


class MultipleEssentialRegions(PatchworkError):
    pass


# --- zones ---------------------------------------------------------------------

class NotTwoColorable(PatchworkError):
    pass


class NoUniqueSpecialZone(PatchworkError):
    pass


class PreconditionFailed(PatchworkError):
    pass


class HypothesisViolated(PatchworkError):
    def __init__(self, hypothesis: str, message: str = ""):
        super().__init__(message or hypothesis)
        self.hypothesis = hypothesis


# --- generators ------------------------------------------------------------------

class ConstraintViolated(PatchworkError):
    pass


class CrossingRequiredEdges(PatchworkError):
    pass


class NonPrimitiveRequiredEdge(PatchworkError):
    pass


# --- file format / rendering ------------------------------------------------------

class PatchSyntaxError(PatchworkError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class PatchSemanticError(PatchworkError):
    pass


class ViewUnavailable(PatchworkError):
    pass
