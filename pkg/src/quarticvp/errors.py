"""Error types shared across the package.

Each class maps to one CLI exit code (see cli.EXIT_CODES), so callers can
distinguish bad syntax from bad geometry from genuine bugs.
"""


class QuarticVPError(Exception):
    """Base class for all package errors."""


class PolyParseError(QuarticVPError):
    """Malformed polynomial text.  Carries the byte offset of the failure."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class GeometryError(QuarticVPError):
    """A geometric precondition failed (point not on the surface,
    nonsingular point, multiplicity worse than a double point, ...)."""


class ReducibleInput(GeometryError):
    """The surface revealed itself as reducible or non-normal during a
    blowup: the exceptional divisor absorbed a component of the strict
    transform."""


class NonNormalInput(GeometryError):
    """The strict transform is singular along a whole curve, which cannot
    happen for a normal surface."""


class FieldExtensionRequired(QuarticVPError):
    """Normalizing the tangent cone needs a square root that does not
    exist in Q(i).  The input must be pre-conditioned by the caller."""


class ClassificationError(QuarticVPError):
    """The refinement walked into a configuration no Du Val singularity
    produces; the input is outside the canonical range."""


class ConsistencyViolation(QuarticVPError):
    """The direct discrepancy formula and the stepwise toric description
    disagreed.  This is an internal bug, never a property of the input."""


class GenerationError(QuarticVPError):
    """The witness generator exhausted its retry budget for a stratum."""
