"""Exception types shared across the toolkit.

Every error raised on purpose derives from ToolkitError so the CLI can map
failures to a machine-readable name and a nonzero exit code.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all deliberate failures."""


class DegenerateInput(ToolkitError):
    """Geometric input has no defined answer (identical points, short polyline)."""


class ParseError(ToolkitError):
    """Malformed OSM XML. Carries line/column when the parser reports them."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class MissingNode(ToolkitError):
    """A way references a node id that is not present in the document."""


class EmptyGraph(ToolkitError):
    """No usable road data survived filtering."""


class NoPath(ToolkitError):
    """No path between the requested vertices under the active filters."""


class OutOfRange(ToolkitError):
    """A timestamp or interval falls outside the trace's time span."""


class LengthMismatch(ToolkitError):
    """Paired sequences differ in length."""


class NonPositiveActual(ToolkitError):
    """A reference distance used as a ratio denominator is <= 0."""


class EmptyDistribution(ToolkitError):
    """Threshold derivation needs at least one sample per error family."""


class EmptyInput(ToolkitError):
    """An aggregate was requested over an empty collection."""


class DegenerateRadius(ToolkitError):
    """Source and intended destination coincide; the sampling circle is empty."""


class CacheMismatch(ToolkitError):
    """Graph cache version or content hash does not match the input file."""


class InvalidConfig(ToolkitError):
    """Run configuration is missing, malformed, or inconsistent."""
