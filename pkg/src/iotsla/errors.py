"""Exception types shared across the package.

Every failure the library raises deliberately derives from :class:`SlaError`,
so callers (and the command line driver) can distinguish "your input is bad"
from genuine bugs.
"""

from __future__ import annotations

__all__ = [
    "SlaError",
    "VocabularyIntegrityError",
    "UnitError",
    "IncompatibleUnitsError",
    "UnitMismatchError",
    "TypeMismatchError",
    "DomainError",
    "DuplicateIdError",
    "UnknownActivityError",
    "ParseError",
    "SchemaViolationError",
    "TelemetryFormatError",
    "EmptyWindowError",
]


class SlaError(Exception):
    """Base class for all errors raised by this package on bad input."""


class VocabularyIntegrityError(SlaError):
    """A vocabulary catalog violates its own integrity rules.

    Raised for duplicate (term, concept) pairs and for aliases that collide
    with a canonical term or another alias.
    """


class UnitError(SlaError):
    """Base class for unit-related failures."""


class IncompatibleUnitsError(UnitError):
    """Conversion was requested between units of different families."""


class UnitMismatchError(UnitError):
    """A constraint and an observed value carry non-convertible units."""


class TypeMismatchError(SlaError):
    """A comparator or value does not fit the metric's declared value type."""


class DomainError(SlaError):
    """An operation received arguments outside its mathematical domain."""


class DuplicateIdError(SlaError):
    """Two entities in one document share an identifier."""

    def __init__(self, identifier: str):
        super().__init__(f"duplicate identifier: {identifier!r}")
        self.identifier = identifier


class UnknownActivityError(SlaError):
    """An activity id does not exist in the document."""

    def __init__(self, activity_id: str):
        super().__init__(f"unknown activity: {activity_id!r}")
        self.activity_id = activity_id


class ParseError(SlaError):
    """SLA text could not be parsed.

    Carries the 1-based ``line`` and ``col`` of the first offending
    character, plus an optional set of token descriptions that would have
    been acceptable at that point.
    """

    def __init__(
        self,
        message: str,
        line: int,
        col: int,
        expected: frozenset[str] | None = None,
    ):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected


class SchemaViolationError(SlaError):
    """A JSON document does not follow the interchange schema.

    ``pointer`` locates the offending value (JSON-pointer style, e.g.
    ``/services/2/deployed_on``).
    """

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer}: {message}")
        self.pointer = pointer
        self.message = message


class TelemetryFormatError(SlaError):
    """A telemetry line is structurally malformed (framing, not content)."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.message = message


class EmptyWindowError(SlaError):
    """An aggregate was requested over a window holding no samples."""
