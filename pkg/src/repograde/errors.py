"""Exception hierarchy shared across the grading pipeline."""

from __future__ import annotations


class GraderError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GraderError):
    """Input stream or file does not match its documented format.

    Carries enough position information (line number or byte offset)
    to locate the offending record.
    """

    def __init__(self, message: str, *, source: str | None = None,
                 line: int | None = None, offset: int | None = None) -> None:
        self.source = source
        self.line = line
        self.offset = offset
        where = []
        if source is not None:
            where.append(source)
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte offset {offset}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ConfigError(GraderError):
    """A configuration or roster value violates its schema."""


class ValidationError(GraderError):
    """A parsed value violates a documented invariant."""


class NotFoundError(GraderError):
    """A referenced entity (team, flag, student) does not exist."""


class ConflictError(NotFoundError):
    """The requested state transition is no longer applicable.

    Subclasses NotFoundError: an already-resolved flag is both "no
    open flag with that id" (batch view) and a conflict (HTTP view).
    """


class PolicyError(GraderError):
    """An operation is blocked by a workflow guard (e.g. pending reviews)."""
