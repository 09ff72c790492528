# Exception hierarchy shared by every module.

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from pathlib import Path


class AlgebroidError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(AlgebroidError, ValueError):
    """Operands do not fit together: wrong variable count, index, degree or bundle."""


class PreconditionError(AlgebroidError):
    """A mathematical precondition does not hold, typically torsion-freeness."""

    def __init__(self, message: str, *, witness: Any = None) -> None:
        super().__init__(message)
        self.witness = witness
        """The object demonstrating the failure, e.g. the non-zero torsion form."""


class UsageError(AlgebroidError):
    """Unknown names, unknown suites or malformed arguments."""


class SpecError(AlgebroidError):
    """A spec file could not be parsed or resolved."""

    def __init__(
        self,
        message: str,
        *,
        path: str | Path | None = None,
        line: int | None = None,
        column: int | None = None,
        record: str | None = None,
    ) -> None:
        self.message = message
        self.path = path
        self.line = line
        self.column = column
        self.record = record
        super().__init__(str(self))

    def __str__(self) -> str:
        location = [str(part) for part in (self.path, self.line, self.column) if part is not None]
        prefix = ":".join(location)
        message = f"{self.record}: {self.message}" if self.record else self.message
        return f"{prefix}: {message}" if prefix else message
