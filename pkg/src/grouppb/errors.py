"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ValidationIssue:
    """One structural defect found while validating an instance.

    code is one of "duplicate-id", "dangling-reference", "negative-quantity".
    """

    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class GroupPBError(Exception):
    """Base class for all package-specific errors."""


class InvalidInstance(GroupPBError):
    """Raised when instance validation finds structural defects."""

    def __init__(self, issues: list[ValidationIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in issues))


class ParseError(GroupPBError):
    """Instance text is not well-formed JSON."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        super().__init__(message)


class SchemaError(GroupPBError):
    """Instance JSON is well-formed but does not match the expected shape."""


class UnknownProject(GroupPBError):
    """A bundle references a project id absent from the instance."""


class NotHierarchical(GroupPBError):
    """An operation requiring a nested-or-disjoint group family got one with conflicts."""


class InvalidDeletion(GroupPBError):
    """A deletion set does not make the remaining instance hierarchical."""


class InvalidGraph(GroupPBError):
    """A graph input has self-loops, duplicate edges, or bad vertex ids."""


class OddTotal(GroupPBError):
    """Number-partition input whose total is odd admits no perfect split."""


class TooLarge(GroupPBError):
    """Exhaustive enumeration refused because the input exceeds its size cap."""


class TableTooLarge(GroupPBError):
    """A dynamic-programming table would exceed the configured cell cap."""


class SearchBudgetExceeded(GroupPBError):
    """Estimated enumeration work exceeds the configured node cap."""


class UtilityFloorsUnsupported(GroupPBError):
    """Raised by optimized solvers when the instance carries per-group utility floors."""
