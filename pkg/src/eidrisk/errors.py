"""Error vocabulary shared by the model, store, API and CLI layers.

Every failure carries a stable machine-readable code so transport layers
(HTTP, CLI exit paths) can map errors without string matching.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One rule violation found while validating data."""

    code: str
    message: str
    field_path: str | None = None

    def __str__(self) -> str:
        if self.field_path:
            return f"{self.field_path}: {self.message}"
        return self.message


class EidRiskError(Exception):
    """Base class for all domain failures raised by this package."""

    code = "error"

    def __init__(self, message: str, *, code: str | None = None, field_path: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.field_path = field_path

    def violations(self) -> list[Violation]:
        return [Violation(self.code, str(self), self.field_path)]


class DomainError(EidRiskError):
    """A well-formed request that breaks a domain rule (bad value, mismatch)."""

    code = "domain_error"


class ValidationError(EidRiskError):
    """Structural validation failure; may aggregate several violations."""

    code = "validation_error"

    def __init__(self, violations: list[Violation] | Violation | str, *, code: str | None = None,
                 field_path: str | None = None):
        if isinstance(violations, str):
            violations = [Violation(code or self.code, violations, field_path)]
        elif isinstance(violations, Violation):
            violations = [violations]
        self.violation_list = list(violations)
        first = self.violation_list[0]
        super().__init__(
            "; ".join(str(v) for v in self.violation_list),
            code=code or first.code,
            field_path=field_path or first.field_path,
        )

    def violations(self) -> list[Violation]:
        return list(self.violation_list)


class UnknownRiskError(EidRiskError):
    """Referenced risk id is not in the register."""

    code = "unknown_risk"


class VersionConflictError(EidRiskError):
    """Optimistic-concurrency conflict: the stored record moved on."""

    code = "version_conflict"


class ParseError(EidRiskError):
    """Register file is not syntactically a register document."""

    code = "parse_error"


class SchemaError(EidRiskError):
    """Register file declares a schema version this build cannot read."""

    code = "schema_error"
