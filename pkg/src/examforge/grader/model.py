"""Shared result types for task grading."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..errors import ValidationError
from ..rational import format_rational


class Status(str, Enum):
    AUTO_FULL = "auto_full"
    AUTO_PARTIAL = "auto_partial"
    NEEDS_REVIEW = "needs_review"
    UNANSWERED = "unanswered"


@dataclass(frozen=True)
class TaskGrade:
    points: Fraction
    status: Status
    evidence: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "points": format_rational(self.points),
            "status": self.status.value,
            "evidence": list(self.evidence),
        }


def unanswered(*evidence: str) -> TaskGrade:
    return TaskGrade(Fraction(0), Status.UNANSWERED, tuple(evidence))


@dataclass(frozen=True)
class Violation:
    function: str | None
    kind: str  # missing_feature forbidden_feature forbidden_call disallowed_call missing_function
    constraint: str
    evidence: str = ""

    @property
    def message(self) -> str:
        who = self.function if self.function is not None else "<module>"
        return f"{who}: {self.evidence}"

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "kind": self.kind,
            "constraint": self.constraint,
            "message": self.message,
        }


@dataclass(frozen=True)
class TestResults:
    compiled: bool
    outcomes: dict = field(default_factory=dict)

    # not a pytest class, despite the name
    __test__ = False

    OUTCOMES = ("pass", "fail", "error")

    def passed(self, name: str) -> bool:
        return self.outcomes.get(name) == "pass"

    @classmethod
    def from_dict(cls, data) -> "TestResults":
        if not isinstance(data, dict) or "compiled" not in data:
            raise ValidationError("test results need a 'compiled' field")
        compiled = data["compiled"]
        if not isinstance(compiled, bool):
            raise ValidationError("'compiled' must be true or false")
        outcomes = data.get("outcomes") or {}
        if not isinstance(outcomes, dict):
            raise ValidationError("'outcomes' must map test names to results")
        for name, value in outcomes.items():
            if value not in cls.OUTCOMES:
                raise ValidationError(f"test {name!r}: outcome must be one of pass/fail/error, got {value!r}")
        if not compiled and outcomes:
            raise ValidationError("code that did not compile cannot have test outcomes")
        return cls(compiled, dict(outcomes))
