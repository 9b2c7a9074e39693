"""Rule tables that turn test outcomes into points.

A rule is ``{"when": <predicate>, "points": "4"}``.  Predicates:

``"all_pass"``
    every reported test passed;
``"otherwise"``
    always holds (the required final catch-all);
``{"passes": [names]}``
    every named test or group passed;
``{"at_least": k, "of": [names]}``
    at least ``k`` of the named tests or groups passed (``of`` defaults to
    every reported test).

A group is a named list of tests; it passes when all of its tests pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ConfigError, ValidationError
from ..rational import format_rational, to_rational
from .model import Status, TaskGrade, TestResults

NO_COMPILE = "no-compile: manual grading required"


@dataclass(frozen=True)
class Predicate:
    kind: str  # all_pass | otherwise | passes | at_least
    names: tuple = ()
    k: int = 0

    @classmethod
    def parse(cls, data) -> "Predicate":
        if data in ("all_pass", "otherwise"):
            return cls(data)
        if isinstance(data, dict):
            if set(data) == {"passes"}:
                return cls("passes", _names(data["passes"]))
            if "at_least" in data and set(data) <= {"at_least", "of"}:
                k = data["at_least"]
                if not isinstance(k, int) or isinstance(k, bool) or k < 0:
                    raise ConfigError("at_least needs a non-negative integer")
                names = _names(data["of"]) if "of" in data else ()
                if names and k > len(names):
                    raise ConfigError(f"at_least {k} exceeds the {len(names)} listed tests")
                return cls("at_least", names, k)
        raise ConfigError(f"unknown rule predicate: {data!r}")

    def to_json(self):
        if self.kind in ("all_pass", "otherwise"):
            return self.kind
        if self.kind == "passes":
            return {"passes": list(self.names)}
        out = {"at_least": self.k}
        if self.names:
            out["of"] = list(self.names)
        return out

    def describe(self) -> str:
        if self.kind == "all_pass":
            return "all tests pass"
        if self.kind == "otherwise":
            return "otherwise"
        if self.kind == "passes":
            return "passes " + ", ".join(self.names)
        scope = ", ".join(self.names) if self.names else "all tests"
        return f"at least {self.k} of {scope}"


def _names(value) -> tuple:
    if not isinstance(value, list) or not value or not all(isinstance(v, str) for v in value):
        raise ConfigError("rule predicates need a non-empty list of test names")
    return tuple(value)


@dataclass(frozen=True)
class MappingRule:
    when: Predicate
    points: Fraction

    @classmethod
    def from_dict(cls, data) -> "MappingRule":
        if not isinstance(data, dict) or "when" not in data or "points" not in data:
            raise ConfigError("a rule needs 'when' and 'points'")
        try:
            points = to_rational(data["points"])
        except ValidationError as exc:
            raise ConfigError(f"rule points: {exc}") from None
        return cls(Predicate.parse(data["when"]), points)

    def to_dict(self) -> dict:
        return {"when": self.when.to_json(), "points": format_rational(self.points)}


@dataclass(frozen=True)
class RuleTable:
    rules: tuple
    groups: dict = field(default_factory=dict)

    def validate(self, max_points: Fraction):
        if not self.rules:
            raise ConfigError("a programming task needs at least one rule")
        if self.rules[-1].when.kind != "otherwise":
            raise ConfigError("the last rule must be the catch-all 'otherwise'")
        for i, rule in enumerate(self.rules):
            if rule.points < 0 or rule.points > max_points:
                raise ConfigError(f"rule {i} awards {format_rational(rule.points)} points, outside 0..{format_rational(max_points)}")

    def _passes(self, name: str, results: TestResults) -> bool:
        if name in self.groups:
            return all(results.passed(t) for t in self.groups[name])
        return results.passed(name)

    def holds(self, p: Predicate, results: TestResults) -> bool:
        if p.kind == "otherwise":
            return True
        if p.kind == "all_pass":
            return results.compiled and all(v == "pass" for v in results.outcomes.values())
        if p.kind == "passes":
            return all(self._passes(n, results) for n in p.names)
        names = p.names or tuple(results.outcomes)
        return sum(self._passes(n, results) for n in names) >= p.k

    def fire(self, results: TestResults) -> tuple[int, MappingRule]:
        for i, rule in enumerate(self.rules):
            if self.holds(rule.when, results):
                return i, rule
        raise ConfigError("no rule matched; the table lacks a catch-all")  # pragma: no cover


def map_test_results(table: RuleTable, max_points: Fraction, results: TestResults) -> TaskGrade:
    if not results.compiled:
        return TaskGrade(Fraction(0), Status.NEEDS_REVIEW, (NO_COMPILE,))
    i, rule = table.fire(results)
    status = Status.AUTO_FULL if rule.points == max_points else Status.NEEDS_REVIEW
    evidence = (f"rule {i} fired ({rule.when.describe()}): {format_rational(rule.points)} points",)
    return TaskGrade(rule.points, status, evidence)
