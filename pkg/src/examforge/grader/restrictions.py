"""Check analyzer reports against per-task language restrictions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import ConfigError
from ..hs_analyzer import FEATURES, AnalysisReport
from .model import Violation

_KEYS = {"required_features", "forbidden_features", "allowed_calls", "forbidden_calls"}


@dataclass(frozen=True)
class Constraint:
    required_features: tuple = ()
    forbidden_features: tuple = ()
    allowed_calls: Optional[tuple] = None
    forbidden_calls: Optional[tuple] = None

    def __post_init__(self):
        for feat in self.required_features + self.forbidden_features:
            if feat not in FEATURES:
                raise ConfigError(f"unknown feature {feat!r}; expected one of {', '.join(FEATURES)}")
        both = set(self.required_features) & set(self.forbidden_features)
        if both:
            raise ConfigError(f"feature(s) both required and forbidden: {', '.join(sorted(both))}")
        if self.allowed_calls is not None and self.forbidden_calls is not None:
            raise ConfigError("allowed_calls and forbidden_calls cannot be combined")

    @property
    def empty(self) -> bool:
        return not (self.required_features or self.forbidden_features) and self.allowed_calls is None and self.forbidden_calls is None

    @classmethod
    def from_dict(cls, data) -> "Constraint":
        if not isinstance(data, dict):
            raise ConfigError("a restriction must be a JSON object")
        unknown = set(data) - _KEYS
        if unknown:
            raise ConfigError(f"unknown restriction key(s): {', '.join(sorted(unknown))}")

        def names(key):
            value = data.get(key)
            if value is None:
                return None
            if isinstance(value, str):
                value = [value]
            if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                raise ConfigError(f"{key} must be a list of names")
            return tuple(value)

        return cls(
            required_features=names("required_features") or (),
            forbidden_features=names("forbidden_features") or (),
            allowed_calls=names("allowed_calls"),
            forbidden_calls=names("forbidden_calls"),
        )

    def to_dict(self) -> dict:
        out = {}
        if self.required_features:
            out["required_features"] = list(self.required_features)
        if self.forbidden_features:
            out["forbidden_features"] = list(self.forbidden_features)
        if self.allowed_calls is not None:
            out["allowed_calls"] = list(self.allowed_calls)
        if self.forbidden_calls is not None:
            out["forbidden_calls"] = list(self.forbidden_calls)
        return out


@dataclass(frozen=True)
class RestrictionSpec:
    """A global constraint applied to every function plus per-function ones.

    JSON form: either a bare constraint object (taken as global) or
    ``{"global": {...}, "functions": {"name": {...}}}``.
    """

    global_: Constraint = field(default_factory=Constraint)
    functions: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data) -> "RestrictionSpec":
        if data is None:
            return cls()
        if not isinstance(data, dict):
            raise ConfigError("restrictions must be a JSON object")
        if set(data) <= {"global", "functions"} and data:
            funcs = data.get("functions") or {}
            if not isinstance(funcs, dict):
                raise ConfigError("'functions' must map function names to restrictions")
            return cls(
                Constraint.from_dict(data.get("global") or {}),
                {name: Constraint.from_dict(c) for name, c in funcs.items()},
            )
        return cls(Constraint.from_dict(data), {})

    def to_dict(self) -> dict:
        return {
            "global": self.global_.to_dict(),
            "functions": {k: v.to_dict() for k, v in self.functions.items()},
        }


def _check(fn, c: Constraint, siblings: set) -> list:
    out = []
    for feat in c.required_features:
        if not fn.feature(feat):
            out.append(Violation(fn.name, "missing_feature", feat, f"required feature {feat} absent"))
    for feat in c.forbidden_features:
        if fn.feature(feat):
            out.append(Violation(fn.name, "forbidden_feature", feat, f"forbidden feature {feat} present"))
    if c.forbidden_calls is not None:
        for name in fn.calledFns:
            if name in c.forbidden_calls:
                out.append(Violation(fn.name, "forbidden_call", name, f"forbidden call {name}"))
    if c.allowed_calls is not None:
        permitted = set(c.allowed_calls) | set(fn.declaredFns) | siblings
        for name in fn.calledFns:
            if name not in permitted:
                out.append(Violation(fn.name, "disallowed_call", name, f"call {name} not in allowed list"))
    return out


def check_restrictions(report: AnalysisReport, spec: RestrictionSpec) -> list[Violation]:
    siblings = {f.name for f in report.functions}
    violations = []
    if not spec.global_.empty:
        for fn in report.functions:
            violations.extend(_check(fn, spec.global_, siblings))
    for name, constraint in spec.functions.items():
        fn = report.get(name)
        if fn is None:
            violations.append(Violation(name, "missing_function", name, f"function {name} is not defined"))
            continue
        violations.extend(_check(fn, constraint, siblings))
    return violations
