"""Check compiled patterns against positive and negative example strings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .. import ecma
from ..errors import ConfigError
from .compiler import CompiledRegex


@dataclass
class CheckReport:
    pattern: str
    failed_positives: list[str] = field(default_factory=list)
    matched_negatives: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failed_positives and not self.matched_negatives

    def to_dict(self, spec_index: int | None = None) -> dict:
        out: dict[str, Any] = {}
        if spec_index is not None:
            out["spec_index"] = spec_index
        out["verdict"] = "pass" if self.passed else "fail"
        out["failed_positives"] = list(self.failed_positives)
        out["matched_negatives"] = list(self.matched_negatives)
        return out


def check_examples(
    compiled: CompiledRegex | str,
    positives: Iterable[str] = (),
    negatives: Iterable[str] = (),
) -> CheckReport:
    """Raises :class:`examforge.ecma.EcmaRegexError` if the pattern does not compile."""
    pattern = compiled.pattern if isinstance(compiled, CompiledRegex) else compiled
    rx = ecma.compile(pattern)
    report = CheckReport(pattern)
    for text in positives:
        if not rx.search(text):
            report.failed_positives.append(text)
    for text in negatives:
        if rx.search(text):
            report.matched_negatives.append(text)
    return report


def load_examples(data: Any, n_specs: int) -> dict[int, tuple[list[str], list[str]]]:
    """Normalise an examples document to ``{spec_index: (positives, negatives)}``.

    Accepts a JSON list aligned with the specs, or an object keyed by spec
    index.
    """
    if isinstance(data, list):
        entries = dict(enumerate(data))
    elif isinstance(data, Mapping):
        entries = {}
        for key, value in data.items():
            try:
                entries[int(key)] = value
            except ValueError:
                raise ConfigError(f"example key {key!r} is not a spec index") from None
    else:
        raise ConfigError("examples must be a JSON list or object")
    out = {}
    for idx, entry in sorted(entries.items()):
        if not 0 <= idx < n_specs:
            raise ConfigError(f"examples given for spec {idx}, but the file has {n_specs} specs")
        if entry is None:
            continue
        if not isinstance(entry, Mapping):
            raise ConfigError(f"examples for spec {idx} must be an object")
        pos, neg = entry.get("positives", []), entry.get("negatives", [])
        if not all(isinstance(s, str) for s in [*pos, *neg]):
            raise ConfigError(f"examples for spec {idx} must be strings")
        out[idx] = (list(pos), list(neg))
    return out
