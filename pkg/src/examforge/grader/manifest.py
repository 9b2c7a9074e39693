"""Exam manifests: JSON task lists validated once at load time."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from ..errors import ConfigError, ValidationError
from ..proof_grader import Algorithm, PuzzleTask
from ..rational import to_rational
from .restrictions import RestrictionSpec
from .rules import MappingRule, RuleTable
from .tasks import (
    MultipleChoice,
    ProgrammingTask,
    ProofTask,
    RegexTask,
    SingleChoice,
    TextTask,
    compile_pattern,
)

KINDS = ("single_choice", "multiple_choice", "regex", "proof_puzzle", "programming", "text")


@dataclass(frozen=True)
class Manifest:
    tasks: tuple
    title: str = ""

    def __post_init__(self):
        ids = [t.id for t in self.tasks]
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        if dupes:
            raise ConfigError(f"duplicate task id(s): {', '.join(dupes)}")
        by_id = {t.id: t for t in self.tasks}
        for t in self.tasks:
            if isinstance(t, RegexTask) and t.depends_on is not None:
                dep = by_id.get(t.depends_on)
                if not isinstance(dep, SingleChoice):
                    raise ConfigError(f"task {t.id}: depends_on {t.depends_on!r} is not a single choice task")

    def task(self, task_id: str):
        for t in self.tasks:
            if t.id == task_id:
                return t
        raise KeyError(task_id)

    @property
    def ids(self) -> list[str]:
        return [t.id for t in self.tasks]


def _points(raw, task_id, key="max_points"):
    try:
        value = to_rational(raw)
    except ValidationError as exc:
        raise ConfigError(f"task {task_id}: {key}: {exc}") from None
    if value < 0:
        raise ConfigError(f"task {task_id}: {key} must not be negative")
    return value


def _options(data, task_id):
    options = data.get("options")
    if not isinstance(options, list) or not options:
        raise ConfigError(f"task {task_id}: 'options' must be a non-empty list")
    return tuple(options)


def _load_json(path: Path, what: str):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read {what} {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{what} {path} is not valid JSON: {exc}") from None


def task_from_dict(data: Any, base_dir: Path | None = None):
    if not isinstance(data, dict):
        raise ConfigError("each task must be a JSON object")
    task_id = data.get("id")
    if not isinstance(task_id, str) or not task_id:
        raise ConfigError("every task needs a string 'id'")
    kind = data.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"task {task_id}: unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    base_dir = base_dir or Path(".")

    if kind == "proof_puzzle":
        raw = data.get("task")
        if raw is None and "task_file" in data:
            raw = _load_json(base_dir / data["task_file"], "puzzle task")
        if raw is None:
            raise ConfigError(f"task {task_id}: proof puzzle needs 'task' or 'task_file'")
        try:
            puzzle = PuzzleTask.from_dict(raw)
            algorithm = Algorithm(data.get("algorithm", "sequence"))
        except (ValidationError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"task {task_id}: {exc}") from None
        max_points = _points(data["max_points"], task_id) if "max_points" in data else puzzle.max_points()
        if max_points != puzzle.max_points():
            raise ConfigError(f"task {task_id}: max_points differs from the best solution's points")
        return ProofTask(task_id, max_points, puzzle, algorithm)

    if "max_points" not in data:
        raise ConfigError(f"task {task_id}: missing max_points")
    max_points = _points(data["max_points"], task_id)

    if kind == "single_choice":
        return SingleChoice(task_id, max_points, _options(data, task_id), data.get("correct"), data.get("negative"))
    if kind == "multiple_choice":
        correct = data.get("correct")
        if not isinstance(correct, list) or len(set(map(repr, correct))) != len(correct):
            raise ConfigError(f"task {task_id}: 'correct' must be a list of distinct option indices")
        mode = data.get("mode", "all_or_nothing")
        if mode not in ("all_or_nothing", "per_option"):
            raise ConfigError(f"task {task_id}: mode must be all_or_nothing or per_option")
        return MultipleChoice(task_id, max_points, _options(data, task_id), frozenset(correct), mode == "per_option")
    if kind == "regex":
        patterns = data.get("patterns")
        if not isinstance(patterns, list) or not patterns:
            raise ConfigError(f"task {task_id}: 'patterns' must be a non-empty list")
        compiled = tuple(compile_pattern(p, max_points, task_id) for p in patterns)
        return RegexTask(task_id, max_points, compiled, data.get("depends_on"))
    if kind == "programming":
        rules_raw = data.get("rules")
        if not isinstance(rules_raw, list):
            raise ConfigError(f"task {task_id}: 'rules' must be a list")
        groups = data.get("groups") or {}
        if not isinstance(groups, dict) or not all(isinstance(v, list) for v in groups.values()):
            raise ConfigError(f"task {task_id}: 'groups' must map names to lists of tests")
        try:
            table = RuleTable(tuple(MappingRule.from_dict(r) for r in rules_raw), {k: tuple(v) for k, v in groups.items()})
            table.validate(max_points)
            restrictions = RestrictionSpec.from_dict(data["restrictions"]) if data.get("restrictions") else None
        except ConfigError as exc:
            raise ConfigError(f"task {task_id}: {exc}") from None
        return ProgrammingTask(task_id, max_points, table, restrictions)
    return TextTask(task_id, max_points, str(data.get("prompt", "")))


def manifest_from_dict(data: Any, base_dir: Path | None = None) -> Manifest:
    if not isinstance(data, dict) or not isinstance(data.get("tasks"), list):
        raise ConfigError("a manifest is an object with a 'tasks' list")
    return Manifest(tuple(task_from_dict(t, base_dir) for t in data["tasks"]), str(data.get("title", "")))


def load_manifest(path: str | Path) -> Manifest:
    path = Path(path)
    return manifest_from_dict(_load_json(path, "manifest"), path.parent)
