"""Task definitions and the per-kind grading functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .. import ecma
from ..errors import ConfigError, SourceError, ValidationError
from ..hs_analyzer import analyze_source
from ..htrsl import HtrslCompileError, HtrslSyntaxError, compile_spec, parse_desc
from ..proof_grader import Algorithm, PuzzleAttempt, PuzzleTask, grade as grade_puzzle
from ..rational import format_rational, to_rational
from .model import Status, TaskGrade, TestResults, unanswered
from .restrictions import RestrictionSpec, check_restrictions
from .rules import RuleTable, map_test_results


@dataclass(frozen=True)
class SingleChoice:
    id: str
    max_points: Fraction
    options: tuple
    correct_index: int
    negative_index: Optional[int] = None
    kind = "single_choice"

    def __post_init__(self):
        _check_index(self.id, self.correct_index, self.options, "correct")
        if self.negative_index is not None:
            _check_index(self.id, self.negative_index, self.options, "negative")


@dataclass(frozen=True)
class MultipleChoice:
    id: str
    max_points: Fraction
    options: tuple
    correct_set: frozenset
    per_option: bool = False
    kind = "multiple_choice"

    def __post_init__(self):
        for i in self.correct_set:
            _check_index(self.id, i, self.options, "correct")


@dataclass(frozen=True)
class RegexPattern:
    source: str  # the ECMAScript pattern
    points: Fraction
    origin: str = "pattern"  # "pattern" or "htrsl"


@dataclass(frozen=True)
class RegexTask:
    id: str
    max_points: Fraction
    patterns: tuple
    depends_on: Optional[str] = None
    kind = "regex"


@dataclass(frozen=True)
class ProofTask:
    id: str
    max_points: Fraction
    task: PuzzleTask
    algorithm: Algorithm = Algorithm.SEQUENCE
    kind = "proof_puzzle"


@dataclass(frozen=True)
class ProgrammingTask:
    id: str
    max_points: Fraction
    rules: RuleTable
    restrictions: Optional[RestrictionSpec] = None
    kind = "programming"


@dataclass(frozen=True)
class TextTask:
    id: str
    max_points: Fraction
    prompt: str = ""
    kind = "text"


def _check_index(task_id, i, options, what):
    if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < len(options):
        raise ConfigError(f"task {task_id}: {what} index {i!r} is not an option index")


def compile_pattern(entry, default_points: Fraction, task_id: str) -> RegexPattern:
    """Accept a pattern string or ``{"pattern"|"htrsl": ..., "points": ...}``."""
    points = default_points
    if isinstance(entry, str):
        source, origin = entry, "pattern"
    elif isinstance(entry, dict) and len({"pattern", "htrsl"} & set(entry)) == 1:
        origin = "pattern" if "pattern" in entry else "htrsl"
        source = entry[origin]
        if "points" in entry:
            try:
                points = to_rational(entry["points"])
            except ValidationError as exc:
                raise ConfigError(f"task {task_id}: pattern points: {exc}") from None
        if not isinstance(source, str):
            raise ConfigError(f"task {task_id}: {origin} must be a string")
        if origin == "htrsl":
            try:
                source = compile_spec(parse_desc(source)).pattern
            except (HtrslSyntaxError, HtrslCompileError) as exc:
                raise ConfigError(f"task {task_id}: htrsl specification: {exc}") from None
    else:
        raise ConfigError(f"task {task_id}: a pattern is a string or an object with 'pattern' or 'htrsl'")
    if not 0 <= points <= default_points:
        raise ConfigError(f"task {task_id}: pattern points must lie in 0..{format_rational(default_points)}")
    try:
        ecma.compile(source)
    except ecma.EcmaRegexError as exc:
        raise ConfigError(f"task {task_id}: {exc}") from None
    return RegexPattern(source, points, origin)


# -- grading ------------------------------------------------------------------------


def _as_index(answer, n, what="answer"):
    if not isinstance(answer, int) or isinstance(answer, bool):
        raise ValidationError(f"{what} must be an option index, got {answer!r}")
    if not 0 <= answer < n:
        raise ValidationError(f"{what} {answer} is out of range 0..{n - 1}")
    return answer


def grade_single_choice(task: SingleChoice, answer) -> TaskGrade:
    if answer is None:
        return unanswered()
    i = _as_index(answer, len(task.options))
    if i == task.correct_index:
        return TaskGrade(task.max_points, Status.AUTO_FULL, (f"option {i} is correct",))
    return TaskGrade(Fraction(0), Status.AUTO_FULL, (f"option {i} is wrong",))


def grade_multiple_choice(task: MultipleChoice, answer) -> TaskGrade:
    if answer is None:
        return unanswered()
    if not isinstance(answer, (list, tuple)):
        raise ValidationError(f"multiple choice answer must be a list of indices, got {answer!r}")
    chosen = [_as_index(a, len(task.options)) for a in answer]
    if len(set(chosen)) != len(chosen):
        raise ValidationError("multiple choice answer repeats an index")
    chosen_set = set(chosen)
    if not task.per_option:
        if chosen_set == task.correct_set:
            return TaskGrade(task.max_points, Status.AUTO_FULL, ("selection matches",))
        return TaskGrade(Fraction(0), Status.AUTO_FULL, ("selection differs",))
    n = len(task.options)
    right = sum((i in chosen_set) == (i in task.correct_set) for i in range(n))
    points = max(Fraction(0), task.max_points * right / n) if n else task.max_points
    status = Status.AUTO_PARTIAL if 0 < points < task.max_points else Status.AUTO_FULL
    return TaskGrade(points, status, (f"{right} of {n} options decided correctly",))


def grade_regex(task: RegexTask, text, dependency: Optional[SingleChoice] = None, dependency_answer=None) -> TaskGrade:
    if task.depends_on is not None:
        if dependency is None:
            raise ConfigError(f"task {task.id}: dependency {task.depends_on} not supplied")
        if dependency_answer is None:
            return unanswered(f"dependency {task.depends_on} unanswered")
        dep = _as_index(dependency_answer, len(dependency.options), "dependency answer")
        if dependency.negative_index is not None and dep == dependency.negative_index:
            note = "negative option selected; text input not expected"
            if text:
                note += " (given text ignored)"
            return TaskGrade(Fraction(0), Status.AUTO_FULL, (note,))
        if text is None or text == "":
            return TaskGrade(Fraction(0), Status.NEEDS_REVIEW, ("dependency answered but text left empty",))
    elif text is None or text == "":
        return unanswered()
    if not isinstance(text, str):
        raise ValidationError(f"regex answer must be a string, got {text!r}")
    for i, pat in enumerate(task.patterns):
        if ecma.search(pat.source, text):
            status = Status.AUTO_FULL if pat.points == task.max_points else Status.NEEDS_REVIEW
            return TaskGrade(pat.points, status, (f"matched pattern {i}",))
    return TaskGrade(Fraction(0), Status.NEEDS_REVIEW, ("no pattern matched",))


def grade_proof(task: ProofTask, attempt) -> TaskGrade:
    if attempt is None:
        return unanswered()
    if isinstance(attempt, dict):
        attempt = PuzzleAttempt.from_dict(attempt)
    elif isinstance(attempt, (list, tuple)):
        attempt = PuzzleAttempt(tuple(attempt))
    elif not isinstance(attempt, PuzzleAttempt):
        raise ValidationError("a proof answer is a list of item texts")
    result = grade_puzzle(task.task, attempt, task.algorithm)
    status = Status.AUTO_FULL if result.points == task.max_points else Status.AUTO_PARTIAL
    per = ", ".join(f"solution {i}: {format_rational(p)}" for i, p in result.per_solution)
    return TaskGrade(result.points, status, (f"{result.algorithm.value} algorithm; {per}",))


def grade_programming(task: ProgrammingTask, results, source: Optional[str] = None) -> TaskGrade:
    if results is None:
        return unanswered()
    if isinstance(results, dict):
        results = TestResults.from_dict(results)
    grade = map_test_results(task.rules, task.max_points, results)
    if task.restrictions is None or source is None:
        return grade
    try:
        report = analyze_source(source)
    except SourceError as exc:
        return TaskGrade(grade.points, Status.NEEDS_REVIEW, grade.evidence + (f"restriction check impossible: {exc}",))
    violations = check_restrictions(report, task.restrictions)
    if not violations:
        return grade
    return TaskGrade(grade.points, Status.NEEDS_REVIEW, grade.evidence + tuple(f"violation: {v.message}" for v in violations))


def grade_text(task: TextTask, answer) -> TaskGrade:
    if answer is None or (isinstance(answer, str) and not answer.strip()):
        return unanswered()
    return TaskGrade(Fraction(0), Status.NEEDS_REVIEW, ("free text: manual grading required",))
