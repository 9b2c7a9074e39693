"""Whole-exam grading, submission loading, and report output."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional

from ..errors import ExamForgeError, ValidationError
from ..rational import format_rational
from .manifest import Manifest
from .model import Status, TaskGrade
from .tasks import (
    MultipleChoice,
    ProgrammingTask,
    ProofTask,
    RegexTask,
    SingleChoice,
    TextTask,
    grade_multiple_choice,
    grade_programming,
    grade_proof,
    grade_regex,
    grade_single_choice,
    grade_text,
)


@dataclass(frozen=True)
class Submission:
    """One student's answers.

    JSON form::

        {"student": "s01",
         "answers": {"t1": 2, "t2": [0, 3], "t3": "text", ...},
         "comments": {"t1": "free text"}}

    Programming answers are test-result objects, optionally with ``"source"``
    (the student's code, for restriction checks) or ``"results_file"`` /
    ``"source_file"`` paths relative to ``base_dir``.
    """

    student: str
    answers: dict = field(default_factory=dict)
    comments: dict = field(default_factory=dict)
    base_dir: Optional[Path] = None

    @classmethod
    def from_dict(cls, data: Any, default_id: str = "", base_dir: Path | None = None) -> "Submission":
        if not isinstance(data, dict):
            raise ValidationError("a submission must be a JSON object")
        student = data.get("student", default_id)
        if not isinstance(student, str) or not student:
            raise ValidationError("a submission needs a 'student' id")
        answers = data.get("answers") or {}
        comments = data.get("comments") or {}
        if not isinstance(answers, dict) or not isinstance(comments, dict):
            raise ValidationError("'answers' and 'comments' must be JSON objects keyed by task id")
        return cls(student, dict(answers), {k: str(v) for k, v in comments.items()}, base_dir)


@dataclass(frozen=True)
class TaskRecord:
    id: str
    kind: str
    max_points: Fraction
    grade: TaskGrade
    comment: Optional[str] = None
    error: Optional[str] = None

    def to_dict(self) -> dict:
        out = {"id": self.id, "kind": self.kind, "max_points": format_rational(self.max_points)}
        out.update(self.grade.to_dict())
        if self.comment is not None:
            out["comment"] = self.comment
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass(frozen=True)
class GradeReport:
    student: str
    tasks: tuple
    errors: tuple = ()

    @property
    def total(self) -> Fraction:
        return sum((r.grade.points for r in self.tasks), Fraction(0))

    @property
    def auto_total(self) -> Fraction:
        return sum((r.grade.points for r in self.tasks if r.grade.status != Status.NEEDS_REVIEW), Fraction(0))

    @property
    def max_total(self) -> Fraction:
        return sum((r.max_points for r in self.tasks), Fraction(0))

    def status_counts(self) -> dict:
        counts = {s.value: 0 for s in Status}
        for r in self.tasks:
            counts[r.grade.status.value] += 1
        return counts

    @property
    def review(self) -> list:
        return [r for r in self.tasks if r.grade.status == Status.NEEDS_REVIEW]

    def record(self, task_id: str) -> TaskRecord:
        return next(r for r in self.tasks if r.id == task_id)

    def to_dict(self) -> dict:
        return {
            "student": self.student,
            "total": format_rational(self.total),
            "auto_total": format_rational(self.auto_total),
            "max_total": format_rational(self.max_total),
            "status_counts": self.status_counts(),
            "tasks": [r.to_dict() for r in self.tasks],
            "needs_review": [
                {"id": r.id, "evidence": list(r.grade.evidence), "comment": r.comment} for r in self.review
            ],
            "comments": [{"id": r.id, "comment": r.comment} for r in self.tasks if r.comment],
            "errors": list(self.errors),
        }


def _read_ref(sub: Submission, name: str) -> str:
    path = Path(name)
    if not path.is_absolute() and sub.base_dir is not None:
        path = sub.base_dir / path
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {name}: {exc.strerror}") from None


def _programming_inputs(sub: Submission, answer):
    if answer is None:
        return None, None
    if not isinstance(answer, dict):
        raise ValidationError("a programming answer is an object with test results")
    answer = dict(answer)
    source = answer.pop("source", None)
    if "source_file" in answer:
        source = _read_ref(sub, answer.pop("source_file"))
    if "results_file" in answer:
        try:
            answer = json.loads(_read_ref(sub, answer.pop("results_file")))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"test results are not valid JSON: {exc}") from None
    return answer, source


def grade_task(task, sub: Submission, manifest: Manifest) -> TaskGrade:
    answer = sub.answers.get(task.id)
    if isinstance(task, SingleChoice):
        return grade_single_choice(task, answer)
    if isinstance(task, MultipleChoice):
        return grade_multiple_choice(task, answer)
    if isinstance(task, RegexTask):
        dep = manifest.task(task.depends_on) if task.depends_on else None
        dep_answer = sub.answers.get(task.depends_on) if task.depends_on else None
        return grade_regex(task, answer, dep, dep_answer)
    if isinstance(task, ProofTask):
        return grade_proof(task, answer)
    if isinstance(task, ProgrammingTask):
        results, source = _programming_inputs(sub, answer)
        return grade_programming(task, results, source)
    if isinstance(task, TextTask):
        return grade_text(task, answer)
    raise TypeError(f"unknown task type {type(task).__name__}")  # pragma: no cover


def grade_exam(manifest: Manifest, submission: Submission) -> GradeReport:
    """Grade every task; a malformed answer marks its task for review and
    leaves the rest of the exam unaffected."""
    records = []
    for task in manifest.tasks:
        error = None
        try:
            grade = grade_task(task, submission, manifest)
        except ExamForgeError as exc:
            error = str(exc)
            grade = TaskGrade(Fraction(0), Status.NEEDS_REVIEW, (f"invalid answer: {exc}",))
        comment = submission.comments.get(task.id)
        records.append(TaskRecord(task.id, task.kind, task.max_points, grade, comment or None, error))
    known = set(manifest.ids)
    errors = [f"answer for unknown task {k!r}" for k in sorted(submission.answers) if k not in known]
    errors += [f"comment for unknown task {k!r}" for k in sorted(submission.comments) if k not in known]
    return GradeReport(submission.student, tuple(records), tuple(errors))


# -- batches ---------------------------------------------------------------------------


def load_submissions(path: str | Path) -> list[Submission]:
    """Read a JSON file, a JSON-lines file, or a directory of JSON files."""
    path = Path(path)
    if path.is_dir():
        subs = []
        for f in sorted(path.glob("*.json")):
            subs.extend(_from_file(f))
        return subs
    return _from_file(path)


def _from_file(path: Path) -> list[Submission]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    base = path.parent
    if path.suffix == ".jsonl":
        subs = []
        for n, line in enumerate(text.splitlines(), 1):
            if line.strip():
                subs.append(Submission.from_dict(_decode(line, f"{path}:{n}"), base_dir=base))
        return subs
    data = _decode(text, str(path))
    if isinstance(data, list):
        return [Submission.from_dict(d, base_dir=base) for d in data]
    return [Submission.from_dict(data, default_id=path.stem, base_dir=base)]


def _decode(text, where):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{where}: not valid JSON: {exc}") from None


def grade_batch(manifest: Manifest, submissions: Iterable[Submission]) -> list[GradeReport]:
    reports = [grade_exam(manifest, s) for s in submissions]
    ids = [r.student for r in reports]
    dupes = sorted({i for i in ids if ids.count(i) > 1})
    if dupes:
        raise ValidationError(f"duplicate student id(s): {', '.join(dupes)}")
    return sorted(reports, key=lambda r: r.student)


def csv_summary(manifest: Manifest, reports: Iterable[GradeReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["student", *manifest.ids, "total", "review_count"])
    for r in reports:
        points = {rec.id: format_rational(rec.grade.points) for rec in r.tasks}
        writer.writerow([r.student, *(points[i] for i in manifest.ids), format_rational(r.total), len(r.review)])
    return buf.getvalue()
