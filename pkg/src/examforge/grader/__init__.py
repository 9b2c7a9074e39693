"""Exam-level grading across all task kinds."""

from .exam import GradeReport, Submission, TaskRecord, csv_summary, grade_batch, grade_exam, load_submissions
from .manifest import KINDS, Manifest, load_manifest, manifest_from_dict
from .model import Status, TaskGrade, TestResults, Violation
from .restrictions import Constraint, RestrictionSpec, check_restrictions
from .rules import NO_COMPILE, MappingRule, Predicate, RuleTable, map_test_results
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

__all__ = [
    "KINDS",
    "NO_COMPILE",
    "Constraint",
    "GradeReport",
    "Manifest",
    "MappingRule",
    "MultipleChoice",
    "Predicate",
    "ProgrammingTask",
    "ProofTask",
    "RegexTask",
    "RestrictionSpec",
    "RuleTable",
    "SingleChoice",
    "Status",
    "Submission",
    "TaskGrade",
    "TaskRecord",
    "TestResults",
    "TextTask",
    "Violation",
    "check_restrictions",
    "csv_summary",
    "grade_batch",
    "grade_exam",
    "grade_multiple_choice",
    "grade_programming",
    "grade_proof",
    "grade_regex",
    "grade_single_choice",
    "grade_text",
    "load_manifest",
    "load_submissions",
    "manifest_from_dict",
    "map_test_results",
]
