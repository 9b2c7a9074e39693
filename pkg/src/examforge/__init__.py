"""Exam authoring and grading toolkit for functional programming e-exams."""

__version__ = "0.1.0"
