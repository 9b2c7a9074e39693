"""Exception hierarchy shared by all subpackages."""

from __future__ import annotations


class ExamForgeError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ExamForgeError, ValueError):
    """Input data violates a documented invariant."""


class ConfigError(ExamForgeError):
    """A task definition or manifest is malformed."""


class SourceError(ExamForgeError):
    """Lexing or parsing failed at a known source position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}{message}")
