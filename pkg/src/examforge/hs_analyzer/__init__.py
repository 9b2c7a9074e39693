"""Feature extraction for a small, layout-sensitive Haskell subset."""

from .analyze import FEATURES, AnalysisReport, FunctionReport, analyze, emit_json
from .lexer import HsParseError, OutsideSubsetError, tokenize
from .parser import parse_subset


def analyze_source(source: str) -> AnalysisReport:
    return analyze(parse_subset(source))


__all__ = [
    "FEATURES",
    "AnalysisReport",
    "FunctionReport",
    "HsParseError",
    "OutsideSubsetError",
    "analyze",
    "analyze_source",
    "emit_json",
    "parse_subset",
    "tokenize",
]
