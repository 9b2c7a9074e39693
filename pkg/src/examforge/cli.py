"""Command-line entry point: ``examforge <subcommand> ...``.

Exit codes: 0 success, 1 violations or failed checks, 2 input or parse
error, 3 configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .errors import ConfigError, ExamForgeError, SourceError, ValidationError

EXIT_OK, EXIT_FINDINGS, EXIT_INPUT, EXIT_CONFIG = 0, 1, 2, 3


def _dump(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


class _Failure(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _use_color(stream) -> bool:
    mode = os.environ.get("EXAMFORGE_COLOR", "auto").lower()
    if mode == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty() and "NO_COLOR" not in os.environ


def _diag(message: str, level: str = "error"):
    stream = sys.stderr
    label = f"{level}:"
    if _use_color(stream):
        color = "31" if level == "error" else "33"
        label = f"\033[1;{color}m{label}\033[0m"
    print(f"examforge: {label} {message}", file=stream)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise _Failure(f"{path}: no such file", EXIT_INPUT) from None
    except (OSError, UnicodeDecodeError) as exc:
        raise _Failure(f"{path}: cannot read ({exc})", EXIT_INPUT) from None


def _read_json(path: str, code: int = EXIT_INPUT):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _Failure(f"{path}: invalid JSON ({exc})", code) from None


def _emit(text: str, out: str | None):
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise _Failure(f"{out}: cannot write ({exc.strerror})", EXIT_INPUT) from None
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------------


def _compile_file(path: str):
    from .htrsl import HtrslFileError, HtrslSyntaxError, compile_file, parse_htrsl

    try:
        return compile_file(parse_htrsl(_read_text(path)))
    except HtrslSyntaxError as exc:
        raise _Failure(f"{path}:{exc}", EXIT_INPUT) from None
    except HtrslFileError as exc:
        raise _Failure("\n".join(f"{path}: spec {i}: {err}" for i, err in exc.failures), EXIT_INPUT) from None


def cmd_htrsl_compile(args) -> int:
    compiled = _compile_file(args.file)
    if args.plain:
        text = "".join(c.pattern + "\n" for c in compiled)
    else:
        text = _dump([c.to_dict(i) for i, c in enumerate(compiled)])
    _emit(text, args.out)
    return EXIT_OK


def cmd_htrsl_check(args) -> int:
    from .htrsl import check_examples, load_examples

    compiled = _compile_file(args.file)
    examples = load_examples(_read_json(args.examples), len(compiled))
    reports = [(i, check_examples(compiled[i], pos, neg)) for i, (pos, neg) in examples.items()]
    _emit(_dump([r.to_dict(i) for i, r in reports]), args.out)
    failed = [i for i, r in reports if not r.passed]
    for i in failed:
        _diag(f"spec {i}: examples not satisfied", "warning")
    return EXIT_FINDINGS if failed else EXIT_OK


def _analysis(path: str):
    from .hs_analyzer import AnalysisReport, analyze_source

    if path.endswith(".json"):
        try:
            return AnalysisReport.from_dict(_read_json(path))
        except (KeyError, TypeError, AttributeError):
            raise _Failure(f"{path}: not an analysis report", EXIT_INPUT) from None
    try:
        return analyze_source(_read_text(path))
    except SourceError as exc:
        raise _Failure(f"{path}:{exc}", EXIT_INPUT) from None


def cmd_analyze(args) -> int:
    from .hs_analyzer import emit_json

    _emit(emit_json(_analysis(args.file)), args.out)
    return EXIT_OK


def cmd_restrict(args) -> int:
    from .grader import RestrictionSpec, check_restrictions

    spec = RestrictionSpec.from_dict(_read_json(args.spec, EXIT_CONFIG))
    violations = check_restrictions(_analysis(args.file), spec)
    _emit(_dump({"violations": [v.to_dict() for v in violations]}), args.out)
    for v in violations:
        _diag(v.message, "warning")
    return EXIT_FINDINGS if violations else EXIT_OK


def cmd_grade_proof(args) -> int:
    from .proof_grader import PuzzleAttempt, PuzzleTask, grade

    task_data = _read_json(args.task, EXIT_CONFIG)
    try:
        task = PuzzleTask.from_dict(task_data)
    except (ExamForgeError, KeyError, TypeError, ValueError) as exc:
        raise _Failure(f"{args.task}: {exc}", EXIT_CONFIG) from None
    attempt_data = _read_json(args.attempt)
    if isinstance(attempt_data, list):
        attempt_data = {"sequence": attempt_data}
    try:
        attempt = PuzzleAttempt.from_dict(attempt_data)
        result = grade(task, attempt, args.algorithm)
    except (ValidationError, KeyError, TypeError) as exc:
        raise _Failure(f"{args.attempt}: {exc}", EXIT_INPUT) from None
    _emit(_dump(result.to_dict()), args.out)
    return EXIT_OK


def cmd_grade_exam(args) -> int:
    from .grader import csv_summary, grade_batch, load_manifest, load_submissions

    if not Path(args.manifest).is_file():
        raise _Failure(f"{args.manifest}: no such file", EXIT_INPUT)
    if not Path(args.submissions).exists():
        raise _Failure(f"{args.submissions}: no such file or directory", EXIT_INPUT)
    manifest = load_manifest(args.manifest)
    reports = grade_batch(manifest, load_submissions(args.submissions))
    _emit(_dump({"reports": [r.to_dict() for r in reports]}), args.out)
    if args.csv:
        _emit(csv_summary(manifest, reports), args.csv)
    for r in reports:
        for e in r.errors:
            _diag(f"{r.student}: {e}", "warning")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="examforge", description="Exam grading and authoring tools.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    p = add("htrsl-compile", cmd_htrsl_compile, "Compile an .htrsl file into anchored regular expressions.")
    p.add_argument("file", help=".htrsl specification file")
    p.add_argument("--plain", action="store_true", help="print one pattern per line instead of JSON")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = add("htrsl-check", cmd_htrsl_check, "Check compiled specifications against example strings.")
    p.add_argument("file", help=".htrsl specification file")
    p.add_argument("--examples", metavar="FILE", required=True, help="JSON positives/negatives per spec index")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = add("analyze", cmd_analyze, "Report language features used by each top-level binding.")
    p.add_argument("file", help="Haskell source file")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = add("restrict", cmd_restrict, "Check a source file (or analysis JSON) against restrictions.")
    p.add_argument("file", help="Haskell source file or analysis report (.json)")
    p.add_argument("--spec", metavar="FILE", required=True, help="restriction specification (JSON)")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = add("grade-proof", cmd_grade_proof, "Grade a proof puzzle attempt.")
    p.add_argument("--task", metavar="FILE", required=True, help="puzzle task (JSON)")
    p.add_argument("--attempt", metavar="FILE", required=True, help="attempt sequence (JSON)")
    p.add_argument("--algorithm", choices=["legacy", "sequence"], default="sequence")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = add("grade-exam", cmd_grade_exam, "Grade submissions against an exam manifest.")
    p.add_argument("--manifest", metavar="FILE", required=True, help="exam manifest (JSON)")
    p.add_argument(
        "--submissions", metavar="PATH", required=True,
        help="submission JSON file, JSON-lines file (.jsonl), or directory of JSON files",
    )
    p.add_argument("--csv", metavar="FILE", help="also write a CSV summary to FILE")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        _diag(str(exc))
        return exc.code
    except ConfigError as exc:
        _diag(str(exc))
        return EXIT_CONFIG
    except ExamForgeError as exc:
        _diag(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
