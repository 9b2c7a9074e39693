"""Regex specification language: parse, compile, and check examples."""

from .ast import Alt, Desc, HtrslFile, Lit, Name, OptParens, Space
from .checker import CheckReport, check_examples, load_examples
from .compiler import CompiledRegex, HtrslCompileError, HtrslFileError, compile_file, compile_spec
from .parser import HtrslSyntaxError, NestedParensError, parse_desc, parse_htrsl
from .printer import render_desc, render_file

__all__ = [
    "Alt",
    "CheckReport",
    "CompiledRegex",
    "Desc",
    "HtrslCompileError",
    "HtrslFile",
    "HtrslFileError",
    "HtrslSyntaxError",
    "Lit",
    "Name",
    "NestedParensError",
    "OptParens",
    "Space",
    "check_examples",
    "compile_file",
    "compile_spec",
    "load_examples",
    "parse_desc",
    "parse_htrsl",
    "render_desc",
    "render_file",
]
