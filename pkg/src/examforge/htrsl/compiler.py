"""Translate specifications into anchored ECMAScript regular expressions.

Adjacent items are joined by ``\\s*``; mandatory whitespace becomes ``\\s+``
and absorbs the optional separators next to it.  Identifiers capture into
generated groups ``g1, g2, ...`` on first use and back-reference afterwards.
Optional parentheses use a lookahead on the opening side and a lookbehind on
the closing side so that either both parentheses are present or neither is.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ExamForgeError
from .ast import Alt, Desc, HtrslFile, Lit, Name, OptParens, Space

DIALECT = "ecmascript-2018"
IDENT_CLASS = "[_a-z][_a-zA-Z0-9']*"
OPEN_PAREN = r"(?:\((?=[^()]*\)))?"
CLOSE_PAREN = r"(?:(?<=\([^()]*)\))?"
_META = set("\\^$.|?*+()[]{}")
_SPACE = object()


class HtrslCompileError(ExamForgeError):
    def __init__(self, message, pos=None):
        self.pos = pos
        where = f"{pos[0]}:{pos[1]}: " if pos else ""
        super().__init__(f"{where}{message}")


class HtrslFileError(ExamForgeError):
    """One or more specifications in a file failed to compile."""

    def __init__(self, failures: list[tuple[int, HtrslCompileError]]):
        self.failures = failures
        lines = [f"spec {idx}: {err}" for idx, err in failures]
        super().__init__("; ".join(lines))


@dataclass(frozen=True)
class CompiledRegex:
    pattern: str
    group_map: dict = field(default_factory=dict)
    dialect: str = DIALECT

    def to_dict(self, spec_index: int | None = None) -> dict:
        out = {}
        if spec_index is not None:
            out["spec_index"] = spec_index
        out["pattern"] = self.pattern
        out["groups"] = dict(self.group_map)
        out["dialect"] = self.dialect
        return out


def escape_literal(text: str) -> str:
    return "".join("\\" + ch if ch in _META else ch for ch in text)


def join_fragments(frags) -> str:
    out = []
    prev = None
    for frag in frags:
        if prev is not None and prev is not _SPACE and frag is not _SPACE:
            out.append(r"\s*")
        out.append(r"\s+" if frag is _SPACE else frag)
        prev = frag
    return "".join(out)


class _Compiler:
    def __init__(self):
        self.groups: dict[str, str] = {}

    def name(self, item: Name, in_alt: bool) -> str:
        group = self.groups.get(item.ident)
        if group is not None:
            return rf"\k<{group}>"
        if in_alt:
            raise HtrslCompileError(
                f"identifier {item.ident!r} is first bound inside an alternative; "
                "bind it before the alternatives",
                item.pos,
            )
        group = f"g{len(self.groups) + 1}"
        if group in self.groups.values():  # pragma: no cover - generated names are unique
            raise HtrslCompileError(f"group name collision: {group}", item.pos)
        self.groups[item.ident] = group
        return f"(?<{group}>{IDENT_CLASS})"

    def fragments(self, items, in_alt=False, in_parens=False):
        frags = []
        for item in items:
            if isinstance(item, Lit):
                if in_parens and ("(" in item.text or ")" in item.text):
                    raise HtrslCompileError(
                        f"literal {item.text!r} inside optional parentheses may not contain parentheses",
                        item.pos,
                    )
                frags.append(escape_literal(item.text))
            elif isinstance(item, Name):
                frags.append(self.name(item, in_alt))
            elif isinstance(item, Space):
                frags.append(_SPACE)
            elif isinstance(item, Alt):
                branches = [
                    join_fragments(self.fragments(alt, in_alt=True, in_parens=in_parens))
                    for alt in item.alternatives
                ]
                frags.append("(?:" + "|".join(branches) + ")")
            elif isinstance(item, OptParens):
                if in_parens or in_alt:
                    raise HtrslCompileError("optional parentheses cannot be nested", item.pos)
                frags.append(OPEN_PAREN)
                frags.extend(self.fragments(item.body, in_alt=in_alt, in_parens=True))
                frags.append(CLOSE_PAREN)
            else:
                raise TypeError(f"not a description item: {item!r}")
        return frags


def compile_spec(desc: Desc) -> CompiledRegex:
    comp = _Compiler()
    frags = comp.fragments(desc.items)
    body = join_fragments(frags)
    head = "^" if frags and frags[0] is _SPACE else r"^\s*"
    tail = "$" if frags and frags[-1] is _SPACE else r"\s*$"
    return CompiledRegex(head + body + tail, dict(comp.groups))


def compile_file(f: HtrslFile) -> list[CompiledRegex]:
    out, failures = [], []
    for idx, desc in enumerate(f.specs):
        try:
            out.append(compile_spec(desc))
        except HtrslCompileError as err:
            failures.append((idx, err))
    if failures:
        raise HtrslFileError(failures)
    return out
