"""Lexer and recursive-descent parser for ``.htrsl`` files.

Grammar (juxtaposition separates items, ``;`` separates specifications)::

    file    ::= [desc (";" desc)* [";"]]
    desc    ::= item+
    item    ::= "(" plain+ ")" | plain
    plain   ::= STRING | IDENT | "\\\\" | "[" plain+ ("|" plain+)* "]"

Line comments start with ``--``; block comments are ``{- ... -}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import SourceError
from .ast import Alt, Desc, HtrslFile, Lit, Name, OptParens, Space

IDENT_RE = re.compile(r"[_a-z][_a-zA-Z0-9']*\Z")
_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r"}


class HtrslSyntaxError(SourceError):
    def __init__(self, message, line=None, col=None, token=None):
        self.token = token
        if token is not None:
            message = f"{message} (at {token!r})"
        super().__init__(message, line, col)


class NestedParensError(HtrslSyntaxError):
    """Optional parentheses appear inside other optional parentheses or
    inside alternatives."""


@dataclass(frozen=True)
class Token:
    kind: str  # STRING IDENT SPACE PUNCT EOF
    value: str
    line: int
    col: int

    @property
    def pos(self):
        return (self.line, self.col)


def tokenize(source: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(source)

    def advance(k):
        nonlocal i, line, col
        for ch in source[i : i + k]:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        i += k

    while i < n:
        ch = source[i]
        if ch in " \t\r\n\f\v":
            advance(1)
        elif source.startswith("--", i):
            end = source.find("\n", i)
            advance((n if end < 0 else end) - i)
        elif source.startswith("{-", i):
            start = (line, col)
            end = source.find("-}", i + 2)
            if end < 0:
                raise HtrslSyntaxError("unterminated block comment", *start)
            advance(end + 2 - i)
        elif ch == '"':
            start = (line, col)
            j = i + 1
            out = []
            while True:
                if j >= n:
                    raise HtrslSyntaxError("unterminated string literal", *start)
                c = source[j]
                if c == '"':
                    break
                if c == "\\":
                    nxt = source[j + 1] if j + 1 < n else ""
                    if nxt not in _ESCAPES:
                        raise HtrslSyntaxError(f"unknown escape \\{nxt} in string", *start)
                    out.append(_ESCAPES[nxt])
                    j += 2
                else:
                    out.append(c)
                    j += 1
            tokens.append(Token("STRING", "".join(out), *start))
            advance(j + 1 - i)
        elif source.startswith("\\\\", i):
            tokens.append(Token("SPACE", "\\\\", line, col))
            advance(2)
        elif ch in "[]|();":
            tokens.append(Token("PUNCT", ch, line, col))
            advance(1)
        else:
            m = _WORD.match(source, i)
            if m is None:
                raise HtrslSyntaxError("unexpected character", line, col, ch)
            word = m.group()
            if not IDENT_RE.match(word):
                raise HtrslSyntaxError(
                    "identifiers must start with a lowercase letter or underscore", line, col, word
                )
            tokens.append(Token("IDENT", word, line, col))
            advance(len(word))
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, value) -> bool:
        tok = self.peek()
        return tok.kind == "PUNCT" and tok.value == value

    def fail(self, message, tok=None, cls=HtrslSyntaxError):
        tok = tok or self.peek()
        raise cls(message, tok.line, tok.col, tok.value if tok.kind != "EOF" else "end of input")

    def file(self) -> HtrslFile:
        specs = []
        while self.peek().kind != "EOF":
            specs.append(self.desc())
            if self.at(";"):
                self.take()
            elif self.peek().kind != "EOF":
                self.fail("expected ';' between specifications")
        return HtrslFile(tuple(specs))

    def _starts_plain(self) -> bool:
        tok = self.peek()
        return tok.kind in ("STRING", "IDENT", "SPACE") or (tok.kind == "PUNCT" and tok.value == "[")

    def desc(self) -> Desc:
        items = []
        while True:
            if self.at("("):
                items.append(self.parens())
            elif self._starts_plain():
                items.append(self.plain())
            else:
                break
        if not items:
            self.fail("expected a description item")
        return Desc(tuple(items))

    def parens(self) -> OptParens:
        open_tok = self.take()
        body = self.plain_run("optional parentheses", closers=(")",))
        if not self.at(")"):
            self.fail("expected ')'")
        self.take()
        return OptParens(tuple(body), pos=open_tok.pos)

    def plain_run(self, where, closers):
        items = []
        while True:
            if self.at("("):
                self.fail(f"optional parentheses cannot be nested inside {where}", cls=NestedParensError)
            if not self._starts_plain():
                break
            items.append(self.plain())
        if not items:
            self.fail(f"empty {where}")
        if not any(self.at(c) for c in closers):
            self.fail(f"expected {' or '.join(repr(c) for c in closers)} in {where}")
        return items

    def plain(self):
        tok = self.take()
        if tok.kind == "STRING":
            return Lit(tok.value, pos=tok.pos)
        if tok.kind == "IDENT":
            return Name(tok.value, pos=tok.pos)
        if tok.kind == "SPACE":
            return Space(pos=tok.pos)
        # "[" alternatives
        alternatives = [tuple(self.plain_run("alternatives", closers=("|", "]")))]
        while self.at("|"):
            self.take()
            alternatives.append(tuple(self.plain_run("alternatives", closers=("|", "]"))))
        self.take()  # "]"
        return Alt(tuple(alternatives), pos=tok.pos)


def parse_htrsl(source: str) -> HtrslFile:
    return _Parser(tokenize(source)).file()


def parse_desc(source: str) -> Desc:
    """Parse a single specification (no ``;`` separators)."""
    f = parse_htrsl(source)
    if len(f.specs) != 1:
        raise HtrslSyntaxError(f"expected exactly one specification, found {len(f.specs)}")
    return f.specs[0]
