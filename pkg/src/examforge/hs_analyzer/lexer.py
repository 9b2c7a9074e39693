"""Tokenizer for the exam Haskell subset.

Tokens remember their line, column, and whether they are the first token on
their line; the parser uses that to implement the layout rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import SourceError


class HsParseError(SourceError):
    pass


class OutsideSubsetError(HsParseError):
    """Valid Haskell that the exam subset does not cover."""

    def __init__(self, message, line=None, col=None):
        super().__init__(f"outside subset: {message}", line, col)


KEYWORDS = {
    "case", "class", "data", "default", "deriving", "do", "else", "foreign", "if", "import",
    "in", "infix", "infixl", "infixr", "instance", "let", "module", "newtype", "of", "then",
    "type", "where", "_",
}
RESERVED_OPS = {"..", "::", "=", "\\", "|", "<-", "->", "@", "~", "=>"}
SYMBOL_CHARS = set("!#$%&*+./<=>?@\\^|-~:")
SPECIAL = set("(),;[]`{}")
TAB_STOP = 8

_QUALIFIED = re.compile(r"(?:[A-Z][A-Za-z0-9_']*\.)+(?:[a-z_][A-Za-z0-9_']*|[A-Z][A-Za-z0-9_']*)")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_FLOAT = re.compile(r"[0-9]+(?:\.[0-9]+(?:[eE][+-]?[0-9]+)?|[eE][+-]?[0-9]+)")
_INT = re.compile(r"0[xX][0-9a-fA-F]+|0[oO][0-7]+|[0-9]+")
_CHAR_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "\\": "\\", "'": "'", '"': '"', "0": "\0", "a": "\a", "b": "\b", "f": "\f", "v": "\v"}


@dataclass(frozen=True)
class Token:
    kind: str  # VARID CONID VARSYM CONSYM INT FLOAT CHAR STRING KEYWORD RESERVED SPECIAL EOF
    value: str
    line: int
    col: int
    bol: bool = False

    def is_(self, kind, value=None) -> bool:
        return self.kind == kind and (value is None or self.value == value)

    def __str__(self):
        return self.value if self.kind != "EOF" else "end of input"


def _column_advance(col: int, ch: str) -> int:
    if ch == "\t":
        return col + TAB_STOP - (col - 1) % TAB_STOP
    return col + 1


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)
    line_has_token = False

    def advance(k):
        nonlocal i, line, col, line_has_token
        for ch in source[i : i + k]:
            if ch == "\n":
                line += 1
                col = 1
                line_has_token = False
            else:
                col = _column_advance(col, ch)
        i += k

    def emit(kind, value, length, start_line, start_col):
        nonlocal line_has_token
        tokens.append(Token(kind, value, start_line, start_col, not line_has_token))
        line_has_token = True
        advance(length)

    while i < n:
        ch = source[i]
        if ch in " \t\r\n\f\v":
            advance(1)
            continue
        if source.startswith("{-", i):
            depth, j = 1, i + 2
            while depth and j < n:
                if source.startswith("{-", j):
                    depth, j = depth + 1, j + 2
                elif source.startswith("-}", j):
                    depth, j = depth - 1, j + 2
                else:
                    j += 1
            if depth:
                raise HsParseError("unterminated block comment", line, col)
            advance(j - i)
            continue
        if source.startswith("--", i):
            j = i
            while j < n and source[j] == "-":
                j += 1
            if j >= n or source[j] not in SYMBOL_CHARS:
                end = source.find("\n", i)
                advance((n if end < 0 else end) - i)
                continue
        start_line, start_col = line, col
        if ch in SPECIAL:
            emit("SPECIAL", ch, 1, start_line, start_col)
            continue
        if ch == '"':
            value, length = _read_string(source, i, start_line, start_col)
            emit("STRING", value, length, start_line, start_col)
            continue
        if ch == "'":
            value, length = _read_char(source, i, start_line, start_col)
            emit("CHAR", value, length, start_line, start_col)
            continue
        if ch.isdigit():
            m = _FLOAT.match(source, i)
            if m:
                emit("FLOAT", m.group(), m.end() - i, start_line, start_col)
            else:
                m = _INT.match(source, i)
                emit("INT", m.group(), m.end() - i, start_line, start_col)
            continue
        if ch.isalpha() or ch == "_":
            m = _QUALIFIED.match(source, i)
            if m:
                text = m.group()
                kind = "CONID" if text.rsplit(".", 1)[1][0].isupper() else "VARID"
                emit(kind, text, len(text), start_line, start_col)
                continue
            text = _IDENT.match(source, i).group()
            if text in KEYWORDS:
                kind = "KEYWORD"
            elif text[0].isupper():
                kind = "CONID"
            else:
                kind = "VARID"
            emit(kind, text, len(text), start_line, start_col)
            continue
        if ch in SYMBOL_CHARS:
            j = i
            while j < n and source[j] in SYMBOL_CHARS:
                j += 1
            text = source[i:j]
            if text in RESERVED_OPS:
                kind = "RESERVED"
            elif text[0] == ":":
                kind = "CONSYM"
            else:
                kind = "VARSYM"
            emit(kind, text, j - i, start_line, start_col)
            continue
        raise HsParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col, True))
    return tokens


def _read_escape(source, j, line, col):
    nxt = source[j + 1] if j + 1 < len(source) else ""
    if nxt in _CHAR_ESCAPES:
        return _CHAR_ESCAPES[nxt], 2
    m = re.match(r"\\([0-9]+)", source[j:])
    if m:
        return chr(int(m.group(1))), len(m.group())
    raise HsParseError(f"unsupported escape \\{nxt}", line, col)


def _read_string(source, i, line, col):
    out, j = [], i + 1
    while True:
        if j >= len(source) or source[j] == "\n":
            raise HsParseError("unterminated string literal", line, col)
        c = source[j]
        if c == '"':
            return "".join(out), j + 1 - i
        if c == "\\":
            if source.startswith("\\&", j):
                j += 2
                continue
            value, k = _read_escape(source, j, line, col)
            out.append(value)
            j += k
        else:
            out.append(c)
            j += 1


def _read_char(source, i, line, col):
    j = i + 1
    if j < len(source) and source[j] == "\\":
        value, k = _read_escape(source, j, line, col)
        j += k
    elif j < len(source) and source[j] not in "'\n":
        value = source[j]
        j += 1
    else:
        raise HsParseError("malformed character literal", line, col)
    if j >= len(source) or source[j] != "'":
        raise HsParseError("unterminated character literal", line, col)
    return value, j + 1 - i
