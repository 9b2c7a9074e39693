"""Match ECMAScript (2018, no flags) regular expressions from Python.

Patterns are rewritten into the dialect of the third-party :mod:`regex`
package, which supports variable-length lookbehind and conditionals.  The
rewrite pins down the places where Python and JavaScript disagree:

* ``\\s``, ``\\d``, ``\\w`` and ``\\b`` use the JavaScript character sets;
* ``.`` excludes all four JavaScript line terminators;
* ``$`` only matches at the very end of the input;
* ``\\k<name>`` and ``\\1`` match the empty string when the group has not
  participated (Python would fail the match instead);
* ``[]`` never matches and ``[^]`` matches any character.

Known remaining difference: captures inside a repeated group are not reset at
each iteration as they are in JavaScript.
"""

from __future__ import annotations

from functools import lru_cache

import regex

from .errors import ExamForgeError

JS_SPACE = r"\t\n\x0b\x0c\r\x20\xa0\u1680\u2000-\u200a\u2028\u2029\u202f\u205f\u3000\ufeff"
JS_DIGIT = "0-9"
JS_WORD = "A-Za-z0-9_"
LINE_TERMINATORS = r"\n\r\u2028\u2029"
WORD_BOUNDARY = rf"(?:(?<=[{JS_WORD}])(?![{JS_WORD}])|(?<![{JS_WORD}])(?=[{JS_WORD}]))"
NOT_WORD_BOUNDARY = rf"(?:(?<=[{JS_WORD}])(?=[{JS_WORD}])|(?<![{JS_WORD}])(?![{JS_WORD}]))"
SHORTHAND = {"d": JS_DIGIT, "w": JS_WORD, "s": JS_SPACE}
CONTROL_ESCAPES = {"t": r"\t", "n": r"\n", "v": r"\x0b", "f": r"\x0c", "r": r"\r"}
_HEX = set("0123456789abcdefABCDEF")
_QUANT = regex.compile(r"\{\d+(?:,\d*)?\}")
DEFAULT_TIMEOUT = 2.0


class EcmaRegexError(ExamForgeError):
    def __init__(self, message: str, pattern: str):
        self.pattern = pattern
        super().__init__(f"{message} in pattern {pattern!r}")


def _char(ch: str) -> str:
    """A single literal character in the target dialect."""
    if ch.isalnum() or ch == "_":
        return ch
    if ch in "\n\r\t":
        return {"\n": r"\n", "\r": r"\r", "\t": r"\t"}[ch]
    return "\\" + ch


class _Translator:
    def __init__(self, pattern: str):
        self.p = pattern
        self.i = 0
        self.group_names: set[str] = set()
        self.group_count = 0
        self._scan_groups()

    def error(self, message):
        raise EcmaRegexError(message, self.p)

    def _scan_groups(self):
        p, i, in_class = self.p, 0, False
        while i < len(p):
            c = p[i]
            if c == "\\":
                i += 2
                continue
            if in_class:
                in_class = c != "]"
            elif c == "[":
                in_class = True
            elif c == "(":
                if p.startswith("(?<", i) and not p.startswith(("(?<=", "(?<!"), i):
                    end = p.find(">", i)
                    if end > 0:
                        self.group_names.add(p[i + 3 : end])
                    self.group_count += 1
                elif not p.startswith("(?", i):
                    self.group_count += 1
            i += 1

    # -- escapes shared by both contexts ----------------------------------

    def _common_escape(self, c: str) -> str | None:
        p = self.p
        if c in CONTROL_ESCAPES:
            self.i += 1
            return CONTROL_ESCAPES[c]
        if c == "c" and self.i + 1 < len(p) and p[self.i + 1].isascii() and p[self.i + 1].isalpha():
            code = ord(p[self.i + 1]) % 32
            self.i += 2
            return f"\\x{code:02x}"
        if c == "x" and all(ch in _HEX for ch in p[self.i + 1 : self.i + 3]) and self.i + 3 <= len(p):
            out = "\\x" + p[self.i + 1 : self.i + 3]
            self.i += 3
            return out
        if c == "u" and self.i + 5 <= len(p) and all(ch in _HEX for ch in p[self.i + 1 : self.i + 5]):
            out = "\\u" + p[self.i + 1 : self.i + 5]
            self.i += 5
            return out
        if c == "0" and not (self.i + 1 < len(p) and p[self.i + 1].isdigit()):
            self.i += 1
            return r"\x00"
        return None

    # -- outside character classes ------------------------------------------

    def escape(self) -> str:
        self.i += 1  # backslash
        if self.i >= len(self.p):
            self.error("pattern ends with a backslash")
        c = self.p[self.i]
        if c in SHORTHAND:
            self.i += 1
            return f"[{SHORTHAND[c]}]"
        if c.lower() in SHORTHAND:
            self.i += 1
            return f"[^{SHORTHAND[c.lower()]}]"
        if c == "b":
            self.i += 1
            return WORD_BOUNDARY
        if c == "B":
            self.i += 1
            return NOT_WORD_BOUNDARY
        if c == "k" and self.group_names:
            end = self.p.find(">", self.i)
            if not self.p.startswith("k<", self.i) or end < 0:
                self.error("malformed \\k escape")
            name = self.p[self.i + 2 : end]
            if name not in self.group_names:
                self.error(f"reference to unknown group {name!r}")
            self.i = end + 1
            return f"(?({name})(?P={name})|)"
        if c in "123456789":
            j = self.i
            while j < len(self.p) and self.p[j].isdigit():
                j += 1
            num = int(self.p[self.i : j])
            if num > self.group_count:
                self.error(f"back-reference \\{num} to a missing group")
            self.i = j
            return f"(?({num})(?:\\{num})|)"
        common = self._common_escape(c)
        if common is not None:
            return common
        self.i += 1
        return _char(c)

    def translate(self) -> str:
        out = []
        p = self.p
        while self.i < len(p):
            c = p[self.i]
            if c == "\\":
                out.append(self.escape())
            elif c == "[":
                out.append(self.char_class())
            elif c == "(":
                out.append(self.group_open())
            elif c == ".":
                out.append(f"[^{LINE_TERMINATORS}]")
                self.i += 1
            elif c == "$":
                out.append(r"\Z")
                self.i += 1
            elif c == "^":
                out.append(r"\A")
                self.i += 1
            elif c == "{":
                m = _QUANT.match(p, self.i)
                if m:
                    out.append(m.group())
                    self.i = m.end()
                else:
                    out.append(r"\{")
                    self.i += 1
            elif c in "}]":
                out.append("\\" + c)
                self.i += 1
            elif c in ")|*+?":
                out.append(c)
                self.i += 1
            else:
                out.append(_char(c))
                self.i += 1
        return "".join(out)

    def group_open(self) -> str:
        p = self.p
        for prefix in ("(?:", "(?=", "(?!", "(?<=", "(?<!"):
            if p.startswith(prefix, self.i):
                self.i += len(prefix)
                return prefix
        if p.startswith("(?<", self.i):
            end = p.find(">", self.i)
            name = p[self.i + 3 : end] if end > 0 else ""
            if not name or not (name[0].isalpha() or name[0] in "_$") or not all(
                ch.isalnum() or ch in "_$" for ch in name
            ):
                self.error("invalid group name")
            if "$" in name:
                self.error("group names containing '$' are not supported")
            self.i = end + 1
            return f"(?P<{name}>"
        if p.startswith("(?", self.i):
            self.error("unsupported group syntax")
        self.i += 1
        return "("

    # -- character classes ----------------------------------------------------

    def _class_atom(self):
        """Return ('char', text) for a single code point or ('set', ranges, negated)."""
        p = self.p
        c = p[self.i]
        if c != "\\":
            self.i += 1
            return ("char", _char(c))
        self.i += 1
        if self.i >= len(p):
            self.error("pattern ends with a backslash")
        c = p[self.i]
        if c in SHORTHAND:
            self.i += 1
            return ("set", SHORTHAND[c], False)
        if c.lower() in SHORTHAND:
            self.i += 1
            return ("set", SHORTHAND[c.lower()], True)
        if c == "b":
            self.i += 1
            return ("char", r"\x08")
        common = self._common_escape(c)
        if common is not None:
            return ("char", common)
        self.i += 1
        return ("char", _char(c))

    def char_class(self) -> str:
        p = self.p
        self.i += 1
        negated = p.startswith("^", self.i)
        if negated:
            self.i += 1
        if p.startswith("]", self.i):
            self.i += 1
            return r"[\s\S]" if negated else "(?!)"
        positive: list[str] = []
        complements: list[str] = []
        while True:
            if self.i >= len(p):
                self.error("unterminated character class")
            if p[self.i] == "]":
                self.i += 1
                break
            atom = self._class_atom()
            if atom[0] == "char" and p.startswith("-", self.i) and not p.startswith("-]", self.i):
                save = self.i
                self.i += 1
                upper = self._class_atom()
                if upper[0] == "char":
                    lo, hi = _decode(atom[1]), _decode(upper[1])
                    if lo > hi:
                        self.error("range out of order in character class")
                    positive.append(f"{atom[1]}-{upper[1]}")
                    continue
                # "\d" after "-": the dash is literal
                self.i = save
            if atom[0] == "char":
                positive.append(atom[1])
            elif atom[2]:
                complements.append(atom[1])
            else:
                positive.append(atom[1])
        pos = "".join(positive)
        if not complements:
            return f"[^{pos}]" if negated and pos else (f"[{pos}]" if pos else ("[\\s\\S]" if negated else "(?!)"))
        if not negated:
            parts = ([f"[{pos}]"] if pos else []) + [f"[^{c}]" for c in complements]
            return "(?:" + "|".join(parts) + ")"
        # not in pos and inside every complemented shorthand's base set
        head = f"(?![{pos}])" if pos else ""
        looks = "".join(f"(?=[{c}])" for c in complements[1:])
        return f"(?:{head}{looks}[{complements[0]}])"


def _decode(piece: str) -> int:
    if len(piece) == 1:
        return ord(piece)
    if piece.startswith("\\x") or piece.startswith("\\u"):
        return int(piece[2:], 16)
    if piece in (r"\t", r"\n", r"\r"):
        return {"\\t": 9, "\\n": 10, "\\r": 13}[piece]
    return ord(piece[-1])


def translate(pattern: str) -> str:
    """Rewrite an ECMAScript pattern into an equivalent :mod:`regex` pattern."""
    return _Translator(pattern).translate()


class EcmaRegex:
    def __init__(self, pattern: str):
        self.pattern = pattern
        self.translated = translate(pattern)
        try:
            self._compiled = regex.compile(self.translated, regex.VERSION0)
        except regex.error as exc:
            raise EcmaRegexError(f"invalid regular expression ({exc})", pattern) from None

    def search(self, text: str, timeout: float | None = DEFAULT_TIMEOUT) -> bool:
        try:
            return self._compiled.search(text, timeout=timeout) is not None
        except TimeoutError:
            raise EcmaRegexError("matching timed out", self.pattern) from None

    def __repr__(self):
        return f"EcmaRegex({self.pattern!r})"


@lru_cache(maxsize=1024)
def compile(pattern: str) -> EcmaRegex:  # noqa: A001 - mirrors re.compile
    return EcmaRegex(pattern)


def search(pattern: str, text: str) -> bool:
    return compile(pattern).search(text)
