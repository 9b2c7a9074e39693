import random

import pytest

from examforge import ecma
from jsengine import js_test, needs_node

PATTERNS = [
    r"^\s*Bool\s*$",
    r"^a.c$",
    r"^\d+$",
    r"^\w+$",
    r"\bfoo\b",
    r"\Bfoo",
    r"^(?<x>[a-z]+)-\k<x>$",
    r"^(a)|b\1$",
    r"^(?:(?<n>x)|y)\k<n>z$",
    r"(?<=\$)\d+",
    r"(?<!-)\d{2,3}",
    r"^[^()]*$",
    r"^[\s\S]{3}$",
    r"^[]$",
    r"^[^]$",
    r"^[\d-z]+$",
    r"^[a-c\-]+$",
    r"^x{,2}$",
    r"^a{2}$",
    r"^é\x41$",
    r"^\t\n$",
    r"^[\S]+$",
    r"^[^\s]+$",
    r"^[^\Sa]+$",
    r"^\(\)\[\]\{\}$",
    r"^\/\-$",
    r"^a+?b*?$",
    r"^(?=.*\d)(?!.*x).+$",
    r"^(?:\((?=[^()]*\)))?\s*Num\s*(?:(?<=\([^()]*)\))?$",
    r"^.$",
    r"^\cJ$",
    r"^\0$",
]

TEXTS = [
    "",
    "Bool",
    "  Bool ",
    "abc",
    "a\nc",
    "a c",
    "123",
    "٣",
    "foo bar",
    "xfoo",
    "abc-abc",
    "abc-abd",
    "b",
    "bz",
    "xxz",
    "yz",
    "$42",
    "-123",
    "(x)",
    "é",
    "x﻿",
    "﻿",
    " ",
    "\x1c",
    "\u0085",
    "é\x41",
    "\t\n",
    "ab",
    "aab",
    "a1",
    "(Num)",
    "(Num",
    "Num)",
    " Num ",
    "\n",
    "\x00",
    "()[]{}",
    "/-",
    "x",
    "xx",
    "xxx",
    "aa",
    "-",
    "z9-",
    "abc-",
    "\r",
    "hello\n",
]


@needs_node
def test_translation_agrees_with_node():
    cases = [(p, t) for p in PATTERNS for t in TEXTS]
    expected = js_test(cases)
    mismatches = []
    for (p, t), want in zip(cases, expected):
        assert want in (True, False), (p, want)
        got = ecma.search(p, t)
        if got != want:
            mismatches.append((p, t, want, got))
    assert mismatches == []


@needs_node
def test_random_class_patterns_agree_with_node():
    rng = random.Random(3)
    atoms = ["a", "b", r"\d", r"\s", r"\w", r"\S", r"\D", r"\-", "x-z", r"\(", "]", r"\]"]
    patterns, cases = [], []
    for _ in range(80):
        inner = "".join(rng.choice(atoms) for _ in range(rng.randint(1, 3)))
        if inner.startswith("]"):
            inner = "a" + inner
        neg = "^" if rng.random() < 0.5 else ""
        p = f"^[{neg}{inner}]+$"
        patterns.append(p)
    texts = ["a", "b", "5", " ", "_", "-", "y", "(", "]", " ", "﻿", "Q", "٣"]
    cases = [(p, t) for p in patterns for t in texts]
    expected = js_test(cases)
    for (p, t), want in zip(cases, expected):
        assert ecma.search(p, t) == want, (p, t)


@pytest.mark.parametrize("bad", [r"(", r"a\\\\(", r"[a", r"^\k<nope>(?<a>x)$", r"(?P<x>a)", "\\", r"\2(a)"])
def test_invalid_patterns_raise(bad):
    with pytest.raises(ecma.EcmaRegexError):
        ecma.compile(bad)


def test_dollar_is_end_of_input_only():
    assert not ecma.search(r"^a$", "a\n")
    assert ecma.search(r"^a\s*$", "a\n")


def test_unset_backreference_matches_empty():
    assert ecma.search(r"^(?:(?<n>x)|y)\k<n>z$", "yz")
