"""Syntax tree for regex specification files."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class Lit:
    text: str
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Name:
    ident: str
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Space:
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Alt:
    alternatives: tuple[tuple["PlainItem", ...], ...]
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class OptParens:
    body: tuple["PlainItem", ...]
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


# items allowed inside alternatives and optional parentheses
PlainItem = Union[Lit, Name, Space, Alt]
DescItem = Union[Lit, Name, Space, Alt, OptParens]


@dataclass(frozen=True)
class Desc:
    items: tuple[DescItem, ...]


@dataclass(frozen=True)
class HtrslFile:
    specs: tuple[Desc, ...]
