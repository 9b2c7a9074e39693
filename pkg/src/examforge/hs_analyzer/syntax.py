"""Syntax tree for the exam Haskell subset.

Infix expressions are kept as flat operand/operator chains; the analysis only
needs source order, not operator precedence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Pos = Optional[tuple]


def _pos():
    return field(default=None, compare=False, repr=False)


# -- patterns ------------------------------------------------------------------


@dataclass(frozen=True)
class PVar:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class PWildcard:
    pos: Pos = _pos()


@dataclass(frozen=True)
class PLit:
    value: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class PCon:
    name: str
    args: tuple = ()
    pos: Pos = _pos()


@dataclass(frozen=True)
class PCons:
    head: "Pattern"
    tail: "Pattern"
    pos: Pos = _pos()


@dataclass(frozen=True)
class PTuple:
    items: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class PList:
    items: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class PAs:
    name: str
    pattern: "Pattern"
    pos: Pos = _pos()


@dataclass(frozen=True)
class PParen:
    pattern: "Pattern"
    pos: Pos = _pos()


@dataclass(frozen=True)
class PLazy:
    pattern: "Pattern"
    pos: Pos = _pos()


Pattern = Union[PVar, PWildcard, PLit, PCon, PCons, PTuple, PList, PAs, PParen, PLazy]


# -- types -----------------------------------------------------------------------


@dataclass(frozen=True)
class TCon:
    name: str


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class TApp:
    fn: "Type"
    args: tuple


@dataclass(frozen=True)
class TFun:
    arg: "Type"
    result: "Type"


@dataclass(frozen=True)
class TList:
    item: "Type"


@dataclass(frozen=True)
class TTuple:
    items: tuple


@dataclass(frozen=True)
class TQualified:
    context: tuple
    body: "Type"


Type = Union[TCon, TVar, TApp, TFun, TList, TTuple, TQualified]


# -- expressions -------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Con:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Lit:
    value: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Op:
    """An operator in infix position, a section, or in parentheses."""

    name: str
    is_con: bool = False
    pos: Pos = _pos()


@dataclass(frozen=True)
class App:
    fn: "Expr"
    args: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class InfixChain:
    operands: tuple
    ops: tuple  # len(ops) == len(operands) - 1
    pos: Pos = _pos()


@dataclass(frozen=True)
class Neg:
    expr: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Paren:
    expr: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class TupleExp:
    items: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class ListExp:
    items: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class Range:
    start: "Expr"
    then: Optional["Expr"]
    end: Optional["Expr"]
    pos: Pos = _pos()


@dataclass(frozen=True)
class ListComp:
    expr: "Expr"
    quals: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class LeftSection:
    expr: "Expr"
    op: Op
    pos: Pos = _pos()


@dataclass(frozen=True)
class RightSection:
    op: Op
    expr: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Lambda:
    pats: tuple
    body: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Let:
    decls: tuple
    body: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class If:
    cond: "Expr"
    then: "Expr"
    orelse: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Case:
    scrutinee: "Expr"
    alts: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class Typed:
    expr: "Expr"
    type: Type
    pos: Pos = _pos()


@dataclass(frozen=True)
class Hole:
    """``_`` or ``x@p`` seen in expression position; only valid once the
    expression is reinterpreted as a pattern (generators, pattern guards)."""

    pattern: Pattern
    pos: Pos = _pos()


Expr = Union[
    Var, Con, Lit, Op, App, InfixChain, Neg, Paren, TupleExp, ListExp, Range, ListComp,
    LeftSection, RightSection, Lambda, Let, If, Case, Typed, Hole,
]


# -- qualifiers, right-hand sides, alternatives ------------------------------------------


@dataclass(frozen=True)
class Generator:
    pattern: Pattern
    expr: Expr


@dataclass(frozen=True)
class Guard:
    expr: Expr


@dataclass(frozen=True)
class LetQual:
    decls: tuple


Qualifier = Union[Generator, Guard, LetQual]


@dataclass(frozen=True)
class GuardedRhs:
    guards: tuple  # of Qualifier
    body: Expr


@dataclass(frozen=True)
class Rhs:
    """Either a plain body or a non-empty tuple of guarded alternatives."""

    body: Optional[Expr] = None
    guarded: tuple = ()

    @property
    def is_guarded(self) -> bool:
        return bool(self.guarded)


@dataclass(frozen=True)
class Alt:
    pattern: Pattern
    rhs: Rhs
    where: tuple = ()


# -- declarations --------------------------------------------------------------


@dataclass(frozen=True)
class Clause:
    name: str
    pats: tuple
    rhs: Rhs
    where: tuple = ()
    pos: Pos = _pos()


@dataclass(frozen=True)
class FunBind:
    name: str
    clauses: tuple
    pos: Pos = _pos()

    @property
    def arity(self) -> int:
        return len(self.clauses[0].pats)


@dataclass(frozen=True)
class PatBind:
    pattern: Pattern
    rhs: Rhs
    where: tuple = ()
    pos: Pos = _pos()


@dataclass(frozen=True)
class TypeSig:
    names: tuple
    type: Type
    pos: Pos = _pos()


@dataclass(frozen=True)
class Fixity:
    assoc: str
    precedence: Optional[int]
    ops: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class Constructor:
    name: str
    fields: tuple  # of Type


@dataclass(frozen=True)
class DataDecl:
    keyword: str  # "data" | "newtype"
    name: str
    params: tuple
    constructors: tuple
    deriving: tuple = ()
    pos: Pos = _pos()


@dataclass(frozen=True)
class TypeSynonym:
    name: str
    params: tuple
    type: Type
    pos: Pos = _pos()


@dataclass(frozen=True)
class Import:
    module: str
    pos: Pos = _pos()


Decl = Union[FunBind, PatBind, TypeSig, Fixity, DataDecl, TypeSynonym, Import]


@dataclass(frozen=True)
class SourceModule:
    declarations: tuple
    name: Optional[str] = None

    @property
    def bindings(self) -> list:
        return [d for d in self.declarations if isinstance(d, (FunBind, PatBind))]
