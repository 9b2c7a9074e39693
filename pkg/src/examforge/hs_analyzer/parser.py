"""Recursive-descent parser for the exam Haskell subset.

Layout is resolved inside the parser rather than by inserting virtual braces:
every implicit block pushes its column, and a token that starts a line at or
left of the innermost column ends whatever construct is being parsed.
Explicit braces and bracketed expressions push column 0, which disables that
check until they close.
"""

from __future__ import annotations

from . import syntax as S
from .lexer import HsParseError, OutsideSubsetError, Token, tokenize

_ITEM_STOPPERS = {
    ("KEYWORD", "then"), ("KEYWORD", "else"), ("KEYWORD", "of"), ("KEYWORD", "in"),
    ("KEYWORD", "where"), ("SPECIAL", ")"), ("SPECIAL", "]"), ("SPECIAL", ","),
    ("SPECIAL", "}"), ("RESERVED", "="), ("RESERVED", "|"), ("RESERVED", "->"),
    ("RESERVED", "::"), ("RESERVED", "=>"), ("RESERVED", "<-"), ("RESERVED", ".."),
}
_LITERALS = {"INT", "FLOAT", "CHAR", "STRING"}


def _literal_value(tok: Token):
    if tok.kind == "INT":
        return int(tok.value, 0) if tok.value[:2].lower() in ("0x", "0o") else int(tok.value)
    if tok.kind == "FLOAT":
        return float(tok.value)
    return tok.value


class _Parser:
    def __init__(self, source: str):
        self.toks = tokenize(source)
        self.i = 0
        self.layout = [0]
        self.item_start = -1  # the first token of a block item is never a layout stop

    # -- token access ----------------------------------------------------------

    def raw(self) -> Token:
        return self.toks[self.i]

    def peek(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != "EOF" and tok.bol and tok.col <= self.layout[-1] and self.i != self.item_start:
            return Token("STOP", "", tok.line, tok.col)
        return tok

    def peek_at(self, k: int) -> Token:
        j = min(self.i + k, len(self.toks) - 1)
        tok = self.toks[j]
        if tok.kind != "EOF" and tok.bol and tok.col <= self.layout[-1] and j != self.item_start:
            return Token("STOP", "", tok.line, tok.col)
        return tok

    def at(self, kind, value=None) -> bool:
        return self.peek().is_(kind, value)

    def advance(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, kind, value=None):
        if self.at(kind, value):
            return self.advance()
        return None

    def expect(self, kind, value=None, what=None) -> Token:
        if self.at(kind, value):
            return self.advance()
        self.fail(f"expected {what or value or kind}")

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "EOF" else ("end of layout block" if tok.kind == "STOP" else repr(tok.value))
        raise HsParseError(f"{message}, found {found}", tok.line, tok.col)

    def outside(self, what, tok=None):
        tok = tok or self.raw()
        raise OutsideSubsetError(what, tok.line, tok.col)

    @staticmethod
    def pos(tok):
        return (tok.line, tok.col)

    # -- blocks ------------------------------------------------------------------

    def block(self, item):
        tok = self.raw()
        if tok.is_("SPECIAL", "{"):
            self.advance()
            self.layout.append(0)
            items = []
            while True:
                while self.raw().is_("SPECIAL", ";"):
                    self.advance()
                if self.raw().is_("SPECIAL", "}"):
                    self.advance()
                    break
                items.append(self._item(item))
                t = self.raw()
                if t.is_("SPECIAL", ";"):
                    continue
                if t.is_("SPECIAL", "}"):
                    self.advance()
                    break
                self.fail("expected ';' or '}'", t)
            self.layout.pop()
            return items
        if tok.kind == "EOF" or (tok.bol and tok.col <= self.layout[-1]) or self._stops(tok):
            return []
        col = tok.col
        self.layout.append(col)
        items = [self._item(item)]
        while True:
            t = self.raw()
            if t.is_("SPECIAL", ";"):
                self.advance()
                t = self.raw()
                if t.kind == "EOF" or self._stops(t) or (t.bol and t.col < col):
                    break
                items.append(self._item(item))
            elif t.kind != "EOF" and t.bol and t.col == col:
                items.append(self._item(item))
            else:
                break
        self.layout.pop()
        return items

    def _item(self, item):
        self.item_start = self.i
        return item()

    @staticmethod
    def _stops(tok) -> bool:
        return (tok.kind, tok.value) in _ITEM_STOPPERS

    # -- module ------------------------------------------------------------------

    def module(self) -> S.SourceModule:
        name = None
        if self.raw().is_("KEYWORD", "module"):
            self.advance()
            name = self.expect("CONID", what="module name").value
            if self.at("SPECIAL", "("):
                self.skip_balanced()
            self.expect("KEYWORD", "where")
        decls = self.block(self.top_decl)
        if self.raw().kind != "EOF":
            self.fail("unexpected token", self.raw())
        return S.SourceModule(tuple(_group_clauses(decls)), name)

    def skip_balanced(self):
        depth = 0
        while True:
            tok = self.advance()
            if tok.kind == "EOF":
                self.fail("unbalanced parentheses", tok)
            if tok.is_("SPECIAL", "("):
                depth += 1
            elif tok.is_("SPECIAL", ")"):
                depth -= 1
                if depth == 0:
                    return

    # -- declarations --------------------------------------------------------------

    def top_decl(self):
        tok = self.peek()
        if tok.kind == "KEYWORD":
            if tok.value == "import":
                return self.import_decl()
            if tok.value in ("data", "newtype"):
                return self.data_decl()
            if tok.value == "type":
                return self.type_synonym()
            if tok.value in ("class", "instance"):
                self.outside(f"{tok.value} declarations", tok)
            if tok.value in ("default", "foreign", "deriving"):
                self.outside(f"'{tok.value}' declarations", tok)
        return self.decl()

    def import_decl(self):
        start = self.advance()
        parts = []
        while self.peek().kind not in ("STOP", "EOF") and not self.at("SPECIAL", ";"):
            tok = self.advance()
            if tok.is_("VARID", "hiding"):
                self.outside("import hiding lists", tok)
            parts.append(tok)
        module = next((t.value for t in parts if t.kind == "CONID"), None)
        if module is None:
            self.fail("expected module name", start)
        return S.Import(module, pos=self.pos(start))

    def data_decl(self):
        start = self.advance()
        if self.at("VARID") or self.at("SPECIAL", "("):
            self.outside("datatype contexts")
        name = self.expect("CONID", what="type name").value
        params = []
        while self.at("VARID"):
            params.append(self.advance().value)
        if self.at("KEYWORD", "where"):
            self.outside("GADT syntax")
        constructors = []
        if self.accept("RESERVED", "="):
            constructors.append(self.constructor())
            while self.accept("RESERVED", "|"):
                constructors.append(self.constructor())
        deriving = []
        if self.accept("KEYWORD", "deriving"):
            if self.accept("SPECIAL", "("):
                if not self.at("SPECIAL", ")"):
                    deriving.append(self.expect("CONID", what="class name").value)
                    while self.accept("SPECIAL", ","):
                        deriving.append(self.expect("CONID", what="class name").value)
                self.expect("SPECIAL", ")")
            else:
                deriving.append(self.expect("CONID", what="class name").value)
        return S.DataDecl(start.value, name, tuple(params), tuple(constructors), tuple(deriving), pos=self.pos(start))

    def constructor(self):
        if self.at("SPECIAL", "("):
            # infix constructor in prefix form, e.g. (:+:) a b
            self.advance()
            name = self.expect("CONSYM", what="constructor").value
            self.expect("SPECIAL", ")")
        else:
            name = self.expect("CONID", what="constructor").value
        if self.at("SPECIAL", "{"):
            self.outside("record syntax")
        fields = []
        while True:
            self.accept("VARSYM", "!")
            t = self.atype(optional=True)
            if t is None:
                break
            fields.append(t)
        if self.at("CONSYM") or self.at("SPECIAL", "`"):
            self.outside("infix constructor declarations")
        return S.Constructor(name, tuple(fields))

    def type_synonym(self):
        start = self.advance()
        name = self.expect("CONID", what="type name").value
        params = []
        while self.at("VARID"):
            params.append(self.advance().value)
        self.expect("RESERVED", "=")
        return S.TypeSynonym(name, tuple(params), self.type_(), pos=self.pos(start))

    def decl(self):
        tok = self.peek()
        if tok.kind == "KEYWORD" and tok.value in ("infix", "infixl", "infixr"):
            return self.fixity()
        if self._looks_like_signature():
            return self.signature()
        lhs = self.infix_exp()
        if not (self.at("RESERVED", "=") or self.at("RESERVED", "|")):
            self.fail("expected '=' or '|' in binding")
        rhs = self.rhs("=")
        where = ()
        if self.accept("KEYWORD", "where"):
            where = tuple(_group_clauses(self.block(self.decl)))
        return _make_binding(lhs, rhs, where, self.pos(tok))

    def _looks_like_signature(self) -> bool:
        k = 0
        while True:
            t = self.peek_at(k)
            if t.kind == "VARID":
                k += 1
            elif t.is_("SPECIAL", "(") and self.peek_at(k + 1).kind in ("VARSYM", "CONSYM") and self.peek_at(k + 2).is_("SPECIAL", ")"):
                k += 3
            else:
                return False
            t = self.peek_at(k)
            if t.is_("RESERVED", "::"):
                return True
            if not t.is_("SPECIAL", ","):
                return False
            k += 1

    def signature(self):
        start = self.peek()
        names = []
        while True:
            if self.accept("SPECIAL", "("):
                names.append(self.advance().value)
                self.expect("SPECIAL", ")")
            else:
                names.append(self.expect("VARID").value)
            if not self.accept("SPECIAL", ","):
                break
        self.expect("RESERVED", "::")
        return S.TypeSig(tuple(names), self.type_(), pos=self.pos(start))

    def fixity(self):
        start = self.advance()
        prec = None
        if self.at("INT"):
            prec = int(self.advance().value)
        ops = [self.operator_name()]
        while self.accept("SPECIAL", ","):
            ops.append(self.operator_name())
        return S.Fixity(start.value, prec, tuple(ops), pos=self.pos(start))

    def operator_name(self) -> str:
        if self.accept("SPECIAL", "`"):
            name = self.advance().value
            self.expect("SPECIAL", "`")
            return name
        if self.at("VARSYM") or self.at("CONSYM"):
            return self.advance().value
        self.fail("expected operator")

    # -- right-hand sides ------------------------------------------------------------

    def rhs(self, eq: str) -> S.Rhs:
        if self.accept("RESERVED", eq):
            return S.Rhs(body=self.exp())
        if not self.at("RESERVED", "|"):
            self.fail(f"expected '{eq}' or '|'")
        if self.peek_at(1).is_("RESERVED", "|"):
            self.fail("empty guard")
        alts = []
        while self.accept("RESERVED", "|"):
            quals = [self.qualifier()]
            while self.accept("SPECIAL", ","):
                quals.append(self.qualifier())
            self.expect("RESERVED", eq)
            alts.append(S.GuardedRhs(tuple(quals), self.exp()))
        return S.Rhs(guarded=tuple(alts))

    def qualifier(self):
        if self.at("KEYWORD", "let"):
            start = self.advance()
            decls = tuple(_group_clauses(self.block(self.decl)))
            if self.accept("KEYWORD", "in"):
                return S.Guard(S.Let(decls, self.exp(), pos=self.pos(start)))
            return S.LetQual(decls)
        e = self.exp()
        if self.accept("RESERVED", "<-"):
            return S.Generator(to_pattern(e), self.exp())
        return S.Guard(e)

    # -- types ------------------------------------------------------------------

    def type_(self):
        t = self.btype()
        if self.accept("RESERVED", "=>"):
            ctx = t.items if isinstance(t, S.TTuple) else (t,)
            return S.TQualified(ctx, self.type_())
        if self.accept("RESERVED", "->"):
            return S.TFun(t, self.type_())
        return t

    def btype(self):
        head = self.atype()
        args = []
        while True:
            t = self.atype(optional=True)
            if t is None:
                break
            args.append(t)
        return S.TApp(head, tuple(args)) if args else head

    def atype(self, optional=False):
        tok = self.peek()
        if tok.kind == "CONID":
            self.advance()
            return S.TCon(tok.value)
        if tok.kind == "VARID":
            self.advance()
            return S.TVar(tok.value)
        if tok.is_("SPECIAL", "["):
            self.advance()
            self.layout.append(0)
            if self.accept("SPECIAL", "]"):
                self.layout.pop()
                return S.TCon("[]")
            item = self.type_()
            self.expect("SPECIAL", "]")
            self.layout.pop()
            return S.TList(item)
        if tok.is_("SPECIAL", "("):
            self.advance()
            self.layout.append(0)
            if self.accept("SPECIAL", ")"):
                self.layout.pop()
                return S.TCon("()")
            if self.at("RESERVED", "->") and self.peek_at(1).is_("SPECIAL", ")"):
                self.advance()
                self.advance()
                self.layout.pop()
                return S.TCon("->")
            items = [self.type_()]
            while self.accept("SPECIAL", ","):
                items.append(self.type_())
            self.expect("SPECIAL", ")")
            self.layout.pop()
            return items[0] if len(items) == 1 else S.TTuple(tuple(items))
        if tok.is_("KEYWORD", "forall") or tok.is_("VARID", "forall"):
            self.outside("explicit forall", tok)
        if optional:
            return None
        self.fail("expected a type")

    # -- expressions ------------------------------------------------------------------

    def exp(self):
        start = self.peek()
        e = self.infix_exp()
        if self.accept("RESERVED", "::"):
            return S.Typed(e, self.type_(), pos=self.pos(start))
        return e

    def infix_exp(self, section=False):
        """Parse operands joined by operators.

        With ``section`` set, an operator directly followed by ``)`` ends the
        chain and the result is ``(expr, op)`` for a left section.
        """
        start = self.peek()
        operands = [self.operand()]
        ops = []
        while True:
            op = self.try_operator()
            if op is None:
                break
            if section and self.at("SPECIAL", ")"):
                expr = operands[0] if len(operands) == 1 else S.InfixChain(tuple(operands), tuple(ops), pos=self.pos(start))
                return expr, op
            ops.append(op)
            operands.append(self.operand())
        expr = operands[0] if len(operands) == 1 else S.InfixChain(tuple(operands), tuple(ops), pos=self.pos(start))
        return (expr, None) if section else expr

    def try_operator(self):
        tok = self.peek()
        if tok.kind == "VARSYM":
            self.advance()
            return S.Op(tok.value, False, pos=self.pos(tok))
        if tok.kind == "CONSYM":
            self.advance()
            return S.Op(tok.value, True, pos=self.pos(tok))
        if tok.is_("SPECIAL", "`"):
            self.advance()
            name = self.peek()
            if name.kind not in ("VARID", "CONID"):
                self.fail("expected identifier in backticks")
            self.advance()
            self.expect("SPECIAL", "`")
            return S.Op(name.value, name.kind == "CONID", pos=self.pos(name))
        return None

    def operand(self):
        tok = self.peek()
        if tok.is_("VARSYM", "-"):
            self.advance()
            return S.Neg(self.operand(), pos=self.pos(tok))
        if tok.kind == "RESERVED" and tok.value == "\\":
            self.advance()
            if self.at("KEYWORD", "case"):
                self.outside("lambda-case", tok)
            pats = []
            while not self.at("RESERVED", "->"):
                a = self.aexp()
                if a is None:
                    self.fail("expected lambda parameter or '->'")
                pats.append(to_pattern(a))
            if not pats:
                self.fail("lambda without parameters")
            self.expect("RESERVED", "->")
            return S.Lambda(tuple(pats), self.exp(), pos=self.pos(tok))
        if tok.kind == "KEYWORD":
            if tok.value == "let":
                self.advance()
                decls = tuple(_group_clauses(self.block(self.decl)))
                self.expect("KEYWORD", "in")
                return S.Let(decls, self.exp(), pos=self.pos(tok))
            if tok.value == "if":
                self.advance()
                if self.at("RESERVED", "|"):
                    self.outside("multi-way if", tok)
                cond = self.exp()
                self.accept("SPECIAL", ";")
                self.expect("KEYWORD", "then")
                then = self.exp()
                self.accept("SPECIAL", ";")
                self.expect("KEYWORD", "else")
                return S.If(cond, then, self.exp(), pos=self.pos(tok))
            if tok.value == "case":
                self.advance()
                scrut = self.exp()
                self.expect("KEYWORD", "of")
                alts = self.block(self.alternative)
                return S.Case(scrut, tuple(alts), pos=self.pos(tok))
            if tok.value == "do":
                self.outside("do-notation", tok)
        return self.fexp()

    def alternative(self):
        pat = to_pattern(self.infix_exp())
        rhs = self.rhs("->")
        where = ()
        if self.accept("KEYWORD", "where"):
            where = tuple(_group_clauses(self.block(self.decl)))
        return S.Alt(pat, rhs, where)

    def fexp(self):
        start = self.peek()
        head = self.aexp()
        if head is None:
            self.fail("expected an expression")
        args = []
        while True:
            a = self.aexp()
            if a is None:
                break
            args.append(a)
        return S.App(head, tuple(args), pos=self.pos(start)) if args else head

    def aexp(self):
        tok = self.peek()
        kind = tok.kind
        if kind == "VARID":
            self.advance()
            if self.raw().is_("RESERVED", "@"):
                self.advance()
                inner = self.aexp()
                if inner is None:
                    self.fail("expected pattern after '@'")
                return S.Hole(S.PAs(tok.value, to_pattern(inner), pos=self.pos(tok)), pos=self.pos(tok))
            return S.Var(tok.value, pos=self.pos(tok))
        if kind == "CONID":
            self.advance()
            if self.raw().is_("SPECIAL", "{") and not self.raw().bol:
                self.outside("record syntax", self.raw())
            return S.Con(tok.value, pos=self.pos(tok))
        if kind in _LITERALS:
            self.advance()
            return S.Lit(_literal_value(tok), pos=self.pos(tok))
        if tok.is_("KEYWORD", "_"):
            self.advance()
            return S.Hole(S.PWildcard(pos=self.pos(tok)), pos=self.pos(tok))
        if tok.is_("RESERVED", "~"):
            self.advance()
            inner = self.aexp()
            if inner is None:
                self.fail("expected pattern after '~'")
            return S.Hole(S.PLazy(to_pattern(inner), pos=self.pos(tok)), pos=self.pos(tok))
        if tok.is_("SPECIAL", "("):
            return self.paren_exp()
        if tok.is_("SPECIAL", "["):
            return self.bracket_exp()
        if tok.is_("KEYWORD", "do"):
            self.outside("do-notation", tok)
        return None

    def paren_exp(self):
        start = self.advance()
        p = self.pos(start)
        self.layout.append(0)
        try:
            if self.accept("SPECIAL", ")"):
                return S.Con("()", pos=p)
            if self.at("SPECIAL", ","):
                n = 1
                while self.accept("SPECIAL", ","):
                    n += 1
                self.expect("SPECIAL", ")")
                return S.Con("(" + "," * (n - 1) + ")", pos=p)
            # (op) and right sections
            tok = self.peek()
            is_op = tok.kind in ("VARSYM", "CONSYM") or tok.is_("SPECIAL", "`")
            if is_op:
                save = self.i
                op = self.try_operator()
                if self.accept("SPECIAL", ")"):
                    return op
                if op.name == "-" and not tok.is_("SPECIAL", "`"):
                    self.i = save  # (- x) is negation, not a section
                else:
                    e = self.exp()
                    self.expect("SPECIAL", ")")
                    return S.RightSection(op, e, pos=p)
            expr, op = self.infix_exp(section=True)
            if op is not None:
                self.expect("SPECIAL", ")")
                return S.LeftSection(expr, op, pos=p)
            if self.accept("RESERVED", "::"):
                expr = S.Typed(expr, self.type_(), pos=p)
            items = [expr]
            while self.accept("SPECIAL", ","):
                items.append(self.exp())
            self.expect("SPECIAL", ")")
            if len(items) > 1:
                return S.TupleExp(tuple(items), pos=p)
            return S.Paren(items[0], pos=p)
        finally:
            self.layout.pop()

    def bracket_exp(self):
        start = self.advance()
        p = self.pos(start)
        self.layout.append(0)
        try:
            if self.accept("SPECIAL", "]"):
                return S.Con("[]", pos=p)
            first = self.exp()
            if self.accept("RESERVED", ".."):
                end = None if self.at("SPECIAL", "]") else self.exp()
                self.expect("SPECIAL", "]")
                return S.Range(first, None, end, pos=p)
            if self.accept("RESERVED", "|"):
                quals = [self.qualifier()]
                while self.accept("SPECIAL", ","):
                    quals.append(self.qualifier())
                self.expect("SPECIAL", "]")
                return S.ListComp(first, tuple(quals), pos=p)
            items = [first]
            if self.accept("SPECIAL", ","):
                second = self.exp()
                if self.accept("RESERVED", ".."):
                    end = None if self.at("SPECIAL", "]") else self.exp()
                    self.expect("SPECIAL", "]")
                    return S.Range(first, second, end, pos=p)
                items.append(second)
                while self.accept("SPECIAL", ","):
                    items.append(self.exp())
            self.expect("SPECIAL", "]")
            return S.ListExp(tuple(items), pos=p)
        finally:
            self.layout.pop()


# -- expression to pattern -------------------------------------------------------------


def _err(message, node):
    pos = getattr(node, "pos", None) or (None, None)
    raise HsParseError(message, *pos)


def to_pattern(e) -> S.Pattern:
    """Reinterpret an expression parsed in pattern position."""
    if isinstance(e, S.Var):
        return S.PVar(e.name, pos=e.pos)
    if isinstance(e, S.Hole):
        return e.pattern
    if isinstance(e, S.Con):
        return S.PCon(e.name, (), pos=e.pos)
    if isinstance(e, S.Lit):
        return S.PLit(e.value, pos=e.pos)
    if isinstance(e, S.Neg) and isinstance(e.expr, S.Lit) and isinstance(e.expr.value, (int, float)):
        return S.PLit(-e.expr.value, pos=e.pos)
    if isinstance(e, S.App):
        if not isinstance(e.fn, S.Con):
            _err("invalid pattern: only constructors can be applied in patterns", e)
        return S.PCon(e.fn.name, tuple(to_pattern(a) for a in e.args), pos=e.pos)
    if isinstance(e, S.Paren):
        return S.PParen(to_pattern(e.expr), pos=e.pos)
    if isinstance(e, S.TupleExp):
        return S.PTuple(tuple(to_pattern(x) for x in e.items), pos=e.pos)
    if isinstance(e, S.ListExp):
        return S.PList(tuple(to_pattern(x) for x in e.items), pos=e.pos)
    if isinstance(e, S.InfixChain):
        for op in e.ops:
            if not op.is_con:
                _err(f"invalid pattern: operator {op.name!r} is not a constructor", op)
        if any(op.name != ":" for op in e.ops) and len(e.ops) > 1:
            _err("invalid pattern: mixed constructor operators need parentheses", e)
        pats = [to_pattern(x) for x in e.operands]
        if e.ops[0].name != ":":
            return S.PCon(e.ops[0].name, tuple(pats), pos=e.pos)
        out = pats[-1]
        for p in reversed(pats[:-1]):
            out = S.PCons(p, out, pos=e.pos)
        return out
    _err("invalid pattern", e)


def _make_binding(lhs, rhs, where, pos):
    if isinstance(lhs, S.Var):
        return S.PatBind(S.PVar(lhs.name, pos=lhs.pos), rhs, where, pos=pos)
    if isinstance(lhs, S.App) and isinstance(lhs.fn, (S.Var, S.Op)) and not getattr(lhs.fn, "is_con", False):
        clause = S.Clause(lhs.fn.name, tuple(to_pattern(a) for a in lhs.args), rhs, where, pos=pos)
        return S.FunBind(clause.name, (clause,), pos=pos)
    if isinstance(lhs, S.InfixChain) and len(lhs.ops) == 1 and not lhs.ops[0].is_con:
        pats = tuple(to_pattern(x) for x in lhs.operands)
        clause = S.Clause(lhs.ops[0].name, pats, rhs, where, pos=pos)
        return S.FunBind(clause.name, (clause,), pos=pos)
    return S.PatBind(to_pattern(lhs), rhs, where, pos=pos)


def _group_clauses(decls):
    out = []
    seen = set()
    for d in decls:
        if isinstance(d, S.FunBind):
            prev = out[-1] if out else None
            if isinstance(prev, S.FunBind) and prev.name == d.name:
                if len(d.clauses[0].pats) != prev.arity:
                    raise HsParseError(
                        f"clauses of {d.name!r} have different numbers of arguments", *(d.pos or (None, None))
                    )
                out[-1] = S.FunBind(prev.name, prev.clauses + d.clauses, pos=prev.pos)
                continue
            if d.name in seen:
                raise HsParseError(f"duplicate definition of {d.name!r}", *(d.pos or (None, None)))
            seen.add(d.name)
        elif isinstance(d, S.PatBind) and isinstance(d.pattern, S.PVar):
            if d.pattern.name in seen:
                raise HsParseError(f"duplicate definition of {d.pattern.name!r}", *(d.pos or (None, None)))
            seen.add(d.pattern.name)
        out.append(d)
    return out


def parse_subset(source: str) -> S.SourceModule:
    """Parse source text into a layout-resolved module."""
    return _Parser(source).module()
