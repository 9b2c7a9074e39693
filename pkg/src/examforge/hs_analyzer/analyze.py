"""Per-binding feature reports for parsed modules."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import syntax as S

FEATURES = ("patMatch", "guards", "listComprehension", "hasIf", "hasCase")


@dataclass
class FunctionReport:
    name: str
    patMatch: bool = False
    guards: bool = False
    listComprehension: bool = False
    hasIf: bool = False
    hasCase: bool = False
    args: list = field(default_factory=list)
    calledFns: list = field(default_factory=list)
    declaredFns: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "patMatch": self.patMatch,
            "guards": self.guards,
            "listComprehension": self.listComprehension,
            "hasIf": self.hasIf,
            "hasCase": self.hasCase,
            "args": list(self.args),
            "calledFns": list(self.calledFns),
            "declaredFns": list(self.declaredFns),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FunctionReport":
        return cls(
            name=d["name"],
            **{k: bool(d.get(k, False)) for k in FEATURES},
            args=list(d.get("args", [])),
            calledFns=list(d.get("calledFns", [])),
            declaredFns=list(d.get("declaredFns", [])),
        )

    def feature(self, name: str) -> bool:
        if name not in FEATURES:
            raise KeyError(name)
        return getattr(self, name)


@dataclass
class AnalysisReport:
    functions: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"functions": [f.to_dict() for f in self.functions]}

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls([FunctionReport.from_dict(f) for f in d.get("functions", [])])

    def get(self, name: str):
        return next((f for f in self.functions if f.name == name), None)


def emit_json(report: AnalysisReport) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"


# -- helpers -------------------------------------------------------------------------


class _Ordered:
    def __init__(self):
        self.items: list[str] = []
        self._seen: set[str] = set()

    def add(self, name: str):
        if name not in self._seen:
            self._seen.add(name)
            self.items.append(name)


def pattern_vars(p) -> list[str]:
    out: list[str] = []

    def go(p):
        if isinstance(p, S.PVar):
            out.append(p.name)
        elif isinstance(p, S.PAs):
            out.append(p.name)
            go(p.pattern)
        elif isinstance(p, S.PCon):
            for a in p.args:
                go(a)
        elif isinstance(p, S.PCons):
            go(p.head)
            go(p.tail)
        elif isinstance(p, (S.PTuple, S.PList)):
            for a in p.items:
                go(a)
        elif isinstance(p, (S.PParen, S.PLazy)):
            go(p.pattern)

    go(p)
    return out


def _is_plain_var(p) -> bool:
    while isinstance(p, S.PParen):
        p = p.pattern
    return isinstance(p, S.PVar)


def render_pattern(p) -> str:
    if isinstance(p, S.PVar):
        return p.name
    if isinstance(p, S.PWildcard):
        return "_"
    if isinstance(p, S.PLit):
        return json.dumps(p.value) if isinstance(p.value, str) else str(p.value)
    if isinstance(p, S.PCon):
        return " ".join([p.name] + [render_pattern(a) for a in p.args])
    if isinstance(p, S.PCons):
        return f"{render_pattern(p.head)}:{render_pattern(p.tail)}"
    if isinstance(p, S.PTuple):
        return "(" + ", ".join(render_pattern(a) for a in p.items) + ")"
    if isinstance(p, S.PList):
        return "[" + ", ".join(render_pattern(a) for a in p.items) + "]"
    if isinstance(p, S.PAs):
        return f"{p.name}@{render_pattern(p.pattern)}"
    if isinstance(p, S.PParen):
        return "(" + render_pattern(p.pattern) + ")"
    if isinstance(p, S.PLazy):
        return "~" + render_pattern(p.pattern)
    raise TypeError(p)


# -- the walk ------------------------------------------------------------------------------


class _BindingAnalyzer:
    """Collects the report of one top-level binding.

    A first pass gathers every name bound anywhere inside the binding; the
    second pass walks right-hand sides depth-first and records references to
    names outside that set.
    """

    def __init__(self, top_names: set[str]):
        self.top_names = top_names
        self.bound: set[str] = set()
        self.flags = dict.fromkeys(FEATURES, False)
        self.called = _Ordered()
        self.declared = _Ordered()

    # pass 1: binders ---------------------------------------------------------

    def bind_pattern(self, p):
        self.bound.update(pattern_vars(p))

    def bind_decls(self, decls):
        for d in decls:
            if isinstance(d, S.FunBind):
                self.bound.add(d.name)
                for c in d.clauses:
                    for p in c.pats:
                        self.bind_pattern(p)
                    self.bind_rhs(c.rhs)
                    self.bind_decls(c.where)
            elif isinstance(d, S.PatBind):
                self.bind_pattern(d.pattern)
                self.bind_rhs(d.rhs)
                self.bind_decls(d.where)

    def bind_rhs(self, rhs: S.Rhs):
        if rhs.body is not None:
            self.bind_expr(rhs.body)
        for g in rhs.guarded:
            self.bind_quals(g.guards)
            self.bind_expr(g.body)

    def bind_quals(self, quals):
        for q in quals:
            if isinstance(q, S.Generator):
                self.bind_pattern(q.pattern)
                self.bind_expr(q.expr)
            elif isinstance(q, S.Guard):
                self.bind_expr(q.expr)
            elif isinstance(q, S.LetQual):
                self.bind_decls(q.decls)

    def bind_expr(self, e):
        if isinstance(e, S.Lambda):
            for p in e.pats:
                self.bind_pattern(p)
            self.bind_expr(e.body)
        elif isinstance(e, S.Let):
            self.bind_decls(e.decls)
            self.bind_expr(e.body)
        elif isinstance(e, S.Case):
            self.bind_expr(e.scrutinee)
            for alt in e.alts:
                self.bind_pattern(alt.pattern)
                self.bind_rhs(alt.rhs)
                self.bind_decls(alt.where)
        elif isinstance(e, S.ListComp):
            self.bind_expr(e.expr)
            self.bind_quals(e.quals)
        else:
            for child in _expr_children(e):
                self.bind_expr(child)

    # pass 2: features and references -------------------------------------------

    def ref(self, name: str, in_arg: bool):
        if name in self.bound:
            return
        if in_arg and name not in self.top_names:
            return
        self.called.add(name)

    def walk_decls(self, decls):
        for d in decls:
            if isinstance(d, S.FunBind):
                if d.arity > 0:
                    self.declared.add(d.name)
                for c in d.clauses:
                    if not all(_is_plain_var(p) for p in c.pats):
                        self.flags["patMatch"] = True
                    self.walk_rhs(c.rhs)
                    self.walk_decls(c.where)
            elif isinstance(d, S.PatBind):
                if not _is_plain_var(d.pattern):
                    self.flags["patMatch"] = True
                self.walk_rhs(d.rhs)
                self.walk_decls(d.where)

    def walk_rhs(self, rhs: S.Rhs):
        if rhs.is_guarded:
            self.flags["guards"] = True
        if rhs.body is not None:
            self.walk(rhs.body, False)
        for g in rhs.guarded:
            self.walk_quals(g.guards)
            self.walk(g.body, False)

    def walk_quals(self, quals):
        for q in quals:
            if isinstance(q, S.Generator):
                self.walk(q.expr, False)
            elif isinstance(q, S.Guard):
                self.walk(q.expr, False)
            elif isinstance(q, S.LetQual):
                self.walk_decls(q.decls)

    def walk(self, e, in_arg: bool):
        if isinstance(e, S.Var):
            self.ref(e.name, in_arg)
        elif isinstance(e, S.Op):
            if not e.is_con:
                self.ref(e.name, False)
        elif isinstance(e, S.App):
            self.walk(e.fn, False)
            for a in e.args:
                self.walk(a, True)
        elif isinstance(e, S.InfixChain):
            self.walk(e.operands[0], True)
            for op, operand in zip(e.ops, e.operands[1:]):
                self.walk(op, False)
                self.walk(operand, True)
        elif isinstance(e, (S.Paren, S.Neg, S.Typed)):
            self.walk(e.expr, in_arg)
        elif isinstance(e, S.LeftSection):
            self.walk(e.expr, True)
            self.walk(e.op, False)
        elif isinstance(e, S.RightSection):
            self.walk(e.op, False)
            self.walk(e.expr, True)
        elif isinstance(e, S.ListComp):
            self.flags["listComprehension"] = True
            self.walk(e.expr, False)
            self.walk_quals(e.quals)
        elif isinstance(e, S.If):
            self.flags["hasIf"] = True
            for part in (e.cond, e.then, e.orelse):
                self.walk(part, False)
        elif isinstance(e, S.Case):
            self.flags["hasCase"] = True
            self.walk(e.scrutinee, False)
            for alt in e.alts:
                # alternative patterns are not left-hand sides: no patMatch
                self.walk_rhs(alt.rhs)
                self.walk_decls(alt.where)
        elif isinstance(e, S.Let):
            self.walk_decls(e.decls)
            self.walk(e.body, False)
        elif isinstance(e, S.Lambda):
            self.walk(e.body, False)
        else:
            for child in _expr_children(e):
                self.walk(child, False)


def _expr_children(e):
    if isinstance(e, (S.TupleExp, S.ListExp)):
        return e.items
    if isinstance(e, S.Range):
        return [x for x in (e.start, e.then, e.end) if x is not None]
    if isinstance(e, S.App):
        return (e.fn,) + e.args
    if isinstance(e, S.InfixChain):
        return e.operands
    if isinstance(e, (S.Paren, S.Neg, S.Typed)):
        return (e.expr,)
    if isinstance(e, (S.LeftSection, S.RightSection)):
        return (e.expr,)
    if isinstance(e, S.If):
        return (e.cond, e.then, e.orelse)
    return ()


def _analyze_binding(d, top_names) -> FunctionReport:
    a = _BindingAnalyzer(top_names)
    if isinstance(d, S.FunBind):
        args = _Ordered()
        for c in d.clauses:
            for p in c.pats:
                for v in pattern_vars(p):
                    args.add(v)
                if not _is_plain_var(p):
                    a.flags["patMatch"] = True
        a.bound.update(args.items)
        for c in d.clauses:
            a.bind_rhs(c.rhs)
            a.bind_decls(c.where)
        for c in d.clauses:
            a.walk_rhs(c.rhs)
            a.walk_decls(c.where)
        name, arg_list = d.name, args.items
    else:
        if not _is_plain_var(d.pattern):
            a.flags["patMatch"] = True
            # names bound by a top-level pattern are not arguments
            a.bound.update(pattern_vars(d.pattern))
        a.bind_rhs(d.rhs)
        a.bind_decls(d.where)
        a.walk_rhs(d.rhs)
        a.walk_decls(d.where)
        p = d.pattern
        while isinstance(p, S.PParen):
            p = p.pattern
        name = p.name if isinstance(p, S.PVar) else render_pattern(d.pattern)
        arg_list = []
    return FunctionReport(
        name=name,
        **a.flags,
        args=list(arg_list),
        calledFns=list(a.called.items),
        declaredFns=list(a.declared.items),
    )


def top_level_names(m: S.SourceModule) -> set[str]:
    names = set()
    for d in m.bindings:
        if isinstance(d, S.FunBind):
            names.add(d.name)
        else:
            names.update(pattern_vars(d.pattern))
    return names


def analyze(m: S.SourceModule) -> AnalysisReport:
    top = top_level_names(m)
    return AnalysisReport([_analyze_binding(d, top) for d in m.bindings])
