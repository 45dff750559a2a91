"""The ``.hset`` equation language, canonical printing and DOT export.

Grammar::

    system := stmt*
    stmt   := IDENT "=" expr ";"
    expr   := IDENT | "{" [expr ("," expr)*] "}" | "(" expr "," expr ")"

``#`` starts a comment running to the end of the line. ``(a, b)`` is the
Kuratowski pair ``{{a}, {a, b}}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import ApgSystem, HypersetId, Mode, default_store

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Name:
    ident: str
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Braces:
    items: tuple["SetExpr", ...]


@dataclass(frozen=True)
class PairExpr:
    left: "SetExpr"
    right: "SetExpr"


SetExpr = Union[Name, Braces, PairExpr]


@dataclass
class Statement:
    name: str
    expr: SetExpr
    line: int
    col: int


@dataclass
class SystemAst:
    statements: list[Statement] = field(default_factory=list)

    def defined(self) -> set[str]:
        return {s.name for s in self.statements}


@dataclass
class Lowered:
    system: ApgSystem
    names: dict[str, int]

    def __getitem__(self, name: str) -> int:
        return self.names[name]


_PUNCT = set("={}(),;")


def _tokenize(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
        elif ch.isspace():
            i += 1
            col += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in _PUNCT:
            yield ch, ch, line, col
            i += 1
            col += 1
        else:
            m = IDENT_RE.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {ch!r}", line, col)
            yield "IDENT", m.group(), line, col
            col += m.end() - i
            i = m.end()
    yield "EOF", "", line, col


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    @property
    def tok(self):
        return self.tokens[self.pos]

    def expect(self, kind: str):
        t = self.tok
        if t[0] != kind:
            what = "end of input" if t[0] == "EOF" else repr(t[1])
            raise ParseError(f"expected {kind if kind != 'IDENT' else 'identifier'}, found {what}", t[2], t[3])
        self.pos += 1
        return t

    def system(self) -> SystemAst:
        ast = SystemAst()
        seen: dict[str, Statement] = {}
        while self.tok[0] != "EOF":
            _, name, line, col = self.expect("IDENT")
            self.expect("=")
            expr = self.expr()
            self.expect(";")
            if name in seen:
                raise ParseError(f"{name!r} already defined on line {seen[name].line}", line, col)
            stmt = Statement(name, expr, line, col)
            seen[name] = stmt
            ast.statements.append(stmt)
        return ast

    def expr(self) -> SetExpr:
        kind, value, line, col = self.tok
        if kind == "IDENT":
            self.pos += 1
            return Name(value, line, col)
        if kind == "{":
            self.pos += 1
            items = []
            if self.tok[0] != "}":
                items.append(self.expr())
                while self.tok[0] == ",":
                    self.pos += 1
                    items.append(self.expr())
            self.expect("}")
            return Braces(tuple(items))
        if kind == "(":
            self.pos += 1
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return PairExpr(left, right)
        what = "end of input" if kind == "EOF" else repr(value)
        raise ParseError(f"expected expression, found {what}", line, col)


def _names_in(expr: SetExpr):
    if isinstance(expr, Name):
        yield expr
    elif isinstance(expr, Braces):
        for e in expr.items:
            yield from _names_in(e)
    else:
        yield from _names_in(expr.left)
        yield from _names_in(expr.right)


def parse(text: str, strict: bool = False) -> SystemAst:
    """Parse equation text. In strict mode every used identifier must be defined."""
    ast = _Parser(text).system()
    if strict:
        defined = ast.defined()
        for stmt in ast.statements:
            for nm in _names_in(stmt.expr):
                if nm.ident not in defined:
                    raise ParseError(f"undefined identifier {nm.ident!r}", nm.line, nm.col)
    return ast


def lower(ast: SystemAst) -> Lowered:
    """One node per identifier and per anonymous brace or pair expression.

    ``x = y;`` makes ``x`` a node with the same children as ``y``.
    """
    sys = ApgSystem()
    names: dict[str, int] = {}

    def ident(name: str) -> int:
        if name not in names:
            names[name] = sys.add_node(name)
        return names[name]

    def kids_of(expr: SetExpr) -> list[int]:
        if isinstance(expr, Braces):
            return [node(e) for e in expr.items]
        a, b = node(expr.left), node(expr.right)
        return [sys.add_node(None, [a]), sys.add_node(None, [a, b])]

    def node(expr: SetExpr) -> int:
        if isinstance(expr, Name):
            return ident(expr.ident)
        x = sys.add_node()
        sys.children[x] = kids_of(expr)
        return x

    aliases: dict[str, Statement] = {}
    for stmt in ast.statements:
        x = ident(stmt.name)
        if isinstance(stmt.expr, Name):
            aliases[stmt.name] = stmt
        else:
            sys.children[x] = kids_of(stmt.expr)
    for name, stmt in aliases.items():
        target, chain = stmt.expr.ident, [name]
        while target in aliases:
            if target in chain:
                raise ParseError(f"circular alias through {target!r}", stmt.line, stmt.col)
            chain.append(target)
            target = aliases[target].expr.ident
        ident(target)
        sys.children[names[name]] = list(sys.children[names[target]])
    return Lowered(sys, names)


def load(text: str, strict: bool = False) -> Lowered:
    return lower(parse(text, strict))


def _numbering(h: HypersetId) -> tuple[ApgSystem, list[HypersetId]]:
    return h.store.system_of(h)


def print_canonical(h: HypersetId) -> str:
    """Equation block over the canonical numbering, root ``x0``, one line per node."""
    sys, _ = _numbering(h)
    lines = [f"x{i} = {{{', '.join(f'x{c}' for c in kids)}}};" for i, kids in enumerate(sys.children)]
    return "\n".join(lines) + "\n"


def _dot_id(label: Optional[str], i: int) -> str:
    return f'"{label}"' if label else f"n{i}"


def to_dot(obj: Union[ApgSystem, HypersetId], name: str = "G") -> str:
    """Graphviz digraph for a system (labels kept) or a hyperset (canonical numbering)."""
    if isinstance(obj, HypersetId):
        sys, _ = _numbering(obj)
        ids = [f"x{i}" for i in range(len(sys))]
    else:
        sys = obj
        ids = [_dot_id(sys.labels[i], i) for i in range(len(sys))]
    out = [f"digraph {name} {{"]
    out += [f"  {v};" for v in ids]
    out += [f"  {ids[s]} -> {ids[t]};" for s, t in sys.edges()]
    out.append("}")
    return "\n".join(out) + "\n"


def parse_hyperset(text: str, root: str = "x0", mode=None, store=None) -> HypersetId:
    """Intern ``root`` of an equation block (inverse of :func:`print_canonical`)."""

    low = load(text)
    return (store or default_store()).intern(low.system, low[root], mode or Mode.SET)
