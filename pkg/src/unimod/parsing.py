"""Tokenizer and recursive-descent parsers for the text grammars.

Element literals (shared by words, witnesses and ring elements)::

    expr    := factor ('*' factor)*
    factor  := primary ('^' exp)*
    primary := NAME | '1' | '(' expr ')'
    exp     := ['-'] INT | ['-'] '(' expr ')'      # p^(u) = u^-1 p u

Group specs::

    spec := 'g42' | 'cyclic:N[:NAME]' | 'remark:N' | 'dl:K'
          | 'metacyclic:(M,K,R)' | 'direct:(spec,spec)' | 'wreath:(spec,spec)'
          | 'semidirect:(spec,spec,action=ACTION)'
    ACTION := 'trivial' | 'inv' | 'pow:K' | '[' imgs (';' imgs)* ']'

A table action lists, for each generator of the acting group, the images of
the normal group's generators as element literals separated by commas.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .groups import ENUM_CAP, as_finite

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[-*^()+,=:;\[\]@]))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        self.message = message
        super().__init__(f"{message} at position {pos}")

    def pretty(self) -> str:
        if not self.text:
            return str(self)
        return f"{self}\n  {self.text}\n  {' ' * self.pos}^"


@dataclass
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out, pos = [], 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.pos, self.text)

    def at(self, value: str) -> bool:
        return self.tok.kind == "op" and self.tok.value == value

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        if not self.at(value):
            found = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def expect_kind(self, kind: str) -> Token:
        if self.tok.kind != kind:
            found = self.tok.value or "end of input"
            raise self.error(f"expected {kind}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def integer(self) -> int:
        neg = self.accept("-")
        v = int(self.expect_kind("int").value)
        return -v if neg else v

    def finish(self) -> None:
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.value!r}")

    # -- element literals --------------------------------------------------

    def element(self, G, variable: str | None = None):
        """Parse a product of named elements of ``G``."""
        acc = self.factor(G, variable)
        while self.accept("*"):
            acc = G.mul(acc, self.factor(G, variable))
        return acc

    def factor(self, G, variable: str | None = None):
        tok = self.tok
        if tok.kind == "name":
            if tok.value == variable:
                raise self.error(f"variable {variable!r} is not allowed here")
            named = G.named
            if tok.value not in named:
                raise self.error(f"unknown generator {tok.value!r}")
            self.i += 1
            val = named[tok.value]
        elif tok.kind == "int" and tok.value == "1":
            self.i += 1
            val = G.identity
        elif self.accept("("):
            val = self.element(G, variable)
            self.expect(")")
        else:
            raise self.error(f"expected an element, found {tok.value or 'end of input'!r}")
        while self.accept("^"):
            neg = self.accept("-")
            if self.accept("("):
                u = self.element(G, variable)
                self.expect(")")
                if neg:
                    val = G.inv(val)
                val = G.conj(val, u)
            else:
                k = int(self.expect_kind("int").value)
                val = G.power(val, -k if neg else k)
        return val


def parse_element(text: str, G):
    p = Parser(text)
    g = p.element(G)
    p.finish()
    return g


# -- group specs ---------------------------------------------------------------


def parse_group_spec(text: str, cap: int = ENUM_CAP):
    """Build the group described by ``text``; nested specs are enumerated as needed."""
    p = Parser(text)
    G = _spec(p, cap)
    p.finish()
    return G


def _finite(p: Parser, G, tok: Token, cap: int):
    from .groups import CapacityError

    try:
        return as_finite(G, cap)
    except CapacityError as exc:
        raise ParseError(f"nested group is too large to enumerate ({exc})", tok.pos, p.text) from exc


def _positive(p: Parser, minimum: int = 1) -> int:
    tok = p.tok
    v = p.integer()
    if v < minimum:
        raise p.error(f"expected an integer >= {minimum}", tok)
    return v


def _spec(p: Parser, cap: int):
    from .groups import CapacityError, FiniteGroup

    G = _build(p, cap)
    if isinstance(G, FiniteGroup) and G.size > cap:
        raise CapacityError(f"group of order {G.size} exceeds enumeration cap {cap}")
    return G


def _build(p: Parser, cap: int):
    from . import constructors as C

    tok = p.expect_kind("name")
    kind = tok.value
    if kind == "g42":
        return C.g42()
    if kind not in {"cyclic", "remark", "dl", "direct", "wreath", "semidirect", "metacyclic"}:
        raise p.error(f"unknown group constructor {kind!r}", tok)
    p.expect(":")
    if kind == "cyclic":
        n = _positive(p)
        name = p.expect_kind("name").value if p.accept(":") else "t"
        return C.cyclic(n, name)
    if kind == "remark":
        return C.remark_group(_positive(p, 2))
    if kind == "dl":
        return C.iterated_wreath_dl(_positive(p, 0), cap)
    p.expect("(")
    if kind == "metacyclic":
        m = _positive(p)
        p.expect(",")
        k = _positive(p)
        p.expect(",")
        rtok = p.tok
        r = p.integer()
        p.expect(")")
        try:
            return C.metacyclic(m, k, r % m)
        except C.InvalidActionError as exc:
            raise ParseError(str(exc), rtok.pos, p.text) from exc
    first_tok = p.tok
    first = _spec(p, cap)
    p.expect(",")
    second_tok = p.tok
    second = _spec(p, cap)
    if kind == "wreath":
        p.expect(")")
        return C.wreath(first, _finite(p, second, second_tok, cap))
    B = _finite(p, first, first_tok, cap)
    A = _finite(p, second, second_tok, cap)
    if kind == "direct":
        p.expect(")")
        return C.direct_product(B, A, cap)
    p.expect(",")
    kw = p.expect_kind("name")
    if kw.value != "action":
        raise p.error("expected 'action='", kw)
    p.expect("=")
    act_tok = p.tok
    try:
        act = _action(p, B, A)
    except C.InvalidActionError as exc:
        raise ParseError(f"invalid action: {exc}", act_tok.pos, p.text) from exc
    p.expect(")")
    return C.semidirect(B, A, act, cap)


def _action(p: Parser, B, A):
    from .constructors import GroupAction

    if p.accept("["):
        rows = [[p.element(B)]]
        while True:
            if p.accept(","):
                rows[-1].append(p.element(B))
            elif p.accept(";"):
                rows.append([p.element(B)])
            else:
                break
        p.expect("]")
        return GroupAction.from_generator_images(B, A, rows)
    tok = p.expect_kind("name")
    if tok.value == "trivial":
        return GroupAction.trivial(B, A)
    if tok.value == "inv":
        return GroupAction.power(B, A, -1)
    if tok.value == "pow":
        p.expect(":")
        return GroupAction.power(B, A, p.integer())
    raise p.error(f"unknown action {tok.value!r}", tok)
