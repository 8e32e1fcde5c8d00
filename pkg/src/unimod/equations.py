"""One-variable equations ``w(x) = 1`` over a group, and solvers for them.

A word is a sequence of factors, each either ``("c", element)`` for a
coefficient or ``("x", k)`` for the power ``x^k``. Inputs of the form
``w = v`` are stored as ``w * v^-1``.

Word grammar (factors separated by ``*``)::

    x | x^K | x^(U) | x^-(U) | <element literal>

with ``x^(U) = U^-1 x U`` for a coefficient expression ``U``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Sequence

import numpy as np

from .derived import derived_series, in_derived
from .groups import FiniteGroup
from .parsing import ParseError, Parser

VARIABLE = "x"


class PreconditionError(ValueError):
    pass


class GroupMismatchError(ValueError):
    pass


def _canonical(group, factors) -> tuple:
    out: list = []
    for kind, val in factors:
        if kind == "c":
            if out and out[-1][0] == "c":
                val = group.mul(out.pop()[1], val)
            if val != group.identity:
                out.append(("c", val))
        elif kind == "x":
            if out and out[-1][0] == "x":
                val = out.pop()[1] + val
            if val:
                out.append(("x", int(val)))
        else:
            raise ValueError(f"unknown factor kind {kind!r}")
    return tuple(out)


@dataclass(frozen=True)
class EquationWord:
    group: object = field(compare=False)
    factors: tuple

    @classmethod
    def make(cls, group, factors: Sequence) -> "EquationWord":
        return cls(group, _canonical(group, factors))

    def exponent_sum(self) -> int:
        return sum(v for k, v in self.factors if k == "x")

    def is_unimodular(self) -> bool:
        return self.exponent_sum() in (1, -1)

    def coefficients(self) -> list:
        return [v for k, v in self.factors if k == "c"]

    def has_variable(self) -> bool:
        return any(k == "x" for k, _ in self.factors)

    def inverse(self) -> "EquationWord":
        G = self.group
        inv = [("c", G.inv(v)) if k == "c" else ("x", -v) for k, v in reversed(self.factors)]
        return EquationWord.make(G, inv)

    def __mul__(self, other: "EquationWord") -> "EquationWord":
        return EquationWord.make(self.group, self.factors + other.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for k, v in self.factors:
            if k == "x":
                parts.append(VARIABLE if v == 1 else f"{VARIABLE}^{v}")
            else:
                parts.append(self.group.label(v))
        return " * ".join(parts)


def exponent_sum(w: EquationWord) -> int:
    return w.exponent_sum()


def is_unimodular(w: EquationWord) -> bool:
    return w.is_unimodular()


# -- parsing ---------------------------------------------------------------


def parse_word(text: str, G, variable: str = VARIABLE) -> EquationWord:
    """Parse ``WORD`` or ``WORD = WORD`` into canonical ``w(x) = 1`` form."""
    if variable in G.named:
        raise ValueError(f"the group has a generator named {variable!r}, which clashes with the variable")
    p = Parser(text)
    lhs = _word(p, G, variable)
    if p.accept("="):
        rhs = _word(p, G, variable)
        lhs = lhs * rhs.inverse()
    p.finish()
    return lhs


def _word(p: Parser, G, var: str) -> EquationWord:
    factors = list(_word_factor(p, G, var))
    while p.accept("*"):
        factors.extend(_word_factor(p, G, var))
    return EquationWord.make(G, factors)


def _word_factor(p: Parser, G, var: str):
    tok = p.tok
    if not (tok.kind == "name" and tok.value == var):
        return [("c", p.factor(G, variable=var))]
    p.i += 1
    # (prefix)^-1 ... x^power ... (suffix): u^-1 x^e u after conjugations
    conj = G.identity
    power = 1
    while p.accept("^"):
        neg = p.accept("-")
        if p.accept("("):
            u = p.element(G, variable=var)
            p.expect(")")
            if neg:
                power = -power
            conj = G.mul(conj, u)
        else:
            k = int(p.expect_kind("int").value)
            if conj != G.identity:
                raise p.error("power of a conjugated variable must be written as x^K^(U)")
            power *= -k if neg else k
    if power == 0:
        raise ParseError("zero power of the variable", tok.pos, p.text)
    return [("c", G.inv(conj)), ("x", power), ("c", conj)]


# -- embeddings and evaluation -------------------------------------------------


class Embedding:
    """Injective homomorphism from ``source`` into ``target``."""

    def __init__(self, source, target, mapping: Callable | Sequence | None = None, check: bool = True):
        self.source = source
        self.target = target
        if mapping is None:
            if source is not target:
                raise GroupMismatchError("a mapping is needed between distinct groups")
            self._f = lambda g: g
        elif callable(mapping):
            self._f = mapping
        else:
            table = list(mapping)
            self._f = table.__getitem__
        if check:
            self.validate()

    @classmethod
    def identity(cls, G) -> "Embedding":
        return cls(G, G, check=False)

    def __call__(self, g):
        return self._f(g)

    def validate(self) -> None:
        S, T = self.source, self.target
        if self(S.identity) != T.identity:
            raise ValueError("embedding does not preserve the identity")
        elems = range(S.size)
        images = [self(g) for g in elems]
        if len(set(images)) != S.size:
            raise ValueError("embedding is not injective")
        for g in elems:
            for h in S.generators:
                if self(S.mul(g, h)) != T.mul(images[g], self(h)):
                    raise ValueError("embedding is not a homomorphism")


def _resolve(w: EquationWord, emb: Embedding | None) -> Embedding:
    if emb is None:
        return Embedding.identity(w.group)
    if emb.source is not w.group:
        raise GroupMismatchError("embedding source is not the coefficient group of the word")
    return emb


def evaluate(w: EquationWord, xhat, emb: Embedding | None = None):
    """Substitute ``xhat`` (an element of the target group) for the variable."""
    emb = _resolve(w, emb)
    T = emb.target
    acc = T.identity
    for kind, v in w.factors:
        acc = T.mul(acc, emb(v) if kind == "c" else T.power(xhat, v))
    return acc


def brute_force_solve(w: EquationWord, target=None, emb: Embedding | None = None) -> list[int]:
    """All solutions in an enumerated target group, in index order."""
    if target is None:
        target = emb.target if emb is not None else w.group
    if emb is None and target is not w.group:
        raise GroupMismatchError("an embedding is needed to solve in a different group")
    emb = _resolve(w, emb)
    if emb.target is not target:
        raise GroupMismatchError("embedding target differs from the search group")
    if not isinstance(target, FiniteGroup):
        raise PreconditionError("brute-force search needs an enumerated group")
    if target.table is None:
        return [x for x in range(target.size) if evaluate(w, x, emb) == target.identity]
    T = target.table
    xs = np.arange(target.size)
    powers = {1: xs}

    def xpow(e):
        if e not in powers:
            if e < 0:
                powers[e] = target.inverses[xpow(-e)]
            else:
                half = xpow(e // 2)
                sq = T[half, half]
                powers[e] = T[sq, xs] if e % 2 else sq
        return powers[e]

    acc = np.full(target.size, target.identity, dtype=np.int64)
    for kind, v in w.factors:
        acc = T[acc, emb(v)] if kind == "c" else T[acc, xpow(v)]
    return [int(x) for x in np.flatnonzero(acc == target.identity)]


def solve_abelian(w: EquationWord, A=None):
    """Closed-form solution of a unimodular equation over an abelian group."""
    A = w.group if A is None else A
    if A is not w.group:
        raise GroupMismatchError("solve_abelian works over the word's own group")
    if not A.is_abelian():
        raise PreconditionError("group is not abelian")
    s = w.exponent_sum()
    if s not in (1, -1):
        raise PreconditionError(f"equation is not unimodular (exponent sum {s})")
    x = A.power(A.prod(w.coefficients()), -s)
    assert evaluate(w, x) == A.identity
    return x


# -- the obstruction ----------------------------------------------------------


def obstruction_element(G, a, c):
    """``c * c^a * c^(-a^3) * c^(-a^4)``."""
    a3 = G.power(a, 3)
    a4 = G.mul(a3, a)
    return G.prod([c, G.conj(c, a), G.inv(G.conj(c, a3)), G.inv(G.conj(c, a4))])


def standard_equation(G, a, c) -> EquationWord:
    """``x * x^-a * x^(a^2) = c`` as a word."""
    a2 = G.power(a, 2)
    ai = G.inv(a)
    factors = [("x", 1), ("c", ai), ("x", -1), ("c", a), ("c", G.inv(a2)), ("x", 1), ("c", a2),
               ("c", G.inv(c))]
    return EquationWord.make(G, factors)


def twisted_value(G, a, y):
    """``y * y^-a * y^(a^2)``: the left side of the standard equation at ``y``."""
    return G.prod([y, G.inv(G.conj(y, a)), G.conj(y, G.power(a, 2))])


@dataclass
class ObstructionReport:
    g: int
    hypotheses: dict
    g_equals_c: bool

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def g_nontrivial(self) -> bool:
        return self.g != 0

    @property
    def unsolvable_in_metabelian(self) -> bool:
        return self.hypotheses_hold and self.g_nontrivial

    @property
    def verdict(self) -> str:
        if not self.hypotheses_hold:
            failed = ", ".join(k for k, v in self.hypotheses.items() if not v)
            return f"hypotheses fail ({failed})"
        if self.g_nontrivial:
            return "unsolvable in metabelian groups"
        return "no obstruction (g = 1)"


def metabelian_obstruction(G: FiniteGroup, a: int, c: int) -> ObstructionReport:
    """Obstruction ``g`` for ``x x^-a x^(a^2) = c`` with its hypotheses checked."""
    G.check(a)
    G.check(c)
    series = derived_series(G)
    hyp = {
        "metabelian": series.solvable and series.derived_length <= 2,
        "a^6 in G'": in_derived(G, G.power(a, 6), 1),
        "c in G'": in_derived(G, c, 1),
    }
    g = obstruction_element(G, a, c)
    return ObstructionReport(g, hyp, g == c)


@dataclass
class HopeReport:
    g: int
    order_c: int
    order_g: int
    fourfold: int
    twisted_g_trivial: bool
    g_a3_is_inverse: bool
    hypotheses: dict

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def gcd_order_g_6(self) -> int:
        return gcd(self.order_g, 6)

    @property
    def fourfold_nontrivial(self) -> bool:
        return self.fourfold != 0

    @property
    def conclusion_holds(self) -> bool:
        return self.fourfold_nontrivial and self.gcd_order_g_6 == 1


def hope_check(G: FiniteGroup, a: int, c: int) -> HopeReport:
    """Second-level obstruction ``g g^a g^-a^3 g^-a^4`` for ``g`` the first one."""
    obs = metabelian_obstruction(G, a, c)
    g = obs.g
    oc = G.order(c)
    hyp = dict(obs.hypotheses)
    hyp["g != 1"] = g != G.identity
    hyp["order(c) coprime to 6"] = gcd(oc, 6) == 1
    return HopeReport(
        g=g,
        order_c=oc,
        order_g=G.order(g),
        fourfold=obstruction_element(G, a, g),
        twisted_g_trivial=twisted_value(G, a, g) == G.identity,
        g_a3_is_inverse=G.conj(g, G.power(a, 3)) == G.inv(g),
        hypotheses=hyp,
    )
