"""Integer group ring ZG: finitely supported integer combinations of group elements.

Elements of ZG also act as exponents: for ``h`` whose conjugates pairwise
commute, ``h^(sum n_g g) = prod (h^g)^(n_g)``.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Callable, Iterable

from .parsing import Parser


class ParentMismatchError(ValueError):
    pass


class ExpActionError(ValueError):
    """Conjugates of the base element do not commute, so the exponent notation is undefined."""


class GroupRingElement:
    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs: dict | Iterable = ()):
        self.group = group
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        acc: dict[int, int] = defaultdict(int)
        for g, n in items:
            acc[int(g)] += int(n)
        self.coeffs = {g: n for g, n in sorted(acc.items()) if n}

    @classmethod
    def zero(cls, group) -> "GroupRingElement":
        return cls(group)

    @classmethod
    def one(cls, group) -> "GroupRingElement":
        return cls(group, {group.identity: 1})

    @classmethod
    def basis(cls, group, g, coef: int = 1) -> "GroupRingElement":
        return cls(group, {g: coef})

    def _same(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return GroupRingElement(self.group, {self.group.identity: other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if other.group is not self.group:
            raise ParentMismatchError("group ring elements over different groups")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return GroupRingElement(self.group, list(self.coeffs.items()) + list(other.coeffs.items()))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.group, {g: -n for g, n in self.coeffs.items()})

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, {g: n * other for g, n in self.coeffs.items()})
        other = self._same(other)
        if other is NotImplemented:
            return other
        mul = self.group.mul
        terms = [(mul(g, h), m * n) for g, m in self.coeffs.items() for h, n in other.coeffs.items()]
        return GroupRingElement(self.group, terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in ZG")
        out = GroupRingElement.one(self.group)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement(self.group, {self.group.identity: other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return other.group is self.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, g) -> int:
        return self.coeffs.get(int(g), 0)

    def augmentation(self) -> int:
        return sum(self.coeffs.values())

    @property
    def support(self) -> list:
        return list(self.coeffs)

    def map(self, hom: Callable, target) -> "GroupRingElement":
        """Push forward along a group homomorphism ``hom`` into ``target``."""
        return GroupRingElement(target, [(hom(g), n) for g, n in self.coeffs.items()])

    def __str__(self):
        return format_ring_element(self)

    def __repr__(self):
        return f"GroupRingElement({self})"


def format_ring_element(alpha: GroupRingElement) -> str:
    """``1 - c - a + a*c`` style, terms in element-index order."""
    if not alpha.coeffs:
        return "0"
    out = []
    for g, n in alpha.coeffs.items():
        label = alpha.group.label(g)
        mag = abs(n)
        if label == "1":
            body = str(mag)
        else:
            body = label if mag == 1 else f"{mag}*{label}"
        if not out:
            out.append(body if n > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if n > 0 else f"- {body}")
    return " ".join(out)


def parse_ring_element(text: str, group) -> GroupRingElement:
    """Parse a signed sum of optionally integer-scaled element literals."""
    p = Parser(text)
    terms = []
    sign = -1 if p.accept("-") else 1
    while True:
        coef = 1
        tok = p.tok
        if tok.kind == "int" and (tok.value != "1" or _next_is(p, "*")):
            coef = int(tok.value)
            p.i += 1
            if p.accept("*"):
                g = p.element(group)
            else:
                g = group.identity
        else:
            g = p.element(group)
        terms.append((g, sign * coef))
        if p.accept("+"):
            sign = 1
        elif p.accept("-"):
            sign = -1
        else:
            break
    p.finish()
    return GroupRingElement(group, terms)


def _next_is(p: Parser, op: str) -> bool:
    t = p.tokens[p.i + 1]
    return t.kind == "op" and t.value == op


def gr_add(alpha: GroupRingElement, beta: GroupRingElement) -> GroupRingElement:
    return alpha + beta


def gr_mul(alpha: GroupRingElement, beta: GroupRingElement) -> GroupRingElement:
    return alpha * beta


def gr_coefficient(alpha: GroupRingElement, g) -> int:
    return alpha.coefficient(g)


def augmentation(alpha: GroupRingElement) -> int:
    return alpha.augmentation()


def exp_action(h, alpha: GroupRingElement, ambient=None, embed: Callable | None = None):
    """``h^alpha`` in ``ambient``, with ``alpha``'s group mapped in by ``embed``.

    Raises ExpActionError unless the conjugates ``h^g`` (g in the support)
    pairwise commute.
    """
    ambient = alpha.group if ambient is None else ambient
    if embed is None:
        if ambient is not alpha.group:
            raise ParentMismatchError("an embedding is needed when the ambient group differs")
        embed = _identity
    conjugates = [(ambient.conj(h, embed(g)), n) for g, n in alpha.coeffs.items()]
    for i, (x, _) in enumerate(conjugates):
        for y, _ in conjugates[i + 1:]:
            if ambient.mul(x, y) != ambient.mul(y, x):
                raise ExpActionError("conjugates of the base element do not commute")
    acc = ambient.identity
    for x, n in conjugates:
        acc = ambient.mul(acc, ambient.power(x, n))
    return acc


def _identity(g):
    return g
