"""Constructors for the groups the library works with.

Products use the conventions ``g^h = h^-1 g h`` and ``[g, h] = g^-1 h^-1 g h``.
A semidirect product ``B x| A`` has ``B`` normal and ``b^a = act(a, b)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

import numpy as np

from .groups import (ENUM_CAP, CapacityError, FiniteGroup, SemidirectPair,
                     WreathProduct)

VALIDATE_EXHAUSTIVE = 10**6
VALIDATE_SAMPLES = 10**5


class InvalidActionError(ValueError):
    pass


def _merge_names(left, right):
    clash = set(left) & set(right)
    if not clash:
        return list(left), list(right)
    return ([f"{n}_1" if n in clash else n for n in left],
            [f"{n}_2" if n in clash else n for n in right])


class GroupAction:
    """Right action of ``A`` on ``B`` by automorphisms.

    ``images[a, b]`` is ``b^a``; the right-action law is
    ``images[a1 a2, b] == images[a2, images[a1, b]]``.
    """

    def __init__(self, B: FiniteGroup, A: FiniteGroup, images, validate: bool = True, seed: int = 0):
        self.B = B
        self.A = A
        self.images = np.asarray(images, dtype=np.int64)
        if self.images.shape != (A.size, B.size):
            raise InvalidActionError("action table must have shape |A| x |B|")
        self._rows = self.images.tolist()
        if validate:
            self.validate(seed)

    def __call__(self, a: int, b: int) -> int:
        return self._rows[a][b]

    @classmethod
    def from_function(cls, B, A, f, **kw) -> "GroupAction":
        return cls(B, A, [[f(a, b) for b in range(B.size)] for a in range(A.size)], **kw)

    @classmethod
    def from_generator_images(cls, B: FiniteGroup, A: FiniteGroup, gen_images, **kw) -> "GroupAction":
        """``gen_images[j][i]`` is the image of B's i-th generator under A's j-th generator."""
        if len(gen_images) != len(A.generators):
            raise InvalidActionError("need one image list per generator of the acting group")
        autos = []
        for imgs in gen_images:
            if len(imgs) != len(B.generators):
                raise InvalidActionError("need one image per generator of the normal group")
            phi = [0] * B.size
            phi[B.identity] = B.identity
            for b in range(1, B.size):
                phi[b] = B.mul(phi[B._parent[b]], imgs[B._via[b]])
            autos.append(phi)
        table = [None] * A.size
        table[A.identity] = list(range(B.size))
        for a in range(1, A.size):
            phi = autos[A._via[a]]
            table[a] = [phi[x] for x in table[A._parent[a]]]
        return cls(B, A, table, **kw)

    @classmethod
    def trivial(cls, B, A) -> "GroupAction":
        return cls(B, A, np.tile(np.arange(B.size), (A.size, 1)))

    @classmethod
    def power(cls, B: FiniteGroup, A: FiniteGroup, r: int, **kw) -> "GroupAction":
        """Every generator of A acts by ``b -> b^r`` (B must be abelian)."""
        imgs = [B.power(s, r) for s in B.generators]
        return cls.from_generator_images(B, A, [imgs] * len(A.generators), **kw)

    def validate(self, seed: int = 0) -> None:
        B, A, img = self.B, self.A, self.images
        if not np.array_equal(img[A.identity], np.arange(B.size)):
            raise InvalidActionError("identity of the acting group must act trivially")
        pairs = A.size * B.size
        if pairs <= VALIDATE_EXHAUSTIVE and B.table is not None and A.table is not None:
            TB, TA = B.table, A.table
            for a in range(A.size):
                phi = img[a]
                if len(np.unique(phi)) != B.size:
                    raise InvalidActionError(f"element {A.label(a)} does not act bijectively")
                if not np.array_equal(phi[TB], TB[phi[:, None], phi[None, :]]):
                    raise InvalidActionError(f"element {A.label(a)} does not act by a homomorphism")
            for a1 in range(A.size):
                # images[a1 a2] == images[a2][images[a1]] for every a2
                if not np.array_equal(img[TA[a1]], img[:, img[a1]]):
                    raise InvalidActionError("map is not a right action")
            return
        rng = random.Random(seed)
        for _ in range(VALIDATE_SAMPLES):
            a1, a2 = rng.randrange(A.size), rng.randrange(A.size)
            b1, b2 = rng.randrange(B.size), rng.randrange(B.size)
            if self(a1, B.mul(b1, b2)) != B.mul(self(a1, b1), self(a1, b2)):
                raise InvalidActionError("sampled pair breaks multiplicativity")
            if self(A.mul(a1, a2), b1) != self(a2, self(a1, b1)):
                raise InvalidActionError("sampled pair breaks the right-action law")
        for a in range(A.size):
            if len(set(self._rows[a])) != B.size:
                raise InvalidActionError(f"element {A.label(a)} does not act bijectively")

    def order_of(self, a: int) -> int:
        """Order of the automorphism induced by ``a``."""
        ident = list(range(self.B.size))
        k, x = 1, a
        while self._rows[x] != ident:
            x = self.A.mul(x, a)
            k += 1
        return k


@dataclass
class SemidirectStructure:
    B: FiniteGroup
    A: FiniteGroup
    action: GroupAction

    def embed_normal(self, G: FiniteGroup, b: int) -> int:
        return G.index_of(SemidirectPair(b, self.A.identity))

    def embed_acting(self, G: FiniteGroup, a: int) -> int:
        return G.index_of(SemidirectPair(self.B.identity, a))

    def project(self, G: FiniteGroup, g: int) -> int:
        return G.keys[g].acting


@dataclass
class DirectStructure:
    A: FiniteGroup
    B: FiniteGroup


def cyclic(n: int, name: str = "t") -> FiniteGroup:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclic group order must be a positive integer, got {n!r}")
    gens = [1 % n] if n > 1 else []
    names = [name] if n > 1 else []
    # the trivial group keeps the name as a marked alias of the identity
    return FiniteGroup.generate(gens, lambda x, y: (x + y) % n, 0, names,
                                inv=lambda x: -x % n, name=f"cyclic:{n}",
                                marked=None if n > 1 else {name: 0})


def direct_product(A: FiniteGroup, B: FiniteGroup, cap: int = ENUM_CAP) -> FiniteGroup:
    if A.size * B.size > cap:
        raise CapacityError(f"direct product of order {A.size * B.size} exceeds cap {cap}")
    na, nb = _merge_names(A.gen_names, B.gen_names)
    gens = [(s, B.identity) for s in A.generators] + [(A.identity, t) for t in B.generators]

    def mul(x, y):
        return (A.mul(x[0], y[0]), B.mul(x[1], y[1]))

    G = FiniteGroup.generate(gens, mul, (A.identity, B.identity), na + nb,
                             inv=lambda x: (A.inv(x[0]), B.inv(x[1])),
                             name=f"direct:({A.name},{B.name})", cap=cap)
    G.structure = DirectStructure(A, B)
    return G


def semidirect(B: FiniteGroup, A: FiniteGroup, act: GroupAction, cap: int = ENUM_CAP,
               name: str | None = None, marked: dict | None = None) -> FiniteGroup:
    """``B x| A`` with ``B`` normal; ``(b1, a1)(b2, a2) = (b1 * b2^(a1^-1), a1 a2)``.

    ``marked`` maps names to keys, given as ``("B", b)`` or ``("A", a)``.
    """
    if act.B is not B or act.A is not A:
        raise InvalidActionError("action does not belong to these groups")
    if A.size * B.size > cap:
        raise CapacityError(f"semidirect product of order {A.size * B.size} exceeds cap {cap}")
    nb, na = _merge_names(B.gen_names, A.gen_names)
    gens = ([SemidirectPair(s, A.identity) for s in B.generators]
            + [SemidirectPair(B.identity, t) for t in A.generators])
    rows = act._rows

    def mul(x, y):
        return SemidirectPair(B.mul(x.normal, rows[A.inv(x.acting)][y.normal]),
                              A.mul(x.acting, y.acting))

    def inv(x):
        ai = A.inv(x.acting)
        return SemidirectPair(rows[x.acting][B.inv(x.normal)], ai)

    keys = {}
    for k, (side, e) in (marked or {}).items():
        keys[k] = SemidirectPair(e, A.identity) if side == "B" else SemidirectPair(B.identity, e)
    G = FiniteGroup.generate(gens, mul, SemidirectPair(B.identity, A.identity), nb + na,
                             inv=inv, name=name or f"semidirect:({B.name},{A.name})",
                             cap=cap, marked=keys)
    G.structure = SemidirectStructure(B, A, act)
    return G


def wreath(B, A: FiniteGroup, name: str | None = None) -> WreathProduct:
    """Structural ``B wr A``; call ``.enumerate()`` for the listed form when small."""
    return WreathProduct(B, A, name=name or f"wreath:({B.name},{A.name})")


def metacyclic(m: int, k: int, r: int, names=("c", "a"), name: str | None = None) -> FiniteGroup:
    """``<c>_m x| <a>_k`` with ``c^a = c^r``; marks ``a`` and ``c``."""
    if gcd(r, m) != 1 or pow(r, k, m) != 1 % m:
        raise InvalidActionError(f"c -> c^{r} does not define an action of C{k} on C{m}")
    C = cyclic(m, names[0])
    A = cyclic(k, names[1])
    act = GroupAction.power(C, A, r)
    cg = C.generators[0] if C.generators else C.identity
    ag = A.generators[0] if A.generators else A.identity
    return semidirect(C, A, act, name=name or f"metacyclic:{m},{k},{r}",
                      marked={names[0]: ("B", cg), names[1]: ("A", ag)})


def g42(action_exponent: int = 5) -> FiniteGroup:
    """``<c>_7 x| <a>_6`` with ``c^a = c^5``; marks ``a`` and ``c``.

    Other exponents give the same-shaped group with a different action
    (used to inject faults); the exponent must be a unit mod 7.
    """
    name = "g42" if action_exponent == 5 else f"g42[c^a=c^{action_exponent}]"
    return metacyclic(7, 6, action_exponent % 7, name=name)


def remark_group(n: int) -> FiniteGroup:
    """``(<b>_n x <d>_n) x| <a>_6`` with ``b^a = b d``, ``d^a = b^-1``; marks a, b, d and c = b."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"remark group needs n >= 2, got {n!r}")
    base = direct_product(cyclic(n, "b"), cyclic(n, "d"))
    A = cyclic(6, "a")
    b, d = base.gen("b"), base.gen("d")
    act = GroupAction.from_generator_images(base, A, [[base.mul(b, d), base.inv(b)]])
    return semidirect(base, A, act, name=f"remark:{n}",
                      marked={"a": ("A", A.gen("a")), "b": ("B", b), "d": ("B", d), "c": ("B", b)})


def iterated_wreath_dl(k: int, cap: int = ENUM_CAP):
    """``W_0 = 1``, ``W_1 = C_2``, ``W_k = C_2 wr W_{k-1}``; derived length exactly ``k``.

    Enumerated when the order fits under ``cap`` (k <= 3 by default), else a
    structural :class:`WreathProduct`.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"derived length must be a nonnegative integer, got {k!r}")
    if k == 0:
        G = cyclic(1)
        G.name = "dl:0"
        return G
    W = cyclic(2, "b1")
    W.name = "dl:1"
    for j in range(2, k + 1):
        if not isinstance(W, FiniteGroup):
            raise CapacityError(f"dl:{j} needs an enumerated dl:{j - 1} as its top group")
        S = wreath(cyclic(2, f"b{j}"), W, name=f"dl:{j}")
        W = S.enumerate(cap) if S.size <= cap else S
    return W


def is_unit_exponent_of_order(r: int, m: int, k: int) -> bool:
    return gcd(r, m) == 1 and pow(r, k, m) == 1 % m
