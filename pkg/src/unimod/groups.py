"""Finite group kernel.

Elements of an enumerated group are dense integer indices assigned by a
breadth-first walk over the generators, starting from the identity (index 0).
Groups small enough get a full Cayley table as a numpy array; larger ones
multiply through their underlying element keys.

Wreath products whose order is far too large to list live in
:class:`WreathProduct`, whose elements are :class:`WreathElement` pairs.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Hashable, NamedTuple, Sequence

import numpy as np

ENUM_CAP = 10**6
TABLE_CAP = 4096
_ROWS_CAP = 1024


class CapacityError(RuntimeError):
    """Raised when a closure or enumeration would exceed its configured cap."""


class SemidirectPair(NamedTuple):
    normal: int
    acting: int


@dataclass(frozen=True)
class WreathElement:
    """``base`` is a total map from top-group indices to base-group elements."""

    base: tuple
    top: int


def _compress(word: Sequence[int]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    for j in word:
        if runs and runs[-1][0] == j:
            runs[-1] = (j, runs[-1][1] + 1)
        else:
            runs.append((j, 1))
    return runs


class FiniteGroup:
    """An enumerated finite group on indices ``0 .. size-1``.

    Build instances with :meth:`generate`; the constructor is internal.
    ``keys[i]`` is the underlying object for index ``i`` (an int, a
    :class:`SemidirectPair`, a tuple, a :class:`WreathElement` ...).
    """

    def __init__(self, keys, index, right, parent, via, gen_keys, gen_names,
                 key_mul, key_inv=None, name="", marked=None):
        self.keys = keys
        self._index = index
        self.size = len(keys)
        self.identity = 0
        self.name = name
        self.gen_names = list(gen_names)
        self.generators = [index[k] for k in gen_keys]
        self.key_mul = key_mul
        self._key_inv = key_inv
        self._right = right
        self._parent = parent
        self._via = via
        self._labels: dict[int, str] = {}
        self.marked: dict[str, int] = dict(marked or {})
        self.structure: Any = None  # the WreathProduct this enumerates, if any

        self.table = None
        self._rows = None
        if self.size <= TABLE_CAP:
            self.table = self._build_table()
            self.inverses = np.argmax(self.table == 0, axis=1).astype(np.int32)
            if self.size <= _ROWS_CAP:
                self._rows = self.table.tolist()
            self._inv_list = self.inverses.tolist()
        else:
            self.inverses = None
            self._inv_list = [index[self._key_inverse(k)] for k in keys]

    # -- construction ---------------------------------------------------

    @classmethod
    def generate(cls, gens: Sequence[Hashable], mul: Callable, identity: Hashable,
                 names: Sequence[str] | None = None, inv: Callable | None = None,
                 name: str = "", cap: int = ENUM_CAP, marked=None) -> "FiniteGroup":
        """Enumerate the group generated by ``gens`` under ``mul``.

        Breadth-first from the identity, right-multiplying by generators in
        order, so index assignment is reproducible.
        """
        gens = list(gens)
        if names is None:
            names = [f"g{i + 1}" for i in range(len(gens))]
        if len(names) != len(gens):
            raise ValueError("one name per generator is required")
        keys = [identity]
        index = {identity: 0}
        parent, via, right = [-1], [-1], []
        i = 0
        while i < len(keys):
            x = keys[i]
            row = []
            for j, s in enumerate(gens):
                y = mul(x, s)
                k = index.get(y)
                if k is None:
                    if len(keys) >= cap:
                        raise CapacityError(f"group exceeds enumeration cap {cap}")
                    k = len(keys)
                    index[y] = k
                    keys.append(y)
                    parent.append(i)
                    via.append(j)
                row.append(k)
            right.append(row)
            i += 1
        marked_idx = {n: index[k] for n, k in (marked or {}).items()}
        return cls(keys, index, right, parent, via, gens, names, mul, inv, name, marked_idx)

    def _build_table(self) -> np.ndarray:
        n = self.size
        table = np.empty((n, n), dtype=np.int32)
        table[:, 0] = np.arange(n, dtype=np.int32)
        if n > 1:
            right = np.asarray(self._right, dtype=np.int32)
            # x * h = (x * parent(h)) * gen(h); parents precede children in BFS order
            for h in range(1, n):
                table[:, h] = right[table[:, self._parent[h]], self._via[h]]
        return table

    def _key_inverse(self, key):
        if self._key_inv is not None:
            return self._key_inv(key)
        power, prev = key, self.keys[0]
        while power != self.keys[0]:
            prev = power
            power = self.key_mul(power, key)
        return prev

    # -- element arithmetic ----------------------------------------------

    def index_of(self, key) -> int:
        return self._index[key]

    def check(self, g) -> int:
        if not isinstance(g, (int, np.integer)) or not 0 <= g < self.size:
            raise IndexError(f"{g!r} is not an element index of a group of order {self.size}")
        return int(g)

    def mul(self, g: int, h: int) -> int:
        if self._rows is not None:
            return self._rows[g][h]
        if self.table is not None:
            return int(self.table[g, h])
        return self._index[self.key_mul(self.keys[g], self.keys[h])]

    def inv(self, g: int) -> int:
        return self._inv_list[g]

    def prod(self, elements) -> int:
        acc = self.identity
        for g in elements:
            acc = self.mul(acc, g)
        return acc

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        acc, base = self.identity, g
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def conj(self, g: int, h: int) -> int:
        """g^h = h^-1 g h"""
        return self.mul(self.mul(self.inv(h), g), h)

    def comm(self, g: int, h: int) -> int:
        """[g, h] = g^-1 h^-1 g h"""
        return self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))

    def order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def elements(self) -> range:
        return range(self.size)

    def is_abelian(self) -> bool:
        if self.table is not None:
            return bool(np.array_equal(self.table, self.table.T))
        gens = self.generators
        return all(self.mul(s, t) == self.mul(t, s) for s in gens for t in gens)

    def gen(self, name: str) -> int:
        try:
            return self.named[name]
        except KeyError:
            raise ValueError(f"no generator or marked element named {name!r}") from None

    @property
    def named(self) -> dict[str, int]:
        """Every name usable in element literals: generators plus marked elements."""
        out = dict(zip(self.gen_names, self.generators))
        for k, v in self.marked.items():
            out.setdefault(k, v)
        return out

    def label(self, g: int) -> str:
        """Shortest-word label from the BFS tree, e.g. ``c^2*a``."""
        lab = self._labels.get(g)
        if lab is None:
            word = []
            x = g
            while x != 0:
                word.append(self._via[x])
                x = self._parent[x]
            word.reverse()
            parts = []
            for j, k in _compress(word):
                nm = self.gen_names[j]
                parts.append(nm if k == 1 else f"{nm}^{k}")
            lab = "*".join(parts) if parts else "1"
            self._labels[g] = lab
        return lab

    def right_neighbours(self, g: int) -> list[int]:
        return list(self._right[g])

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.size})"


class WreathProduct:
    """Structural wreath product ``base ≀ top`` (restricted, top finite).

    An element ``(f, t)`` stands for the product ``f * t`` where ``f`` is in
    the base (one coordinate per element of ``top``). Base elements are
    conjugated by top elements via ``(b_y)^t = b_{y t}``, which gives

        (f1, t1)(f2, t2) = (y -> f1(y) * f2(y t1), t1 t2).
    """

    def __init__(self, base, top: FiniteGroup, name: str = ""):
        if not isinstance(top, FiniteGroup):
            raise TypeError("the top group of a wreath product must be enumerated")
        self.base = base
        self.top = top
        self.name = name
        self.n = top.size
        self.identity = WreathElement((base.identity,) * self.n, top.identity)
        self._perm_cache: dict[int, Any] = {}
        self.gen_names, self.generators = self._make_generators()
        self.marked: dict[str, WreathElement] = {}
        self._enumerated: FiniteGroup | None = None

    def _make_generators(self):
        names, gens = [], []
        top_names = set(self.top.gen_names)
        for nm, b in zip(self.base.gen_names, self.base.generators):
            names.append(nm + "_base" if nm in top_names else nm)
            gens.append(self.embed_base(b))
        for nm, t in zip(self.top.gen_names, self.top.generators):
            names.append(nm)
            gens.append(self.embed_top(t))
        return names, gens

    @property
    def size(self) -> int:
        return self.base.size ** self.n * self.n

    def is_enumerable(self, cap: int = ENUM_CAP) -> bool:
        return self.size <= cap

    def _perm(self, t: int):
        """(array, list) with perm[y] = y * t in the top group."""
        p = self._perm_cache.get(t)
        if p is None:
            if self.top.table is not None:
                arr = self.top.table[:, t].astype(np.int64)
            else:
                arr = np.array([self.top.mul(y, t) for y in range(self.n)], dtype=np.int64)
            p = self._perm_cache[t] = (arr, arr.tolist())
        return p

    # -- embeddings and projections ---------------------------------------

    def embed_base(self, b, coord: int | None = None) -> WreathElement:
        """The element b sitting in coordinate ``coord`` (default identity)."""
        coord = self.top.identity if coord is None else coord
        f = [self.base.identity] * self.n
        f[coord] = b
        return WreathElement(tuple(f), self.top.identity)

    def embed_top(self, t: int) -> WreathElement:
        return WreathElement((self.base.identity,) * self.n, t)

    def in_base(self, w: WreathElement) -> bool:
        return w.top == self.top.identity

    def coordinate(self, w: WreathElement, y: int | None = None):
        """Coordinate ``y`` (default the identity of the top) of the base part."""
        return w.base[self.top.identity if y is None else y]

    def project_top(self, w: WreathElement) -> int:
        return w.top

    # -- arithmetic ------------------------------------------------------

    def mul(self, u: WreathElement, v: WreathElement) -> WreathElement:
        perm, perm_list = self._perm(u.top)
        B = self.base
        table = getattr(B, "table", None)
        if table is not None and self.n > 64:
            f2 = np.asarray(v.base, dtype=np.int64)[perm]
            f = table[np.asarray(u.base, dtype=np.int64), f2].tolist()
        else:
            f2 = v.base
            f = [B.mul(x, f2[p]) for x, p in zip(u.base, perm_list)]
        return WreathElement(tuple(f), self.top.mul(u.top, v.top))

    def inv(self, w: WreathElement) -> WreathElement:
        ti = self.top.inv(w.top)
        B = self.base
        f = [B.inv(w.base[p]) for p in self._perm(ti)[1]]
        return WreathElement(tuple(f), ti)

    def prod(self, elements) -> WreathElement:
        acc = self.identity
        for g in elements:
            acc = self.mul(acc, g)
        return acc

    def power(self, g, k: int):
        if k < 0:
            g, k = self.inv(g), -k
        acc, base = self.identity, g
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def conj(self, g, h):
        return self.mul(self.mul(self.inv(h), g), h)

    def comm(self, g, h):
        return self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))

    def order(self, g) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    @property
    def named(self) -> dict[str, WreathElement]:
        out = dict(zip(self.gen_names, self.generators))
        for k, v in self.marked.items():
            out.setdefault(k, v)
        return out

    def label(self, w: WreathElement) -> str:
        """Parseable label: base coordinates as conjugates, then the top part."""
        parts = []
        for y in range(self.n):
            b = w.base[y]
            if b == self.base.identity:
                continue
            lab = self.base.label(b)
            if "*" in lab or "^" in lab:
                lab = f"({lab})"
            parts.append(lab if y == self.top.identity else f"{lab}^({self.top.label(y)})")
        if w.top != self.top.identity:
            parts.append(self.top.label(w.top))
        return "*".join(parts) if parts else "1"

    def enumerate(self, cap: int = ENUM_CAP) -> FiniteGroup:
        """Enumerated form; raises CapacityError above ``cap``."""
        if self._enumerated is None:
            if self.size > cap:
                raise CapacityError(f"wreath product of order {self.size} exceeds cap {cap}")
            G = FiniteGroup.generate(self.generators, self.mul, self.identity,
                                     self.gen_names, inv=self.inv, name=self.name, cap=cap,
                                     marked=self.marked)
            G.structure = self
            self._enumerated = G
        return self._enumerated

    def __repr__(self):
        return f"WreathProduct({self.name or '?'}, base order={self.base.size}, top order={self.n})"


class Subgroup:
    """A subgroup of an enumerated group, members in deterministic BFS order."""

    def __init__(self, parent: FiniteGroup, members: list[int], generators: list[int]):
        self.parent = parent
        self.members = members
        self.generators = generators
        self._set = frozenset(members)

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, g) -> bool:
        return g in self._set

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.size, dtype=bool)
        m[self.members] = True
        return m

    def __repr__(self):
        return f"Subgroup(order={self.size} in {self.parent!r})"


# -- module-level operations --------------------------------------------


def multiply(G: FiniteGroup, g: int, h: int) -> int:
    return G.mul(G.check(g), G.check(h))


def conjugate(G: FiniteGroup, g: int, h: int) -> int:
    return G.conj(G.check(g), G.check(h))


def commutator(G: FiniteGroup, g: int, h: int) -> int:
    return G.comm(G.check(g), G.check(h))


def element_order(G: FiniteGroup, g: int) -> int:
    return G.order(G.check(g))


def generated_subgroup(G: FiniteGroup, gens: Sequence[int], cap: int = ENUM_CAP) -> Subgroup:
    """Closure of ``gens``; members ordered by BFS level, then generator order."""
    gens = [G.check(s) for s in gens]
    members = [G.identity]
    seen = {G.identity}
    queue = deque(members)
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.mul(x, s)
            if y not in seen:
                if len(members) >= cap:
                    raise CapacityError(f"subgroup closure exceeds cap {cap}")
                seen.add(y)
                members.append(y)
                queue.append(y)
    return Subgroup(G, members, gens)


def reduced_closure(G: FiniteGroup, candidates, cap: int = ENUM_CAP) -> Subgroup:
    """Subgroup generated by ``candidates``, keeping only generators that enlarge it."""
    kept: list[int] = []
    members = np.zeros(G.size, dtype=bool)
    members[G.identity] = True
    for s in candidates:
        s = int(s)
        if members[s]:
            continue
        kept.append(s)
        sub = generated_subgroup(G, kept, cap)
        members[:] = False
        members[sub.members] = True
    return generated_subgroup(G, kept, cap)


def enumerate_group(G, cap: int = ENUM_CAP) -> list[int]:
    if isinstance(G, WreathProduct):
        G = G.enumerate(cap)
    if G.size > cap:
        raise CapacityError(f"group of order {G.size} exceeds cap {cap}")
    return list(range(G.size))


def as_finite(G, cap: int = ENUM_CAP) -> FiniteGroup:
    """Enumerated form of ``G``; FiniteGroups pass through."""
    if isinstance(G, FiniteGroup):
        return G
    return G.enumerate(cap)


def validate_group(G: FiniteGroup, seed: int = 0, samples: int = 10**5) -> None:
    """Check the group axioms; raises ValueError on failure.

    With a Cayley table, associativity is checked against every generator
    as right factor (Light's test), which is equivalent to the full check.
    Without one, ``samples`` random triples are drawn.
    """
    e = G.identity
    if G.table is not None:
        T = G.table
        n = G.size
        idx = np.arange(n)
        _require(np.array_equal(T[e], idx) and np.array_equal(T[:, e], idx), "identity")
        inv = G.inverses
        _require(np.all(T[idx, inv] == e) and np.all(T[inv, idx] == e), "inverses")
        for s in G.generators:
            _require(np.array_equal(T[T, s], T[:, T[:, s]]), "associativity")
        for row in T:
            _require(len(np.unique(row)) == n, "latin square")
    else:
        rng = random.Random(seed)
        for g in range(G.size):
            _require(G.mul(e, g) == g == G.mul(g, e), "identity")
            _require(G.mul(g, G.inv(g)) == e == G.mul(G.inv(g), g), "inverses")
        for _ in range(samples):
            x, y, z = (rng.randrange(G.size) for _ in range(3))
            _require(G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z)), "associativity")
    _require(generated_subgroup(G, G.generators).size == G.size, "generators")


def _require(ok, what: str) -> None:
    if not ok:
        raise ValueError(f"group axiom check failed: {what}")
