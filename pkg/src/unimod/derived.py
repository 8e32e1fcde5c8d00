"""Derived series of enumerated groups and commutator-tree membership certificates.

A witness is an expression tree over group elements. Its certified depth is
computed bottom-up: leaves have depth 0, ``comm(u, v)`` has depth
``1 + min(depth u, depth v)``, ``prod`` takes the minimum over its factors and
``inv`` keeps the depth. A tree of depth ``k`` evaluates to an element of the
``k``-th derived subgroup, in any group, which is what lets us certify
membership in groups that are far too large to enumerate.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .groups import (CapacityError, FiniteGroup, Subgroup, WreathProduct,
                     generated_subgroup, reduced_closure)
from .parsing import Parser

INF = math.inf


# -- witnesses -------------------------------------------------------------


class WitnessError(ValueError):
    """A witness tree claims more depth than it certifies."""


@dataclass(frozen=True, eq=False)
class Leaf:
    element: Any
    tag: int | None = None


@dataclass(frozen=True, eq=False)
class Comm:
    left: Any
    right: Any
    tag: int | None = None


@dataclass(frozen=True, eq=False)
class Prod:
    factors: tuple
    tag: int | None = None


@dataclass(frozen=True, eq=False)
class Inv:
    arg: Any
    tag: int | None = None


def _children(w):
    if isinstance(w, Comm):
        return (w.left, w.right)
    if isinstance(w, Prod):
        return w.factors
    if isinstance(w, Inv):
        return (w.arg,)
    return ()


def _postorder(w):
    """Nodes of the DAG rooted at ``w``, children before parents, each once."""
    seen, out = set(), []
    stack = [(w, False)]
    while stack:
        node, done = stack.pop()
        if done:
            out.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for ch in reversed(_children(node)):
            if id(ch) not in seen:
                stack.append((ch, False))
    return out


def witness_depth(w) -> float:
    """Certified depth; raises WitnessError when a node's tag overclaims."""
    depth: dict[int, float] = {}
    for node in _postorder(w):
        if isinstance(node, Leaf):
            d = 0
        elif isinstance(node, Comm):
            d = 1 + min(depth[id(node.left)], depth[id(node.right)])
        elif isinstance(node, Prod):
            d = min((depth[id(f)] for f in node.factors), default=INF)
        elif isinstance(node, Inv):
            d = depth[id(node.arg)]
        else:
            raise WitnessError(f"not a witness node: {node!r}")
        if node.tag is not None and node.tag > d:
            raise WitnessError(f"node tagged depth {node.tag} only certifies depth {d}")
        depth[id(node)] = d
    return depth[id(w)]


def evaluate_witness(w, G):
    val: dict[int, Any] = {}
    for node in _postorder(w):
        if isinstance(node, Leaf):
            v = node.element
        elif isinstance(node, Comm):
            v = G.comm(val[id(node.left)], val[id(node.right)])
        elif isinstance(node, Prod):
            v = G.prod(val[id(f)] for f in node.factors)
        else:
            v = G.inv(val[id(node.arg)])
        val[id(node)] = v
    return val[id(w)]


def check_witness(G, target, w, k: int) -> bool:
    """True iff ``w`` certifies depth >= k and evaluates to ``target`` in ``G``."""
    if witness_depth(w) < k:
        return False
    return evaluate_witness(w, G) == target


def map_leaves(w, f):
    """Copy of ``w`` with every leaf element replaced by ``f(element)``.

    ``f`` may return either an element or a whole witness tree.
    """
    new: dict[int, Any] = {}
    for node in _postorder(w):
        if isinstance(node, Leaf):
            r = f(node.element)
            n = r if isinstance(r, (Leaf, Comm, Prod, Inv)) else Leaf(r)
        elif isinstance(node, Comm):
            n = Comm(new[id(node.left)], new[id(node.right)])
        elif isinstance(node, Prod):
            n = Prod(tuple(new[id(x)] for x in node.factors))
        else:
            n = Inv(new[id(node.arg)])
        new[id(node)] = n
    return new[id(w)]


def format_witness(w, G) -> str:
    def tag(node):
        return f"@{node.tag}" if node.tag is not None else ""

    def go(node):
        if isinstance(node, Leaf):
            return G.label(node.element)
        if isinstance(node, Comm):
            return f"comm{tag(node)}({go(node.left)},{go(node.right)})"
        if isinstance(node, Prod):
            return f"prod{tag(node)}({','.join(go(x) for x in node.factors)})"
        return f"inv{tag(node)}({go(node.arg)})"

    return go(w)


_NODES = {"comm", "prod", "inv"}


def parse_witness(text: str, G):
    """Parse ``comm(u,v)``, ``prod(w1,...)``, ``inv(w)``; optional tags as ``comm@2(...)``."""
    p = Parser(text)
    w = _witness(p, G)
    p.finish()
    return w


def _witness(p: Parser, G):
    tok = p.tok
    nxt = p.tokens[p.i + 1] if p.i + 1 < len(p.tokens) else None
    if (tok.kind == "name" and tok.value in _NODES and nxt is not None
            and nxt.kind == "op" and nxt.value in "(@" and tok.value not in G.named):
        p.i += 1
        tag = None
        if p.accept("@"):
            tag = int(p.expect_kind("int").value)
        p.expect("(")
        args = []
        if not p.at(")"):
            args.append(_witness(p, G))
            while p.accept(","):
                args.append(_witness(p, G))
        close = p.expect(")")
        if tok.value == "comm":
            if len(args) != 2:
                raise p.error("comm takes exactly two arguments", close)
            return Comm(args[0], args[1], tag)
        if tok.value == "inv":
            if len(args) != 1:
                raise p.error("inv takes exactly one argument", close)
            return Inv(args[0], tag)
        return Prod(tuple(args), tag)
    return Leaf(p.element(G))


# -- derived series --------------------------------------------------------


def _require_table(G: FiniteGroup):
    if not isinstance(G, FiniteGroup) or G.table is None:
        raise CapacityError("derived-series computations need an enumerated group with a Cayley table")


def _commutator_matrix(G: FiniteGroup, members: np.ndarray) -> np.ndarray:
    T, inv = G.table, G.inverses
    m = members
    im = inv[m]
    return T[T[im[:, None], im[None, :]], T[m[:, None], m[None, :]]]


@dataclass
class _Level:
    subgroup: Subgroup
    pairs: dict = field(default_factory=dict)  # generator -> (u, v) with [u, v] = generator
    tree: dict = field(default_factory=dict)  # member -> (parent member, generator)


def _commutator_level(G: FiniteGroup, members) -> _Level:
    m = np.asarray(members, dtype=np.int64)
    C = _commutator_matrix(G, m).ravel()
    values, first = np.unique(C, return_index=True)
    order = np.argsort(first, kind="stable")
    candidates = values[order]
    sub = reduced_closure(G, candidates)
    pos = dict(zip(values.tolist(), first.tolist()))
    k = len(m)
    pairs = {s: (int(m[pos[s] // k]), int(m[pos[s] % k])) for s in sub.generators}
    return _Level(sub, pairs, _bfs_tree(G, sub.generators))


def _bfs_tree(G: FiniteGroup, gens) -> dict:
    tree = {G.identity: None}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.mul(x, s)
            if y not in tree:
                tree[y] = (x, s)
                queue.append(y)
    return tree


class DerivedSeries:
    """``G = G^(0) >= G^(1) >= ...`` until two consecutive terms agree."""

    def __init__(self, parent: FiniteGroup, levels: list[_Level]):
        self.parent = parent
        self._levels = levels
        self.levels = [lv.subgroup for lv in levels]
        self._memo: dict = {}

    @property
    def sizes(self) -> list[int]:
        return [s.size for s in self.levels]

    @property
    def solvable(self) -> bool:
        return self.levels[-1].is_trivial()

    @property
    def derived_length(self) -> int | None:
        return len(self.levels) - 1 if self.solvable else None

    def term(self, k: int) -> Subgroup:
        return self.levels[min(k, len(self.levels) - 1)]

    def contains(self, g: int, k: int) -> bool:
        return g in self.term(k)

    def witness(self, g: int, k: int):
        """A witness of depth >= k for ``g``; ValueError if g is not in G^(k)."""
        if not self.contains(g, k):
            raise ValueError(f"{self.parent.label(g)} is not in derived term {k}")
        if k >= len(self.levels):
            if g == self.parent.identity:
                return Prod(())
            raise ValueError("witnesses past the point where the series stabilizes are not supported")
        return self._witness(g, k)

    def _witness(self, g: int, k: int):
        key = (g, k)
        w = self._memo.get(key)
        if w is not None:
            return w
        if k == 0:
            w = Leaf(g)
        elif g == self.parent.identity:
            w = Prod(())
        else:
            level = self._levels[k]
            factors = []
            x = g
            while level.tree[x] is not None:
                x, s = level.tree[x]
                u, v = level.pairs[s]
                factors.append(Comm(self._witness(u, k - 1), self._witness(v, k - 1)))
            factors.reverse()
            w = factors[0] if len(factors) == 1 else Prod(tuple(factors))
        self._memo[key] = w
        return w


def commutator_subgroup(G: FiniteGroup, H: Subgroup | None = None) -> Subgroup:
    """``[H, H]`` (``G'`` when ``H`` is omitted)."""
    _require_table(G)
    members = H.members if H is not None else list(range(G.size))
    return _commutator_level(G, members).subgroup


def derived_series(G: FiniteGroup) -> DerivedSeries:
    _require_table(G)
    cached = getattr(G, "_derived_series", None)
    if cached is not None:
        return cached
    top = generated_subgroup(G, G.generators)
    levels = [_Level(top, {}, {})]
    while True:
        nxt = _commutator_level(G, levels[-1].subgroup.members)
        if nxt.subgroup.size == levels[-1].subgroup.size:
            break
        levels.append(nxt)
        if nxt.subgroup.is_trivial():
            break
    series = DerivedSeries(G, levels)
    G._derived_series = series
    return series


def derived_length(G) -> int | None:
    """Least n with G^(n) trivial, or None if the series stabilizes above 1."""
    return derived_series(G).derived_length


def is_abelian(G) -> bool:
    n = derived_length(G)
    return n is not None and n <= 1


def is_metabelian(G) -> bool:
    n = derived_length(G)
    return n is not None and n <= 2


def is_solvable(G) -> bool:
    return derived_series(G).solvable


def in_derived(G: FiniteGroup, g: int, k: int) -> bool:
    return derived_series(G).contains(G.check(g), k)


# -- certificates for wreath products -----------------------------------------


@dataclass
class LengthCertificate:
    """Exact derived length: an upper bound plus a nontrivial element at depth ``lower - 1``."""

    upper: int
    lower: int
    witness: Any = None
    element: Any = None

    @property
    def exact(self) -> int | None:
        return self.upper if self.upper == self.lower else None


def certify_derived_length(G, search_limit: int = 64) -> LengthCertificate:
    """Derived length of an enumerated group, or of ``C_p wr A`` (``A`` enumerated).

    For a wreath product with abelian base the upper bound is
    ``1 + dl(A)``; the lower bound comes from a chain
    ``beta_{j+1} = [beta_j, t_j]`` with ``t_j`` in ``A^(j)``, starting at a
    base generator, whose last link must be nontrivial.
    """
    if isinstance(G, FiniteGroup):
        n = derived_length(G)
        if n is None:
            raise ValueError("group is not solvable")
        s = derived_series(G)
        if n == 0:
            return LengthCertificate(0, 0)
        g = next(x for x in s.levels[n - 1].members if x != G.identity)
        return LengthCertificate(n, n, s.witness(g, n - 1), g)
    if not isinstance(G, WreathProduct):
        raise TypeError(f"cannot certify derived length of {G!r}")
    B, A = G.base, G.top
    if not (isinstance(B, FiniteGroup) and B.is_abelian() and B.size > 1):
        raise ValueError("certificate needs a nontrivial abelian enumerated base")
    sa = derived_series(A)
    dA = sa.derived_length
    if dA is None:
        raise ValueError("top group is not solvable")
    upper = 1 + dA
    start = G.embed_base(B.generators[0])

    def search(beta, wit, j):
        if j == dA:
            return (beta, wit) if beta != G.identity else None
        cands = [t for t in sa.levels[j].members if t != A.identity][:search_limit]
        for t in cands:
            tw = map_leaves(sa.witness(t, j), G.embed_top)
            nb = G.comm(beta, G.embed_top(t))
            if nb == G.identity:
                continue
            found = search(nb, Comm(wit, tw), j + 1)
            if found is not None:
                return found
        return None

    found = search(start, Leaf(start), 0)
    if found is None:
        return LengthCertificate(upper, 0)
    beta, wit = found
    return LengthCertificate(upper, int(witness_depth(wit)) + 1, wit, beta)
