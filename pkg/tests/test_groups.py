import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from unimod import constructors as C
from unimod.groups import (CapacityError, FiniteGroup, WreathElement, commutator, conjugate,
                           element_order, generated_subgroup, validate_group)


def affine_g42():
    """Independent model of g42: affine maps x -> u*x + v on Z7, composed left to right."""
    def compose(f, g):  # apply f then g
        (u1, v1), (u2, v2) = f, g
        return (u1 * u2 % 7, (u2 * v1 + v2) % 7)
    elems = {(1, 0)}
    frontier = [(1, 0)]
    gens = [(1, 1), (5, 0)]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = compose(f, g)
                if h not in elems:
                    elems.add(h)
                    nxt.append(h)
        frontier = nxt
    return elems, compose


def test_g42_matches_affine_model(G42):
    elems, compose = affine_g42()
    assert len(elems) == G42.size == 42
    c, a = G42.marked["c"], G42.marked["a"]
    # words in c, a map to affine maps; the map G42 -> affine must be a bijective homomorphism
    image = {G42.identity: (1, 0)}
    frontier = [G42.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for gen, aff in ((c, (1, 1)), (a, (5, 0))):
                h = G42.mul(g, gen)
                if h not in image:
                    image[h] = compose(image[g], aff)
                    nxt.append(h)
        frontier = nxt
    assert len(set(image.values())) == 42
    for g, h in itertools.product(range(42), repeat=2):
        assert image[G42.mul(g, h)] == compose(image[g], image[h])


def test_group_axioms_exhaustive(G42):
    G = G42
    e = G.identity
    assert e == 0
    for g in range(G.size):
        assert G.mul(g, e) == G.mul(e, g) == g
        assert G.mul(g, G.inv(g)) == e
    T = G.table
    assert np.array_equal(T[T[:, :, None], np.arange(G.size)[None, None, :]],
                          T[np.arange(G.size)[:, None, None], T[None, :, :]])


def test_conventions(G42):
    G = G42
    c, a = G.marked["c"], G.marked["a"]
    assert G.conj(c, a) == G.mul(G.mul(G.inv(a), c), a)
    assert G.comm(c, a) == G.prod([G.inv(c), G.inv(a), c, a])
    assert G.conj(c, a) == G.power(c, 5)
    assert G.comm(c, a) == G.power(c, 4)
    assert conjugate(G, c, a) == G.conj(c, a)
    assert commutator(G, c, a) == G.comm(c, a)


def test_orders_and_powers(G42):
    G = G42
    c, a = G.marked["c"], G.marked["a"]
    assert element_order(G, c) == 7
    assert G.order(a) == 6
    assert G.power(a, 6) == G.identity
    assert G.power(c, -1) == G.inv(c)
    assert G.power(c, 0) == G.identity
    assert sorted({G.order(g) for g in range(G.size)}) == [1, 2, 3, 6, 7]


@given(st.integers(0, 41), st.integers(-50, 50), st.integers(-50, 50))
def test_power_laws(g, m, n):
    G = C.g42()
    assert G.mul(G.power(g, m), G.power(g, n)) == G.power(g, m + n)
    assert G.power(G.power(g, m), n) == G.power(g, m * n)


def test_check_rejects_bad_index(G42):
    with pytest.raises(IndexError):
        G42.check(42)
    with pytest.raises(IndexError):
        G42.check(-1)


def test_labels_parse_back(G42):
    from unimod.parsing import parse_element
    for g in range(G42.size):
        assert parse_element(G42.label(g), G42) == g


def test_generated_subgroup(G42):
    G = G42
    c, a = G.marked["c"], G.marked["a"]
    assert generated_subgroup(G, [c]).size == 7
    assert generated_subgroup(G, [a]).size == 6
    assert generated_subgroup(G, [c, a]).size == 42
    assert generated_subgroup(G, []).size == 1
    assert G.power(a, 3) in generated_subgroup(G, [a])


def test_capacity_error():
    with pytest.raises(CapacityError):
        FiniteGroup.generate([1], lambda x, y: (x + y) % 100, 0, ["t"], cap=10)


def test_validate_group_catches_nonassociative():
    G = C.cyclic(5)
    validate_group(G)
    G.table = G.table.copy()
    G.table[1, 2], G.table[1, 3] = G.table[1, 3], G.table[1, 2]
    with pytest.raises(ValueError):
        validate_group(G)


def test_wreath_multiplication_against_independent_formula(W3):
    B = C.cyclic(2, "b")
    top = C.iterated_wreath_dl(2)
    W = C.wreath(B, top)
    rng = np.random.default_rng(0)
    n = top.size
    for _ in range(300):
        f1, f2 = rng.integers(0, 2, n), rng.integers(0, 2, n)
        t1, t2 = rng.integers(0, n, 2)
        u = WreathElement(tuple(int(x) for x in f1), int(t1))
        v = WreathElement(tuple(int(x) for x in f2), int(t2))
        got = W.mul(u, v)
        expect = [f1[y] ^ f2[top.mul(y, int(t1))] for y in range(n)]
        assert list(got.base) == expect
        assert got.top == top.mul(int(t1), int(t2))
        assert W.mul(u, W.inv(u)) == W.identity


def test_w3_table_matches_vectorized_oracle(W3):
    """All 2048^2 products of the enumerated W3 agree with the coordinate formula."""
    top = C.iterated_wreath_dl(2)
    n = top.size
    assert W3.size == 2048
    base = np.array([list(k.base) for k in W3.keys], dtype=np.int64)  # (2048, n) bits
    tops = np.array([k.top for k in W3.keys], dtype=np.int64)
    weights = 1 << np.arange(n)
    lookup = np.full((1 << n) * n, -1, dtype=np.int64)
    lookup[(base @ weights) * n + tops] = np.arange(2048)
    assert np.all(lookup[(base @ weights) * n + tops] >= 0)
    shift = top.table.T  # shift[t, y] = y * t
    for i in range(0, 2048, 256):
        rows = slice(i, i + 256)
        idx = shift[tops[rows]]  # (256, n)
        moved = base[:, idx].transpose(1, 0, 2)  # moved[r, s, y] = f_s(y * t_r)
        bits = base[rows, None, :] ^ moved
        prodtop = top.table[tops[rows, None], tops[None, :]]
        expect = lookup[(bits @ weights) * n + prodtop]
        assert np.array_equal(W3.table[rows], expect)
