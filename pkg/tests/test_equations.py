import random

import pytest
from hypothesis import given, strategies as st

from unimod import constructors as C
from unimod.equations import (Embedding, EquationWord, GroupMismatchError, PreconditionError,
                              brute_force_solve, evaluate, exponent_sum, hope_check,
                              is_unimodular, metabelian_obstruction, obstruction_element,
                              parse_word, solve_abelian, standard_equation)
from unimod.parsing import ParseError, parse_element

G42_ = C.g42()
STANDARD_WORD = "x * x^-(a) * x^(a^2) * c^-1"


def test_parse_standard_equation():
    G = G42_
    w = parse_word(STANDARD_WORD, G)
    c, a = G.marked["c"], G.marked["a"]
    assert w == standard_equation(G, a, c)
    assert parse_word("x * x^-(a) * x^(a^2) = c", G) == w
    assert exponent_sum(w) == 1 and is_unimodular(w)


def test_parse_shapes():
    G = C.cyclic(5, "g1")
    const = parse_word("g1", G)
    assert not const.has_variable()
    w = parse_word("x^2 * g1 * x^-4", G)
    assert [v for k, v in w.factors if k == "x"] == [2, -4]
    assert exponent_sum(w) == -2 and not is_unimodular(w)
    assert exponent_sum(parse_word("x^-1 * g1 * x * g1", G)) == 0


def test_parse_errors():
    with pytest.raises(ParseError) as info:
        parse_word("x * q", G42_)
    assert info.value.pos == 4
    with pytest.raises(ParseError):
        parse_word("x * * c", G42_)
    with pytest.raises(ValueError):
        parse_word("x", C.cyclic(3, "x"))


def test_canonical_form_merges():
    G = G42_
    c = G.marked["c"]
    w = EquationWord.make(G, [("x", 2), ("x", -2), ("c", c), ("c", G.inv(c)), ("x", 1)])
    assert w.factors == (("x", 1),)


def test_evaluate_examples():
    G = G42_
    c = G.marked["c"]
    w = parse_word(STANDARD_WORD, G)
    # c^(1 - 5 + 25) * c^-1 = c^21 * c^-1 = c^-1
    assert evaluate(w, c) == G.inv(c)
    assert evaluate(parse_word("c", G), G.marked["a"]) == c
    Z5 = C.cyclic(5)
    assert evaluate(parse_word("x * t^3", Z5), Z5.power(Z5.gen("t"), 2)) == Z5.identity


def test_brute_force_examples():
    G = G42_
    w = parse_word(STANDARD_WORD, G)
    assert brute_force_solve(w) == []
    assert all(evaluate(w, x) != G.identity for x in range(42))
    Z5 = C.cyclic(5)
    assert brute_force_solve(parse_word("x * t^3", Z5)) == [Z5.power(Z5.gen("t"), 2)]
    assert brute_force_solve(parse_word("x * x^-1 * c", G).inverse() * parse_word("c", G)) \
        == list(range(42))
    assert brute_force_solve(parse_word("x = c", G)) == [G.marked["c"]]


def test_solve_in_overgroup_via_embedding():
    G = G42_
    W = C.wreath(C.cyclic(1, "b"), G).enumerate()
    emb = Embedding(G, W, lambda g: W.index_of(C.wreath(C.cyclic(1, "b"), G).embed_top(g)))
    w = parse_word(STANDARD_WORD, G)
    assert brute_force_solve(w, W, emb) == []
    with pytest.raises(GroupMismatchError):
        brute_force_solve(w, W)


def test_solve_abelian_examples():
    Z5 = C.cyclic(5)
    t = Z5.gen("t")
    assert solve_abelian(parse_word("x * t^3", Z5)) == Z5.power(t, 2)
    Z6 = C.cyclic(6)
    w = parse_word("x * t^2 * x * t^3 * x^-1", Z6)
    x = solve_abelian(w)
    assert x == Z6.gen("t")
    assert x in brute_force_solve(w)
    w = parse_word("x^-1 * t^2 * t", Z6)
    assert solve_abelian(w) == Z6.power(Z6.gen("t"), 3)
    with pytest.raises(PreconditionError):
        solve_abelian(parse_word("x^2 * t", Z6))
    with pytest.raises(PreconditionError):
        solve_abelian(parse_word("x * c", G42_))


@given(st.integers(1, 12), st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 11)), max_size=6),
       st.sampled_from([1, -1]))
def test_solve_abelian_property(n, parts, s):
    A = C.cyclic(n)
    t = A.gen("t")
    factors = []
    for e, k in parts:
        factors += [("x", e), ("c", A.power(t, k))]
    total = sum(e for e, _ in parts)
    factors.append(("x", s - total))
    w = EquationWord.make(A, factors)
    x = solve_abelian(w)
    assert evaluate(w, x) == A.identity
    assert x in brute_force_solve(w)


@given(st.lists(st.one_of(st.tuples(st.just("x"), st.integers(-4, 4).filter(bool)),
                          st.tuples(st.just("c"), st.integers(0, 41))), max_size=8),
       st.integers(0, 41), st.integers(0, 41))
def test_word_invariants(factors, xhat, u):
    G = G42_
    w = EquationWord.make(G, factors)
    assert w.exponent_sum() == sum(v for k, v in factors if k == "x")
    assert evaluate(w.inverse(), xhat) == G.inv(evaluate(w, xhat))
    conj = EquationWord.make(G, [("c", G.inv(u))] + list(w.factors) + [("c", u)])
    assert conj.exponent_sum() == w.exponent_sum()
    assert evaluate(conj, xhat) == G.conj(evaluate(w, xhat), u)


def test_obstruction_examples():
    G = G42_
    c, a = G.marked["c"], G.marked["a"]
    rep = metabelian_obstruction(G, a, c)
    assert rep.g == G.power(c, 5)
    assert rep.verdict == "unsolvable in metabelian groups"
    assert not rep.g_equals_c
    R = C.remark_group(3)
    rep = metabelian_obstruction(R, R.marked["a"], R.marked["b"])
    assert rep.g == parse_element("b^4*d^2", R) == parse_element("b*d^2", R)
    assert rep.unsolvable_in_metabelian
    G3 = C.g42(3)
    rep = metabelian_obstruction(G3, G3.marked["a"], G3.marked["c"])
    assert rep.g == G3.marked["c"] and rep.g_equals_c
    assert (1 + 3 - 27 - 81) % 7 == 1


def test_obstruction_reports_failed_hypotheses():
    G = G42_
    rep = metabelian_obstruction(G, G.marked["a"], G.marked["a"])
    assert not rep.hypotheses["c in G'"]
    assert rep.verdict.startswith("hypotheses fail")
    W = C.iterated_wreath_dl(3)
    rep = metabelian_obstruction(W, W.generators[0], W.identity)
    assert not rep.hypotheses["metabelian"]


def test_hope_examples():
    G = G42_
    c, a = G.marked["c"], G.marked["a"]
    rep = hope_check(G, a, c)
    assert rep.order_g == 7 and rep.gcd_order_g_6 == 1
    assert rep.fourfold == G.power(c, 4)
    assert rep.conclusion_holds and rep.twisted_g_trivial and rep.g_a3_is_inverse
    for n in (3, 4):
        R = C.remark_group(n)
        rep = hope_check(R, R.marked["a"], R.marked["b"])
        assert not rep.hypotheses_hold
        assert not rep.hypotheses["order(c) coprime to 6"]
        assert rep.g != R.identity and rep.fourfold == R.identity


def test_obstruction_facts_in_g42():
    G = G42_
    c, a = G.marked["c"], G.marked["a"]
    g = obstruction_element(G, a, c)
    assert g != c
    assert G.conj(g, G.power(a, 3)) == G.inv(g)


def test_contrapositive_small_family():
    rng = random.Random(0)
    groups = [C.metacyclic(m, 6, r) for m, r in ((7, 3), (7, 2), (9, 2), (13, 4), (13, 3))]
    groups += [C.remark_group(n) for n in (2, 3)]
    seen_solvable = False
    for G in groups:
        from unimod.derived import derived_series
        D = derived_series(G).term(1)
        pairs = [(a, c) for a in range(G.size) if G.power(a, 6) in D for c in D.members]
        for a, c in rng.sample(pairs, min(30, len(pairs))):
            if brute_force_solve(standard_equation(G, a, c)):
                seen_solvable = True
                assert obstruction_element(G, a, c) == G.identity
    assert seen_solvable
