import itertools

import pytest

from unimod import constructors as C
from unimod.constructors import GroupAction, InvalidActionError
from unimod.derived import derived_length, derived_series
from unimod.parsing import parse_element


def test_cyclic():
    assert C.cyclic(1).size == 1
    T7 = C.cyclic(7)
    t = T7.gen("t")
    assert T7.mul(T7.power(t, 3), T7.power(t, 5)) == t
    assert all(T7.order(g) == 7 for g in range(1, 7))
    assert C.cyclic(6).size == 6
    with pytest.raises(ValueError):
        C.cyclic(0)


def test_direct_products():
    K = C.direct_product(C.cyclic(2), C.cyclic(2))
    assert K.size == 4 and K.is_abelian()
    assert all(K.order(g) == 2 for g in range(K.size) if g != K.identity)
    N = C.direct_product(C.cyclic(3), C.cyclic(3))
    assert N.size == 9
    assert max(N.order(g) for g in range(9)) == 3
    T = C.direct_product(C.cyclic(1), C.cyclic(5))
    assert T.size == 5 and T.is_abelian()


def test_g42_semidirect_formula(G42):
    """c^i a^j * c^k a^l = c^(i + k 3^j) a^(j + l), since a c = c^3 a when c^a = c^5."""
    elt = {(i, j): parse_element(f"c^{i}*a^{j}", G42) for i in range(7) for j in range(6)}
    assert len(set(elt.values())) == 42
    for (i, j), (k, l) in itertools.product(elt, repeat=2):
        expect = elt[((i + k * pow(3, j, 7)) % 7, (j + l) % 6)]
        assert G42.mul(elt[i, j], elt[k, l]) == expect


def test_g42_marked(G42):
    c, a = G42.marked["c"], G42.marked["a"]
    assert G42.size == 42
    assert G42.conj(c, a) == G42.power(c, 5)
    # three applications of c -> c^5
    assert G42.conj(c, G42.power(a, 3)) == G42.power(c, 5 ** 3 % 7) == G42.power(c, 6)


def test_semidirect_variants():
    G = C.g42(3)
    assert G.size == 42
    assert pow(3, 6, 7) == 1 and all(pow(3, k, 7) != 1 for k in range(1, 6))
    c, a = G.marked["c"], G.marked["a"]
    assert G.conj(c, a) == G.power(c, 3)
    B, A = C.cyclic(7, "c"), C.cyclic(6, "a")
    D = C.semidirect(B, A, GroupAction.trivial(B, A))
    assert D.size == 42 and D.is_abelian()


def test_invalid_action_rejected():
    B = C.cyclic(7, "c")
    with pytest.raises(InvalidActionError):
        GroupAction.power(B, C.cyclic(5, "a"), 2)  # 2 has order 3 mod 7, which does not divide 5
    with pytest.raises(InvalidActionError):
        GroupAction.power(B, C.cyclic(6, "a"), 0)  # not an automorphism


def test_action_is_right_action():
    B, A = C.cyclic(7, "c"), C.cyclic(6, "a")
    act = GroupAction.power(B, A, 5)
    for a1, a2, b in itertools.product(range(6), range(6), range(7)):
        assert act(A.mul(a1, a2), b) == act(a2, act(a1, b))
    assert act.order_of(A.gen("a")) == 6


def test_wreath_c2_c2_is_dihedral():
    W = C.wreath(C.cyclic(2, "b"), C.cyclic(2, "a")).enumerate()
    assert W.size == 8
    assert derived_series(W).sizes == [8, 2, 1]
    assert sorted(W.order(g) for g in range(8)) == [1, 2, 2, 2, 2, 2, 4, 4]


def test_wreath_trivial_base():
    W = C.wreath(C.cyclic(1, "b"), C.cyclic(6, "a"))
    E = W.enumerate()
    assert E.size == 6 and E.is_abelian()


def test_wreath_coordinate_shift(G42):
    W = C.wreath(C.cyclic(2, "b"), G42)
    b = W.base.gen("b")
    for y in range(G42.size):
        for t in range(G42.size):
            moved = W.conj(W.embed_base(b, y), W.embed_top(t))
            assert moved == W.embed_base(b, G42.mul(y, t))


def test_remark_group():
    for n in (2, 3, 4, 5):
        R = C.remark_group(n)
        assert R.size == 6 * n * n
        a, b, d = (R.marked[k] for k in "abd")
        assert R.conj(b, a) == R.mul(b, d)
        assert R.conj(d, a) == R.inv(b)
        assert R.order(a) == 6
        assert derived_length(R) == 2
    R = C.remark_group(3)
    assert R.size == 54


def test_iterated_wreath_orders():
    expected = {0: 1, 1: 2, 2: 8, 3: 2048}
    for k, size in expected.items():
        W = C.iterated_wreath_dl(k)
        assert W.size == size
        assert derived_length(W) == k
    W4 = C.iterated_wreath_dl(4)
    assert W4.size == 2 ** 2048 * 2048


def test_metacyclic():
    G = C.metacyclic(13, 6, 4)
    c, a = G.marked["c"], G.marked["a"]
    assert G.size == 78
    assert G.conj(c, a) == G.power(c, 4)
    assert C.is_unit_exponent_of_order(4, 13, 6)
    assert not C.is_unit_exponent_of_order(5, 13, 6)
