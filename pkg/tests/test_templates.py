import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schreierlab import algebra as A
from schreierlab import catalogue as C
from schreierlab import templates as T
from schreierlab.errors import BadSums, NoUniformK

D10 = A.dihedral(10)
Q8 = A.quaternion()


def star_scalar(g, t, x, y):
    acc = g.identity
    for k, l in t.pairs:
        acc = g.mul(acc, g.power(x, k), g.power(y, l))
    return acc


# ---------------------------------------------------------------- normal form


@pytest.mark.parametrize("text,expected", [
    ("x y", "x y"),
    ("y x", "y x"),
    ("x^-1 y x^2", "x^-1 y x^2"),
    ("x x^0 y", "x y"),
    ("x^2 x^-1 y", "x y"),
    ("x y y^-1 y", "x y"),
    ("y^2 x y^-1", "y^2 x y^-1"),
])
def test_normal_form(text, expected):
    assert str(T.parse_template(text)) == expected


def test_named_templates():
    assert T.SIMPLE.pairs == ((-1, 1), (2, 0))
    assert str(T.ENGEL_SQUARE) == "x y x^-1 y^-1 x y x^-1 y^-1 x y"
    assert T.DIRECT.length == 2 and T.TWISTED.pairs == ((0, 1), (1, 0))


@pytest.mark.parametrize("text", ["x", "x^2 y", "y^-1 x", "x y x"])
def test_bad_sums(text):
    with pytest.raises(BadSums):
        T.parse_template(text)


syllables = st.lists(st.tuples(st.sampled_from("xy"), st.integers(-3, 3)), max_size=8)


@settings(max_examples=200, deadline=None)
@given(syllables)
def test_normalize_idempotent_and_value_preserving(syl):
    sx = sum(e for s, e in syl if s == "x")
    sy = sum(e for s, e in syl if s == "y")
    syl = syl + [("x", 1 - sx), ("y", 1 - sy)]
    t = T.normalize(syl)
    assert T.parse_template(str(t)) == t
    assert T.normalize(t.pairs) == t
    # the reduced word evaluates like the raw one
    x, y = D10.index("a"), D10.index("b")
    raw = D10.identity
    for s, e in syl:
        raw = D10.mul(raw, D10.power(x if s == "x" else y, e))
    assert star_scalar(D10, t, x, y) == raw


def test_enumeration_count_and_order():
    ts = list(T.enumerate_templates(6, 3))
    assert len(ts) == 1092
    assert len(set(ts)) == len(ts)
    assert str(ts[0]) == "x y" and str(ts[1]) == "y x"
    assert all(t.length <= 6 and all(abs(e) <= 3 for _, e in t.syllables) for t in ts)
    assert len(list(T.enumerate_templates(2, 1))) == 2


# ---------------------------------------------------------------- induced operations


@pytest.mark.parametrize("g", [D10, Q8], ids=["D10", "Q8"])
def test_induced_op_matches_scalar(g):
    for t in (T.SIMPLE, T.TWISTED, T.ENGEL_SQUARE):
        op = T.induced_op(g, t)
        for x in g:
            for y in g:
                assert op(x, y) == star_scalar(g, t, x, y)


@pytest.mark.parametrize("g", [D10, Q8], ids=["D10", "Q8"])
def test_engel_square_is_commutator_power(g):
    assert np.array_equal(T.induced_op(g, T.ENGEL_SQUARE).star, T.commutator_power_op(g, 2).star)
    c = g.commutator_table
    for x in g:
        for y in g:
            cc = c[x, y]
            assert T.commutator_power_op(g, 2)(x, y) == g.mul(cc, cc, x, y)


def test_d10_simple_is_latin_and_special():
    op = T.induced_op(D10, T.SIMPLE)
    assert T.is_latin_square(op.star)
    r = T.special_wrt(D10, op)
    assert r.is_special and all(T.loop_axioms(op, r.q).values())


def test_d10_engel_square_not_special():
    op = T.commutator_power_op(D10, 2)
    r = T.special_wrt(D10, op)
    assert not r.is_special
    y, z1, z2 = r.witness
    assert op(z1, y) == op(z2, y) and z1 != z2
    b = D10.index("b")
    cands = r.solutions(op, D10.identity, b)
    assert [D10.label(z) for z in cands] == ["b", "ab", "a^2b", "a^3b", "a^4b"]


def test_loop_axioms_detect_wrong_q():
    op = T.induced_op(Q8, T.DIRECT)
    q = np.zeros((8, 8), dtype=np.int64)
    assert not T.loop_axioms(op, q)["iSs1"]


# ---------------------------------------------------------------- 2-Engel


@pytest.mark.parametrize("name,expected", [("Q8", True), ("D8", True), ("S3", False), ("D10", False), ("C2xC4", True), ("C5", True)])
def test_engel_classification(name, expected):
    g = C.builtin_catalogue()[name]
    rep = T.is_2engel(g)
    assert rep.is_2engel == expected and rep.consistent
    assert T.binary_commutators_distribute(g)[0] == expected
    eq = T.simple_t_engel_equivalence(g)
    assert eq["agree"] and eq["identity_holds"] == expected


def test_d10_engel_witness():
    rep = T.is_2engel(D10)
    x, y = rep.witnesses[T.ENGEL_CONDITIONS[0]]
    assert (D10.label(x), D10.label(y)) == ("a", "b")
    p = T.engel_pair(D10, D10.index("a"), D10.index("ab"))
    assert D10.label(p["commutator"]) == "a^2"
    assert D10.label(p["commutator_times_y"]) == "a^3b"
    assert D10.label(p["y_times_commutator"]) == "a^4b"
    assert not p["commute"]


@pytest.mark.parametrize("g", [Q8, A.dihedral(8), A.cyclic(4)], ids=["Q8", "D8", "C4"])
def test_star_coefficient_matches_bruteforce(g):
    for t in list(T.enumerate_templates(4, 2))[:60] + [T.SIMPLE, T.ENGEL_SQUARE]:
        assert T.engel_star_coefficient(g, t) == T.engel_star_coefficient_bruteforce(g, t)


def test_q8_simple_coefficient_is_zero():
    assert T.engel_star_coefficient(Q8, T.SIMPLE) == 0


def test_no_uniform_k_outside_2engel():
    with pytest.raises(NoUniformK):
        T.engel_star_coefficient(D10, T.SIMPLE)
    assert T.engel_star_coefficient_bruteforce(D10, T.SIMPLE) is None


def test_commutator_exponent():
    assert T.commutator_exponent(Q8) == 2
    assert T.commutator_exponent(A.cyclic(6)) == 1
    assert T.commutator_exponent(D10) == 5


# ---------------------------------------------------------------- sweeps


def test_q8_sweep_complete():
    sw = T.special_for_all_templates(Q8, 4, 2)
    assert sw.is_2engel and sw.complete and sw.all_special
    assert sw.k_reduction == {0: True, 1: True}


def test_d10_sweep_bounded_only():
    sw = T.special_for_all_templates(D10, 3, 3)
    assert not sw.complete and sw.k_reduction is None
    assert not sw.all_special
    assert next(t for t, ok in sw.results if not ok) == "x^-2 y x^3"


def test_search_counterexamples_keys_and_workers():
    ts = list(T.enumerate_templates(3, 2))
    serial = list(T.search_counterexamples([D10, Q8], ts))
    parallel = list(T.search_counterexamples([D10, Q8], ts, workers=2))
    assert sorted(f.key for f in serial) == sorted(f.key for f in parallel)
    assert {f.key: f.special for f in serial} == {f.key: f.special for f in parallel}
    assert all(f.witness is not None for f in serial if not f.special)
    assert list(T.search_counterexamples([], ts)) == []
