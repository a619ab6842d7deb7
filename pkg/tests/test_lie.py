import itertools
from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from schreierlab import lie as L
from schreierlab.errors import JacobiFails, NotAntisymmetric

TWO_ENGEL = [L.heisenberg(), L.free_class2(2), L.free_class2(3), L.abelian(3)]


def test_builtin_dimensions():
    assert L.free_class2(2).dim == 3 and L.free_class2(3).dim == 6
    assert L.abelian(3).is_abelian() and not L.sl2().is_abelian()


def test_sl2_brackets():
    A = L.sl2()
    e, f, h = (A.basis(i) for i in range(3))
    assert A.bracket(e, f) == h
    assert A.bracket(h, e) == L.scale(2, e)
    assert A.bracket(h, f) == L.scale(-2, f)
    assert A.bracket(A.bracket(e, f), f) == L.scale(-2, f)


def test_validate_rejects_bad_input():
    with pytest.raises(NotAntisymmetric):
        L.validate_lie({(0, 1): (0, 0, 1), (1, 0): (0, 0, 1)}, 3)
    with pytest.raises(NotAntisymmetric):
        L.validate_lie({(1, 1): (1, 0, 0)}, 3)
    # [e1,e2] = e1, [e2,e3] = e2, [e1,e3] = e3 violates Jacobi
    with pytest.raises(JacobiFails):
        L.validate_lie({(0, 1): (1, 0, 0), (1, 2): (0, 1, 0), (0, 2): (0, 0, 1)}, 3)


def test_validate_accepts_mirror_and_dense():
    a = L.validate_lie({(1, 0): (0, 0, -1)}, 3)
    assert a == L.heisenberg()
    dense = [[(0, 0, 0), (0, 0, 1), (0, 0, 0)], [(0, 0, -1), (0, 0, 0), (0, 0, 0)], [(0, 0, 0)] * 3]
    assert L.validate_lie(dense) == L.heisenberg()


def test_rational_conversions():
    assert L.rational("1/2") == mpq(1, 2)
    assert L.rational(Fraction(-3, 4)) == mpq(-3, 4)
    assert L.rational(5) == mpq(5)


coords = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=3, max_size=3)


@settings(max_examples=80, deadline=None)
@given(coords, coords, coords)
def test_bracket_is_bilinear_alternating_jacobi(x, y, z):
    A = L.sl2()
    x, y, z = (A.vector(v) for v in (x, y, z))
    assert L.is_zero(A.bracket(x, x))
    assert A.bracket(x, y) == L.neg(A.bracket(y, x))
    assert A.bracket(L.add(x, y), z) == L.add(A.bracket(x, z), A.bracket(y, z))
    jac = L.add(A.bracket(x, A.bracket(y, z)), A.bracket(y, A.bracket(z, x)), A.bracket(z, A.bracket(x, y)))
    assert L.is_zero(jac)


@pytest.mark.parametrize("A", TWO_ENGEL, ids=lambda a: a.name)
def test_two_engel_algebras(A):
    rep = L.is_2engel_lie(A)
    assert rep.is_2engel and rep.consistent and rep.polarized_witness is None


def test_sl2_not_two_engel():
    rep = L.is_2engel_lie(L.sl2())
    assert not rep.is_2engel and rep.consistent
    x, y, v = rep.direct_witness
    A = L.sl2()
    assert (A.format(x), A.format(y), A.format(v)) == ("e", "f", "-2f")


@pytest.mark.parametrize("k", L.K_VALUES, ids=str)
def test_ansatz_solution(k):
    assert L.solve_ansatz(k) == (mpq(-1), -k)


@pytest.mark.parametrize("A", TWO_ENGEL, ids=lambda a: a.name)
def test_loop_holds_on_two_engel(A):
    for k in L.K_VALUES:
        r = L.loop_check_lie(A, k)
        assert r.holds and r.witness is None, (A.name, k)
        assert (r.alpha, r.beta) == (mpq(-1), -k)
        assert L.unit_laws(A, k, L.sample_vectors(A.dim))


def test_loop_fails_on_sl2_for_nonzero_k():
    A = L.sl2()
    for k in L.K_VALUES:
        r = L.loop_check_lie(A, k)
        assert r.holds == (k == 0)
        if k:
            x, y, axiom = r.witness
            assert axiom in ("iSs1", "iSs2")
            lhs = L.star(A, k, L.q_ansatz(A, r.alpha, r.beta, x, y), y) if axiom == "iSs1" else L.q_ansatz(A, r.alpha, r.beta, L.star(A, k, x, y), y)
            assert lhs != x


def test_samples_deterministic():
    assert L.sample_vectors(3, seed=7) == L.sample_vectors(3, seed=7)
    assert L.sample_vectors(3, seed=7) != L.sample_vectors(3, seed=8)
    assert len(L.sample_vectors(3)) == 8 + L.SAMPLE_BATCH
    assert all(len(v) == 3 for v in L.sample_vectors(3))
    assert set(itertools.islice(L.sample_vectors(2), 4)) == {tuple(map(mpq, b)) for b in itertools.product((0, 1), repeat=2)}
