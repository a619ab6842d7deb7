import itertools

import pytest

from schreierlab import psetop as P


def test_wedge():
    W, i1, i2 = P.wedge(P.PointedSet(3), P.PointedSet(2))
    assert W.size == 4 and i1 == (0, 1, 2) and i2 == (0, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_monad_laws(n):
    laws = P.PowersetMonad(P.PointedSet(n)).check_laws()
    assert laws["all_hold"]
    assert laws["assoc_mode"] == ("exhaustive" if n <= 3 else "generators+256 samples")


def test_monad_components():
    M = P.PowersetMonad(P.PointedSet(3))
    assert M.eps(2) == 0b101 and M.eps(0) == 0b001
    assert M.delta({0b011, 0b101}) == 0b111
    assert len(M.carrier) == 4 and len(M.carrier2) == 8


def test_split_mono_validation():
    X, Y = P.PointedSet(3), P.PointedSet(2)
    with pytest.raises(ValueError):
        P.PointedSplitMono(X, Y, (0, 1), (0, 0, 1))
    with pytest.raises(ValueError):
        P.PointedSplitMono(X, Y, (0, 0), (0, 1, 0))
    m = P.PointedSplitMono(X, Y, (0, 2), (0, 0, 1))
    assert m.complement == (1,) and m.k == (0, 1, 0) and m.fs == (0, 0, 2)


def test_coproduct_shape_is_schreier():
    m = P.PointedSplitMono(P.PointedSet(3), P.PointedSet(2), (0, 2), (0, 0, 1))
    v = P.analyze_split_mono(m)
    assert v.predicate and v.is_schreier and v.agrees
    assert v.q == {1: 0b011}


def test_non_coproduct_fails_with_witness():
    m = P.PointedSplitMono(P.PointedSet(3), P.PointedSet(2), (0, 2), (0, 1, 1))
    v = P.analyze_split_mono(m)
    assert not v.predicate and not v.is_schreier and v.agrees
    assert v.witness == 1


@pytest.mark.parametrize("nx,ny", [(3, 2), (4, 2), (4, 3)])
def test_prune_does_not_change_verdicts(nx, ny):
    for m in P.split_monos(nx, ny):
        assert P.analyze_split_mono(m, prune=True).is_schreier == P.analyze_split_mono(m, prune=False).is_schreier


def test_split_mono_counts():
    # injections fixing * times free choices of s off the image
    for nx, ny in itertools.product(range(1, 5), repeat=2):
        if ny > nx:
            continue
        inj = 1
        for i in range(ny - 1):
            inj *= nx - 1 - i
        assert len(list(P.split_monos(nx, ny))) == inj * ny ** (nx - ny)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_special_iff_singleton(n):
    assert P.is_special(P.PointedSet(n)).is_schreier == (n == 1)


def test_census_small():
    c = P.classify_all(4)
    assert c.all_agree and c.special_iff_zero
    assert c.instances == sum(len(list(P.split_monos(a, b))) for a in range(1, 5) for b in range(1, a + 1))


def test_census_counts_frozen():
    # coproduct-shaped monos are fixed by the injection alone: (nx-1)!/(nx-ny)! of them
    from math import perm

    c = P.classify_all(5)
    assert (c.instances, c.schreier) == (308, 89)
    assert c.schreier == sum(perm(a - 1, b - 1) for a in range(1, 6) for b in range(1, a + 1))
