import numpy as np
import pytest

from schreierlab import algebra as A
from schreierlab import catalogue as C
from schreierlab.special import agreement, is_protomodular_object_monoid, is_schreier_special, right_loop_structure, special_point

MONOIDS = list(C.monoids().items()) + [(m.name, m) for m in A.enumerate_monoids(3)]


@pytest.mark.parametrize("name,m", MONOIDS, ids=[n for n, _ in MONOIDS])
@pytest.mark.parametrize("orientation", ["right", "left"])
def test_three_verdicts_agree(name, m, orientation):
    r = agreement(m, orientation)
    assert r["agree"]
    if r["group"]:
        assert r["same_q"] and all(r["axioms"].values())
    else:
        assert r["special_witness"] is not None and r["loop_witness"] is not None


def test_group_subtraction_is_division():
    g = A.dihedral(10)
    v = is_schreier_special(g, "right")
    q = v.loop.subtraction
    for x in g:
        for y in g:
            assert q[x, y] == g.mul(x, g.inv(y))
    lq = is_schreier_special(g, "left").loop.subtraction
    for x in g:
        for y in g:
            assert lq[x, y] == g.mul(g.inv(x), y)


def test_semilattice_not_special():
    v = is_schreier_special(A.semilattice())
    assert not v.is_special and v.loop is None
    assert right_loop_structure(A.semilattice()).witness is not None


def test_special_point_shape():
    ext = special_point(A.cyclic(3))
    assert ext.X.size == 9 and len(ext.K) == 3


def test_protomodular_object():
    r = is_protomodular_object_monoid(A.symmetric(3), points=C.split_epis(A.symmetric(3), A.cyclic(2)))
    assert r["is_group"] and r["sweep_all_strong"]
    assert not is_protomodular_object_monoid(A.chain(3))["is_group"]


def test_bad_orientation():
    with pytest.raises(ValueError):
        is_schreier_special(A.cyclic(2), "up")
