import numpy as np
import pytest

from schreierlab import algebra as A
from schreierlab import catalogue as C
from schreierlab import schreier as S
from schreierlab.errors import NotAHomomorphism


def brute_counts(ext, left=False):
    """Decompositions per x by plain loops over the kernel."""
    X = ext.X
    out = []
    for x in X:
        sfx = int(ext.sf[x])
        n = 0
        for a in ext.K.elements:
            prod = X.mul(sfx, int(a)) if left else X.mul(int(a), sfx)
            n += prod == x
        out.append(n)
    return np.array(out)


def s3_sign():
    return C.split_epis(A.symmetric(3), A.cyclic(2))[0]


def test_s3_sign_point_is_schreier():
    ext = s3_sign()
    r = S.analyze(ext)
    assert r.is_schreier and r.is_left_homogeneous
    assert r.properties.all_hold
    assert len(ext.K) == 3
    # q retracts onto the kernel
    assert np.array_equal(ext.K.elements[r.q[ext.K.elements]], ext.K.elements)


def test_flat_point_fails_with_zero_multiplicity():
    ext = C.flat_point()
    r = S.analyze(ext)
    assert not r.is_schreier
    assert r.witness == (1, 0)
    assert not S.is_strong(ext)


def test_semilattice_diagonal_witness():
    from schreierlab.special import special_point

    ext = special_point(A.semilattice())
    r = S.analyze(ext)
    assert not r.is_schreier
    x, mult = r.witness
    assert mult != 1
    assert brute_counts(ext)[x] == mult


@pytest.mark.parametrize("name", [n for n, _ in C.schreier_extensions()[::7]])
def test_counts_match_brute_force(name):
    ext = dict(C.schreier_extensions())[name]
    r = S.analyze(ext)
    assert np.array_equal(r.multiplicity, brute_counts(ext))
    assert np.array_equal(r.left_multiplicity, brute_counts(ext, left=True))


def test_q_unique_by_independent_search():
    for _, ext in C.schreier_extensions()[:20]:
        found = S.retractions_satisfying_s1_s2(ext, limit=2)
        assert len(found) == 1
        assert np.array_equal(found[0], S.analyze(ext).q)


def test_verify_properties_reports_a_broken_q():
    ext = s3_sign()
    q = S.analyze(ext).q.copy()
    q[:] = 0
    rep = S.verify_properties(ext, q)
    assert not rep.verdicts["S1"] and rep.witnesses["S1"] is not None
    assert rep.verdicts["S5"]


def test_composition_and_strongness():
    cat = C.builtin_catalogue()
    inner = s3_sign()
    outer = C.split_epis(cat["C2"], cat["C1"])[0]
    comp = S.compose_points(inner, outer)
    assert S.analyze(comp).is_schreier and S.is_strong(comp)
    with pytest.raises(NotAHomomorphism):
        S.compose_points(outer, inner)


def test_pullback_point_keeps_kernel():
    ext = s3_sign()
    g = A.hom(A.cyclic(4), A.cyclic(2), [0, 1, 0, 1])
    pb = S.pullback_point(ext, g)
    assert pb.X.size == 12 and len(pb.K) == 3
    assert S.analyze(pb).is_schreier
    ok, bad = S.stably_strong_bounded(ext, A.all_homs(A.cyclic(4), A.cyclic(2)))
    assert ok and bad is None


def test_extension_morphism_validation_and_ssfl():
    _, m = C.ssfl_morphisms()[0]
    rep = S.ssfl_check(m)
    assert rep["failed"] == []
    assert set(rep["facts"]) >= {"g_surjective", "gamma_injective"}
    # a morphism whose h is not the trivial map; swapping in the trivial map breaks a square
    _, m = next((n, m) for n, m in C.ssfl_morphisms() if m.h.map.any())
    with pytest.raises(NotAHomomorphism):
        S.extension_morphism(m.source, m.target, m.g, A.trivial_hom(m.source.Y, m.target.Y))


def test_descent_on_pullback_squares():
    for name, m in C.ssfl_morphisms():
        d = S.descent_check(m)
        assert d["holds"], name


def test_schreier_special_morphism():
    assert S.is_schreier_special_morphism(A.permutation_sign(A.symmetric(3)))
    f = A.hom(A.chain(3), A.semilattice(), [0, 1, 1])
    assert not S.is_schreier_special_morphism(f)


def test_semilattice_diagonal_multiplicity_at_aa():
    from schreierlab.special import special_point

    s = A.semilattice()
    ext = special_point(s)
    r = S.analyze(ext)
    a = s.index("a")
    aa = A.product(s, s).index(a, a)
    assert r.multiplicity[aa] == 2
    # pulled back along the trivial monoid only the kernel point is left, which is Schreier
    pb = S.pullback_point(ext, A.trivial_hom(A.trivial_monoid(), s))
    assert S.analyze(pb).is_schreier and pb.X.size == len(ext.K)
