"""Exit criteria, one test per criterion, each under its time budget.

Every test records a pass/fail line that the terminal summary prints.
"""

import io
import os
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE
from schreierlab import algebra as A
from schreierlab import catalogue as C
from schreierlab import cli, lie, psetop
from schreierlab import schreier as S
from schreierlab import templates as T
from schreierlab.special import agreement

pytestmark = pytest.mark.acceptance
ROOT = Path(__file__).resolve().parents[1]


@contextmanager
def criterion(n, what, budget):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        secs = time.perf_counter() - t0
        within = secs < budget
        ACCEPTANCE[n] = (ok and within, f"{what} [budget {budget:g} s]", secs)
    assert within, f"criterion {n} took {secs:.2f} s, budget {budget} s"


def cli_out(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    assert code == 0, err.getvalue()
    return out.getvalue()


def test_1_d10_reproduction():
    with criterion(1, "D10: Engel witness, simple template Latin, [x,y]^2xy not special", 1.0):
        g = A.dihedral(10)
        a, ab, b = g.index("a"), g.index("ab"), g.index("b")
        rep = T.is_2engel(g)
        assert not rep.is_2engel
        x, y = rep.witnesses[T.ENGEL_CONDITIONS[0]]
        assert g.mul(g.commutator_table[x, y], y) != g.mul(y, g.commutator_table[x, y])
        # the displayed pair: [a,ab] = a^2, [a,ab]ab = a^3b != a^4b = ab[a,ab]
        p = T.engel_pair(g, a, ab)
        assert [g.label(p[k]) for k in ("commutator", "commutator_times_y", "y_times_commutator")] == ["a^2", "a^3b", "a^4b"]
        assert "[a,ab] = a^2, [a,ab]ab = a^3b != a^4b = ab[a,ab]" in cli_out("engel", "D10", "--pair", "a,ab")

        op = T.induced_op(g, T.SIMPLE)
        assert op.star.shape == (10, 10) and T.is_latin_square(op.star)
        assert T.special_wrt(g, op).is_special

        op2 = T.commutator_power_op(g, 2)
        assert np.array_equal(op2.star, T.induced_op(g, T.ENGEL_SQUARE).star)
        r = T.special_wrt(g, op2)
        assert not r.is_special
        cands = [g.label(z) for z in r.solutions(op2, g.identity, b)]
        assert cands == ["b", "ab", "a^2b", "a^3b", "a^4b"]


def test_2_engel_classification():
    with criterion(2, "2-Engel classification with all equivalent conditions agreeing", 1.0):
        cat = C.builtin_catalogue()
        expected = {"Q8": True, "D8": True, "S3": False}
        for name, g in C.groups().items():
            rep = T.is_2engel(g)
            assert rep.consistent, name
            assert T.binary_commutators_distribute(g)[0] == rep.is_2engel, name
            assert T.simple_t_engel_equivalence(g)["agree"], name
            if g.is_commutative:
                assert rep.is_2engel, name
        for name, want in expected.items():
            assert T.is_2engel(cat[name]).is_2engel == want, name


def test_3_all_templates_q8_d8():
    with criterion(3, "Q8, D8 special for all templates: k-reduction and 1092 enumerated (L=6, E=3)", 60.0):
        for g in (A.quaternion(), A.dihedral(8)):
            sw = T.special_for_all_templates(g, 6, 3)
            assert sw.count == 1092
            assert sw.is_2engel and sw.complete
            assert all(sw.k_reduction.values())
            assert all(ok for _, ok in sw.results)


def test_4_simple_star_coefficient():
    with criterion(4, "engel_star_coefficient(Q8, simple) equals brute-force oracle", 1.0):
        g = A.quaternion()
        k = T.engel_star_coefficient(g, T.SIMPLE)
        assert k == T.engel_star_coefficient_bruteforce(g, T.SIMPLE)
        c = g.commutator_table
        pairs = 0
        for x in g:
            for y in g:
                lhs = g.mul(g.power(int(c[x, y]), k), x, y)
                rhs = g.mul(g.inv(x), y, x, x)
                assert lhs == rhs
                pairs += 1
        assert pairs == 64


def test_5_schreier_property_suite():
    with criterion(5, "S1-S7 and unique q on >= 50 Schreier points; witnesses on >= 10 non-Schreier", 30.0):
        good = C.schreier_extensions()
        assert len(good) >= 50
        for name, ext in good:
            assert ext.X.size <= 64, name
            r = S.analyze(ext)
            assert r.is_schreier, name
            assert r.properties.all_hold, (name, r.properties.failures())
            found = S.retractions_satisfying_s1_s2(ext, limit=2)
            assert len(found) == 1 and np.array_equal(found[0], r.q), name
        bad = C.non_schreier_extensions()
        assert len(bad) >= 10
        for name, ext in bad:
            r = S.analyze(ext)
            assert not r.is_schreier, name
            x, mult = r.witness
            assert mult != 1 and r.multiplicity[x] == mult, name


def test_6_stability_suite():
    with criterion(6, "composition, cancellation, pullback stability, split short five lemma", 60.0):
        pairs = C.composable_pairs()
        for name, inner, outer in pairs:
            assert S.analyze(inner).is_schreier and S.analyze(outer).is_schreier, name
            assert S.analyze(S.compose_points(inner, outer)).is_schreier, name
        # the cancellation direction on every composable pair of split epis between small monoids
        small = [C.builtin_catalogue()[n] for n in ("C1", "C2", "C4", "Semilattice2", "Chain3")]
        checked = 0
        for X in small:
            for Y in small:
                for Z in small:
                    if Y.size > X.size or Z.size > Y.size:
                        continue
                    for inner in C.split_epis(X, Y):
                        for outer in C.split_epis(Y, Z):
                            if S.analyze(S.compose_points(inner, outer)).is_schreier:
                                assert S.analyze(outer).is_schreier
                                checked += 1
        assert checked > 0

        homs_checked = 0
        monoids = list(C.monoids().values())
        for name, ext in C.schreier_extensions():
            for Z in monoids:
                for g in A.all_homs(Z, ext.Y):
                    pb = S.pullback_point(ext, g)
                    assert S.analyze(pb).is_schreier, (name, Z.name)
                    homs_checked += 1
        assert homs_checked > 0

        morphisms = C.ssfl_morphisms()
        assert len(morphisms) >= 20
        for name, m in morphisms:
            assert S.ssfl_check(m)["failed"] == [], name


def test_7_special_object_agreement():
    with criterion(7, "special monoid verdicts agree; q tables coincide with q(x,1)=x, q(x,x)=1", 10.0):
        for name, m in C.monoids().items():
            r = agreement(m, "right")
            assert r["agree"], name
            if r["schreier_special"]:
                assert r["same_q"], name
                assert r["axioms"]["q(x,1)=x"] and r["axioms"]["q(x,x)=1"], name
                assert r["axioms"]["iL1"] and r["axioms"]["iL2"], name


def test_8_lie_suite():
    with criterion(8, "Lie: 2-Engel algebras carry the loop for all k; sl2 fails", 10.0):
        cat = C.builtin_catalogue()
        sol = {k: lie.solve_ansatz(k) for k in lie.K_VALUES}
        for name in ("h3", "free_class2(2)", "free_class2(3)", "abelian3"):
            L = cat[name]
            assert lie.is_2engel_lie(L).is_2engel, name
            for k in lie.K_VALUES:
                r = lie.loop_check_lie(L, k)
                assert r.holds, (name, k)
                assert (r.alpha, r.beta) == sol[k], (name, k)
        sl2 = cat["sl2"]
        rep = lie.is_2engel_lie(sl2)
        assert not rep.is_2engel
        e, f = sl2.basis(0), sl2.basis(1)
        assert sl2.bracket(sl2.bracket(e, f), f) == lie.scale(-2, f)
        x, y, v = rep.direct_witness
        assert (x, y, v) == (e, f, lie.scale(-2, f))
        failing = [lie.loop_check_lie(sl2, k) for k in lie.K_VALUES if k != 0]
        assert all(not r.holds and r.witness is not None for r in failing)


def test_9_psetop_census():
    with criterion(9, "PSet^op census |X| <= 5: verdict equals coproduct shape; special iff |Y| = 1", 30.0):
        c = psetop.classify_all(5)
        assert c.instances > 0
        assert c.all_agree, c.disagreements[:3]
        assert c.special_iff_zero
        assert set(c.special) == {1, 2, 3, 4, 5}


def test_10_determinism():
    with criterion(10, "repeated sweep runs give byte-identical structured reports", 120.0):
        a = cli_out("sweep", "--format", "structured")
        b = cli_out("sweep", "--format", "structured")
        assert a == b
        env = dict(os.environ, PYTHONHASHSEED="12345")
        proc = subprocess.run(
            [sys.executable, "-m", "schreierlab", "sweep", "--format", "structured", "--workers", "2"],
            capture_output=True, text=True, env=env, cwd=ROOT,
        )
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout == a
