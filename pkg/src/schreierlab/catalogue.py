"""Named algebras and generated families of points for sweeps and tests."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from . import lie
from .algebra import (
    FiniteGroup,
    FiniteMonoid,
    MonoidHom,
    all_homs,
    chain,
    cyclic,
    dihedral,
    direct_product,
    enumerate_monoids,
    full_transformations,
    hom,
    identity_hom,
    is_group,
    product,
    pullback,
    quaternion,
    relabel,
    semilattice,
    symmetric,
    trivial_hom,
    trivial_monoid,
    validate_monoid,
)
from .errors import AlgebraError
from .schreier import (
    SplitExtension,
    analyze,
    extension_morphism,
    pullback_point,
    split_extension,
)
from .special import special_point

MAX_X = 64


def _c(n: int) -> FiniteGroup:
    return relabel(trivial_monoid(), name="C1") if n == 1 else cyclic(n)


@lru_cache(maxsize=None)
def builtin_catalogue() -> dict:
    """Name -> algebra.  Groups and monoids are finite tables; Lie algebras are exact."""
    cat: dict = {f"C{n}": _c(n) for n in range(1, 9)}
    cat["C2xC2"] = direct_product(cyclic(2), cyclic(2))
    cat["C2xC4"] = direct_product(cyclic(2), cyclic(4))
    cat["S3"] = symmetric(3)
    cat["D8"] = dihedral(8)
    cat["D10"] = dihedral(10)
    cat["Q8"] = quaternion()
    cat["Semilattice2"] = semilattice()
    cat["Chain3"] = chain(3)
    cat["T2"] = full_transformations(2)
    cat["h3"] = lie.heisenberg()
    cat["sl2"] = lie.sl2()
    cat["free_class2(2)"] = lie.free_class2(2)
    cat["free_class2(3)"] = lie.free_class2(3)
    cat["abelian3"] = lie.abelian(3)
    return cat


def self_test(cat: dict | None = None) -> list[str]:
    """Re-validate every member from its raw data; returns the names checked."""
    cat = builtin_catalogue() if cat is None else cat
    for name, a in cat.items():
        if isinstance(a, lie.LieAlgebra):
            lie.validate_lie(dict(a.constants), a.dim, a.labels, a.name)
        else:
            m = validate_monoid(np.array(a.table), a.identity, a.labels, a.name)
            if isinstance(a, FiniteGroup) != is_group(m):
                raise AlgebraError(f"{name}: group flag disagrees with the table")
    return list(cat)


def groups(cat: dict | None = None) -> dict[str, FiniteGroup]:
    cat = builtin_catalogue() if cat is None else cat
    return {k: v for k, v in cat.items() if isinstance(v, FiniteGroup)}


def monoids(cat: dict | None = None) -> dict[str, FiniteMonoid]:
    cat = builtin_catalogue() if cat is None else cat
    return {k: v for k, v in cat.items() if isinstance(v, FiniteMonoid)}


def lie_algebras(cat: dict | None = None) -> dict[str, lie.LieAlgebra]:
    cat = builtin_catalogue() if cat is None else cat
    return {k: v for k, v in cat.items() if isinstance(v, lie.LieAlgebra)}


# ---------------------------------------------------------------- points


def product_projection(a: FiniteMonoid, b: FiniteMonoid) -> SplitExtension:
    """A x B -> B with section b -> (1, b)."""
    p = product(a, b)
    s = p.pair(trivial_hom(b, a), identity_hom(b))
    return split_extension(p.pi2, s)


def split_epis(x: FiniteMonoid, y: FiniteMonoid) -> list[SplitExtension]:
    """Every (f, s) with f: X -> Y, s: Y -> X and f s = 1."""
    out = []
    backs = all_homs(y, x)
    ident = np.arange(y.size)
    for f in all_homs(x, y):
        for s in backs:
            if np.array_equal(f.map[s.map], ident):
                out.append(split_extension(f, s))
    return out


def _small_monoids():
    cat = builtin_catalogue()
    return [cat[k] for k in ("C1", "C2", "C3", "C4", "S3", "Semilattice2", "Chain3", "T2")]


@lru_cache(maxsize=None)
def schreier_extensions() -> tuple[tuple[str, SplitExtension], ...]:
    """Product projections, split epis of groups, and pullbacks of those."""
    cat = builtin_catalogue()
    out: list[tuple[str, SplitExtension]] = []
    small = _small_monoids()
    for a, b in itertools.product(small, repeat=2):
        if a.size * b.size <= MAX_X and a.size > 1:
            out.append((f"proj {a.name}x{b.name}->{b.name}", product_projection(a, b)))
    group_pairs = [("S3", "C2"), ("D8", "C2"), ("D10", "C2"), ("C2xC2", "C2"), ("C2xC4", "C2"), ("C2xC4", "C4")]
    for xn, yn in group_pairs:
        for i, e in enumerate(split_epis(cat[xn], cat[yn])):
            out.append((f"group {xn}->{yn} #{i}", e))
    # pullbacks of a few group points along homs into their base
    for xn, yn, zn in (("S3", "C2", "C4"), ("D10", "C2", "C2"), ("D8", "C2", "C2xC2")):
        e = split_epis(cat[xn], cat[yn])[0]
        for j, g in enumerate(all_homs(cat[zn], cat[yn])):
            pb = pullback_point(e, g)
            if pb.X.size <= MAX_X:
                out.append((f"pullback {xn}->{yn} along {zn} #{j}", pb))
    return tuple(out)


@lru_cache(maxsize=None)
def non_schreier_extensions() -> tuple[tuple[str, SplitExtension], ...]:
    """Points whose decompositions fail to be unique; all built on idempotents."""
    out = []
    for n in (2, 3, 4, 5):
        out.append((f"diagonal Chain{n}", special_point(chain(n))))
    out.append(("diagonal T2", special_point(full_transformations(2))))
    s2 = semilattice()
    out.append(("diagonal Semilattice2xC2", special_point(direct_product(s2, cyclic(2)))))
    out.append(("diagonal Semilattice2xSemilattice2", special_point(direct_product(s2, s2))))
    out.append(("flat Chain3 over Semilattice2", flat_point()))
    for i, m in enumerate(x for x in enumerate_monoids(3) if not is_group(x)):
        out.append((f"diagonal monoid3 #{i}", special_point(m)))
    return tuple(out)


def flat_point() -> SplitExtension:
    """X = chain 1 > u > e over Y = {1, e}: f(u) = f(e) = e, s(e) = e.

    The kernel is {1}, yet u has no decomposition k(a) sf(u) = e, so the
    point is not Schreier; it is not strong either.
    """
    x = relabel(chain(3), labels=("1", "u", "e"), name="Chain3")
    y = relabel(semilattice(), labels=("1", "e"))
    f = hom(x, y, [0, 1, 1])
    s = hom(y, x, [0, 2])
    return split_extension(f, s)


@lru_cache(maxsize=None)
def composable_pairs() -> tuple[tuple[str, SplitExtension, SplitExtension], ...]:
    """(inner X -> Y, outer Y -> Z) with both rows Schreier."""
    small = _small_monoids()
    out = []
    for a, b, c in itertools.product(small[1:5] + small[5:6], repeat=3):
        if a.size * b.size * c.size > MAX_X:
            continue
        bc = product(b, c).monoid
        inner = product_projection(a, bc)
        outer = product_projection(b, c)
        out.append((f"{a.name}x({b.name}x{c.name})", inner, outer))
    cat = builtin_catalogue()
    for xn in ("S3", "D8", "D10"):
        to_c2 = split_epis(cat[xn], cat["C2"])[0]
        out.append((f"{xn}->C2->C1", to_c2, split_epis(cat["C2"], cat["C1"])[0]))
    return tuple(out)


@lru_cache(maxsize=None)
def ssfl_morphisms():
    """Morphisms of Schreier extensions.

    Product projections A' x B' -> B' map to A x B -> B through g = alpha x beta,
    h = beta, for every pair of homs; pullback squares give the rest.
    """
    cat = builtin_catalogue()
    out = []
    specs = [("C2", "C2", "C4", "C2"), ("C4", "C2", "C2", "C2"), ("C3", "C2", "S3", "C2"), ("Semilattice2", "C2", "Chain3", "C2"), ("C2", "Semilattice2", "C2", "Chain3")]
    for a1, b1, a, b in specs:
        src = product_projection(cat[a1], cat[b1])
        tgt = product_projection(cat[a], cat[b])
        for alpha in all_homs(cat[a1], cat[a]):
            for beta in all_homs(cat[b1], cat[b]):
                gmap = alpha.map[:, None] * cat[b].size + beta.map[None, :]
                gh = MonoidHom(src.X, tgt.X, gmap.ravel())
                out.append((f"{a1}x{b1}->{a}x{b}", extension_morphism(src, tgt, gh, beta)))
    for xn, yn, zn in (("S3", "C2", "C4"), ("D10", "C2", "C2")):
        e = split_epis(cat[xn], cat[yn])[0]
        for j, g in enumerate(all_homs(cat[zn], cat[yn])):
            pb = pullback_point(e, g)
            p2 = pullback(g, e.f).p2
            out.append((f"pullback square {xn} along {zn} #{j}", extension_morphism(pb, e, p2, g)))
    return tuple(out)


def schreier_count() -> int:
    return sum(analyze(e).is_schreier for _, e in schreier_extensions())
