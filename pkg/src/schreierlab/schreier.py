"""Points and split extensions of finite monoids.

The central routine is :func:`analyze`, which counts, for every ``x`` in the
middle object, the kernel elements ``a`` with ``x = k(a) . sf(x)``.  The
point is Schreier (right homogeneous) when every count is exactly one; the
unique witnesses form the retraction ``q``.  The mirror count
``x = sf(x) . k(a)`` decides left homogeneity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels as K
from .algebra import (
    FiniteMonoid,
    MonoidHom,
    Submonoid,
    compose,
    generated_submonoid,
    identity_hom,
    kernel,
    kernel_pair,
    pullback,
)
from .errors import AlgebraError, NotAHomomorphism, NotASplitEpi

PROPERTY_NAMES = ("S1", "S2", "S3", "S4", "S5", "S6", "S7")


@dataclass(frozen=True, eq=False)
class Point:
    """A split epimorphism f: X -> Y with chosen section s."""

    f: MonoidHom
    s: MonoidHom

    def __post_init__(self):
        if not (self.f.codomain.same_structure(self.s.domain) and self.s.codomain.same_structure(self.f.domain)):
            raise NotAHomomorphism("f: X -> Y and s: Y -> X do not match up")
        bad = np.flatnonzero(self.f.map[self.s.map] != np.arange(self.f.codomain.size))
        if len(bad):
            raise NotASplitEpi(int(bad[0]))

    @property
    def X(self) -> FiniteMonoid:
        return self.f.domain

    @property
    def Y(self) -> FiniteMonoid:
        return self.f.codomain

    @cached_property
    def sf(self) -> np.ndarray:
        return self.s.map[self.f.map]


@dataclass(frozen=True, eq=False)
class SplitExtension:
    point: Point
    K: Submonoid
    k: MonoidHom

    @property
    def f(self):
        return self.point.f

    @property
    def s(self):
        return self.point.s

    @property
    def X(self):
        return self.point.X

    @property
    def Y(self):
        return self.point.Y

    @property
    def sf(self):
        return self.point.sf


def extension(point: Point) -> SplitExtension:
    ker = kernel(point.f)
    return SplitExtension(point, ker, ker.inclusion)


def split_extension(f: MonoidHom, s: MonoidHom) -> SplitExtension:
    return extension(Point(f, s))


@dataclass
class PropertyReport:
    """Verdicts for S1..S7; a witness is the first failing tuple (None when it holds)."""

    verdicts: dict[str, bool]
    witnesses: dict[str, tuple | None]

    @property
    def all_hold(self) -> bool:
        return all(self.verdicts.values())

    def failures(self) -> dict[str, tuple]:
        return {k: w for k, w in self.witnesses.items() if not self.verdicts[k]}


@dataclass
class SchreierAnalysis:
    multiplicity: np.ndarray
    left_multiplicity: np.ndarray
    is_schreier: bool
    is_left_homogeneous: bool
    q: np.ndarray | None = None          # X -> K, positions inside K.elements
    kq: np.ndarray | None = None         # the same map composed with k (X indices)
    left_q: np.ndarray | None = None
    properties: PropertyReport | None = None
    witness: tuple[int, int] | None = None        # (x, multiplicity) for the first x with count != 1
    left_witness: tuple[int, int] | None = None


def _first_bad(counts):
    bad = np.flatnonzero(counts != 1)
    if len(bad) == 0:
        return None
    x = int(bad[0])
    return x, int(counts[x])


def analyze(ext: SplitExtension) -> SchreierAnalysis:
    """Exhaustive Schreier analysis of a split extension (both homogeneity notions)."""
    table = ext.X.table
    kel = ext.K.elements
    sf = np.ascontiguousarray(ext.sf)
    counts, first = K.decomposition_counts(table, kel, sf, False)
    lcounts, lfirst = K.decomposition_counts(table, kel, sf, True)
    right = bool((counts == 1).all())
    left = bool((lcounts == 1).all())
    out = SchreierAnalysis(
        multiplicity=counts,
        left_multiplicity=lcounts,
        is_schreier=right,
        is_left_homogeneous=left,
        witness=_first_bad(counts),
        left_witness=_first_bad(lcounts),
    )
    if right:
        out.kq = first
        out.q = ext.K.local(first)
        out.properties = verify_properties(ext, out.q)
    if left:
        out.left_q = ext.K.local(lfirst)
    return out


def _witness(mask, *axes):
    bad = np.argwhere(~mask)
    if len(bad) == 0:
        return None
    return tuple(int(axis[i]) for axis, i in zip(axes, bad[0]))


def verify_properties(ext: SplitExtension, q) -> PropertyReport:
    """Scan S1..S7 for a candidate retraction ``q`` (positions in K.elements)."""
    t = ext.X.table
    e = ext.X.identity
    kel = ext.K.elements
    kq = kel[np.asarray(q)]
    sf = ext.sf
    s = ext.s.map
    xs = np.arange(ext.X.size)
    ys = np.arange(ext.Y.size)
    v, w = {}, {}

    m = t[kq, sf] == xs
    v["S1"], w["S1"] = bool(m.all()), _witness(m, xs)

    prod = t[kel[:, None], s[None, :]]
    m = kq[prod] == kel[:, None]
    v["S2"], w["S2"] = bool(m.all()), _witness(m, kel, ys)

    m = kq[kel] == kel
    v["S3"], w["S3"] = bool(m.all()), _witness(m, kel)

    m = kq[s] == e
    v["S4"], w["S4"] = bool(m.all()), _witness(m, ys)

    v["S5"], w["S5"] = bool(kq[e] == e), (None if kq[e] == e else (e,))

    sk = t[s[:, None], kel[None, :]]                 # s(y) k(a), indexed [y, a]
    m = t[kq[sk], s[:, None]] == sk
    v["S6"], w["S6"] = bool(m.all()), _witness(m, ys, kel)

    lhs = kq[t]
    inner = kq[t[sf[:, None], kq[None, :]]]          # q(sf(x) kq(x'))
    rhs = t[kq[:, None], inner]
    m = lhs == rhs
    v["S7"], w["S7"] = bool(m.all()), _witness(m, xs, xs)
    return PropertyReport(v, w)


def retractions_satisfying_s1_s2(ext: SplitExtension, limit: int = 2) -> list[np.ndarray]:
    """Brute-force every q: X -> K with S1 and S2, stopping after ``limit`` hits.

    Independent of :func:`analyze`; used to confirm uniqueness of q.  Exponential
    in general, but S1 fixes the candidate set of each x to its decompositions.
    """
    t = ext.X.table
    kel = ext.K.elements
    cands = [kel[t[kel, ext.sf[x]] == x] for x in range(ext.X.size)]
    if any(len(c) == 0 for c in cands):
        return []
    found = []

    def rec(x, chosen):
        if len(found) >= limit:
            return
        if x == len(cands):
            q = ext.K.local(np.array(chosen))
            if verify_properties(ext, q).verdicts["S2"]:
                found.append(q)
            return
        for a in cands[x]:
            chosen.append(int(a))
            rec(x + 1, chosen)
            chosen.pop()

    rec(0, [])
    return found


def is_strong(p: Point | SplitExtension) -> bool:
    """Kernel and section jointly generate the middle object."""
    ext = p if isinstance(p, SplitExtension) else extension(p)
    gens = np.concatenate([ext.K.elements, np.unique(ext.s.map)])
    return generated_submonoid(ext.X, gens).is_whole()


def pullback_point(ext: SplitExtension, g: MonoidHom) -> SplitExtension:
    """Pull the point back along g: Z -> Y; the section is <1_Z, s g>."""
    pb = pullback(g, ext.f)                    # pairs (z, x) with g(z) = f(x)
    section = pb.pair(identity_hom(g.domain), compose(ext.s, g))
    out = split_extension(pb.p1, section)
    # kernel of the pulled-back point is {(1, a)}; p2 must identify it with K
    image = pb.p2.map[out.K.elements]
    if len(image) != len(ext.K) or not np.array_equal(np.sort(image), ext.K.elements):
        raise AlgebraError("kernel of the pulled-back point is not identified with K")
    return out


def stably_strong_bounded(ext: SplitExtension, homs) -> tuple[bool, int | None]:
    """Strongness of every pullback along the supplied homs into Y.

    Returns (verdict, index of the first failing hom).  This is a bounded check:
    it says nothing about homs outside the list.
    """
    for i, g in enumerate(homs):
        if not is_strong(pullback_point(ext, g)):
            return False, i
    return True, None


def compose_points(inner: SplitExtension | Point, outer: SplitExtension | Point) -> SplitExtension:
    """(f, s) over Y followed by (g, t) over Z gives (g f, s t) over Z."""
    f, s = inner.f, inner.s
    g, t = outer.f, outer.s
    if not f.codomain.same_structure(g.domain):
        raise NotAHomomorphism("inner codomain differs from outer domain")
    return split_extension(compose(g, f), compose(s, t))


# ---------------------------------------------------------------- morphisms of extensions


@dataclass(frozen=True, eq=False)
class ExtensionMorphism:
    """(gamma, g, h) from ``source`` to ``target``; gamma is g restricted to kernels."""

    source: SplitExtension
    target: SplitExtension
    g: MonoidHom
    h: MonoidHom
    gamma: MonoidHom = field(repr=False)


def extension_morphism(source: SplitExtension, target: SplitExtension, g: MonoidHom, h: MonoidHom) -> ExtensionMorphism:
    """Validate the commuting squares and derive gamma."""
    if not np.array_equal(target.f.map[g.map], h.map[source.f.map]):
        raise NotAHomomorphism("f g != h f'")
    if not np.array_equal(g.map[source.s.map], target.s.map[h.map]):
        raise NotAHomomorphism("g s' != s h")
    img = g.map[source.K.elements]
    loc = target.K.local(img)
    if (loc < 0).any():
        raise NotAHomomorphism("g does not send K' into K")
    gamma = MonoidHom(source.K.monoid, target.K.monoid, loc)
    return ExtensionMorphism(source, target, g, h, gamma)


def ssfl_check(m: ExtensionMorphism) -> dict:
    """Truth of the four split-short-five implications on one morphism.

    Surjectivity stands in for regular epimorphism and injectivity for
    monomorphism.  Both rows must be Schreier.
    """
    for side, ext in (("source", m.source), ("target", m.target)):
        if not analyze(ext).is_schreier:
            raise AlgebraError(f"{side} row is not a Schreier extension")
    gs, ys, hs = m.gamma.is_surjective, m.g.is_surjective, m.h.is_surjective
    gi, yi, hi = m.gamma.is_injective, m.g.is_injective, m.h.is_injective
    implications = {
        "g surjective => gamma, h surjective": (not ys) or (gs and hs),
        "gamma, h surjective => g surjective": (not (gs and hs)) or ys,
        "g injective => gamma, h injective": (not yi) or (gi and hi),
        "gamma, h injective => g injective": (not (gi and hi)) or yi,
    }
    return {
        "facts": {
            "gamma_surjective": gs, "g_surjective": ys, "h_surjective": hs,
            "gamma_injective": gi, "g_injective": yi, "h_injective": hi,
        },
        "implications": implications,
        "failed": [k for k, ok in implications.items() if not ok],
    }


def kernel_pair_row(m: ExtensionMorphism) -> SplitExtension:
    """The point Eq(g) -> Eq(h) induced by f' x f' with section s' x s'."""
    eg = kernel_pair(m.g).pullback
    eh = kernel_pair(m.h).pullback
    fprime, sprime = m.source.f.map, m.source.s.map
    phi = eh.pair(
        MonoidHom(eg.monoid, m.source.Y, fprime[eg.pairs[:, 0]]),
        MonoidHom(eg.monoid, m.source.Y, fprime[eg.pairs[:, 1]]),
    )
    sigma = eg.pair(
        MonoidHom(eh.monoid, m.source.X, sprime[eh.pairs[:, 0]]),
        MonoidHom(eh.monoid, m.source.X, sprime[eh.pairs[:, 1]]),
    )
    return split_extension(phi, sigma)


def descent_check(m: ExtensionMorphism) -> dict:
    """Descent of the Schreier property along surjections (g, h).

    Hypotheses: the source row and its kernel-pair row are Schreier and g, h are
    surjective.  Conclusion: the target row is Schreier.
    """
    src = analyze(m.source).is_schreier
    row = analyze(kernel_pair_row(m)).is_schreier
    surj = m.g.is_surjective and m.h.is_surjective
    target = analyze(m.target).is_schreier
    hyp = src and row and surj
    return {
        "source_schreier": src,
        "kernel_pair_row_schreier": row,
        "g_h_surjective": surj,
        "target_schreier": target,
        "hypotheses": hyp,
        "holds": (not hyp) or target,
    }


def is_schreier_special_morphism(f: MonoidHom) -> bool:
    """Whether the kernel-pair point (f1, e_f) is Schreier."""
    kp = kernel_pair(f)
    return analyze(split_extension(kp.f1, kp.e)).is_schreier
