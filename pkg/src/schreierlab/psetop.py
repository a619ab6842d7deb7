"""Pointed sets, the power-set monad, and intrinsic Schreier split monos.

Working in pointed sets directly: a split epimorphism of the opposite
category is a split mono f: Y -> X with retraction s, and its kernel is the
cokernel k: X -> K = (X minus f(Y)) + {*}.  An imaginary retraction is a
pointed map q: K -> P(X).  Subsets of X are bitmasks that always contain
the basepoint bit; families of subsets are frozensets of such masks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

DEFAULT_MAX_SIZE = 4
LAW_CHECK_MAX = 4     # P^2 of a 5-element set already has 2^15 members


@dataclass(frozen=True)
class PointedSet:
    size: int
    basepoint: int = 0
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1 or not 0 <= self.basepoint < self.size:
            raise ValueError(f"basepoint {self.basepoint} out of range for size {self.size}")
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError("labels length must equal size")

    def label(self, i: int) -> str:
        if self.labels:
            return self.labels[i]
        return "*" if i == self.basepoint else str(i)

    def format_subset(self, mask: int) -> str:
        return "{" + ",".join(self.label(i) for i in range(self.size) if mask >> i & 1) + "}"


def wedge(a: PointedSet, b: PointedSet) -> tuple[PointedSet, tuple[int, ...], tuple[int, ...]]:
    """Coproduct A + B: basepoints glued.  Returns (A+B, iota1, iota2) as index maps."""
    n = a.size + b.size - 1
    i1, i2 = [0] * a.size, [0] * b.size
    nxt = 1
    for x in range(a.size):
        if x != a.basepoint:
            i1[x] = nxt
            nxt += 1
    for y in range(b.size):
        if y != b.basepoint:
            i2[y] = nxt
            nxt += 1
    return PointedSet(n, 0), tuple(i1), tuple(i2)


# ---------------------------------------------------------------- the power-set monad


class PowersetMonad:
    """P(X) = subsets containing the basepoint, eps(x) = {x, *}, delta = union.

    ``P2`` elements are frozensets of masks, ``P3`` elements frozensets of
    those; the basepoints are ``{*}``, ``{{*}}`` and ``{{{*}}}``.
    """

    def __init__(self, X: PointedSet):
        self.X = X
        self.base = 1 << X.basepoint
        self.base2 = frozenset({self.base})
        self.base3 = frozenset({self.base2})

    @cached_property
    def carrier(self) -> tuple[int, ...]:
        b = self.X.basepoint
        return tuple(m for m in range(1 << self.X.size) if m >> b & 1)

    @cached_property
    def carrier2(self) -> tuple[frozenset, ...]:
        others = [m for m in self.carrier if m != self.base]
        return tuple(frozenset(c) | self.base2 for r in range(len(others) + 1) for c in itertools.combinations(others, r))

    def eps(self, x: int) -> int:
        return (1 << x) | self.base

    def delta(self, family) -> int:
        out = self.base
        for a in family:
            out |= a
        return out

    def pmap(self, fn, family) -> frozenset:
        """P(fn) on a family."""
        return frozenset(fn(a) for a in family)

    # components of the laws
    def eps_at_P(self, a: int) -> frozenset:
        return frozenset({a, self.base})

    def P_eps(self, a: int) -> frozenset:
        return frozenset(self.eps(x) for x in range(self.X.size) if a >> x & 1)

    def delta_at_P(self, fam3) -> frozenset:
        out = set(self.base2)
        for fam in fam3:
            out |= fam
        return frozenset(out)

    def P_delta(self, fam3) -> frozenset:
        return frozenset(self.delta(fam) for fam in fam3)

    def t(self, a, b) -> frozenset:
        """t_{A,A}(a, b) = {a_1, b_2, *} folded back onto A: the family {a, b, *}."""
        return frozenset({a, b, self.base})

    def check_laws(self, samples: int = 256, seed: int = 0) -> dict:
        """Unit laws exhaustively on P(X); associativity exhaustively on P^3(X)
        when it is small, otherwise on every two-element generator {base, Z}
        plus a seeded sample of random elements.
        """
        out = {
            "unit_left": all(self.delta(self.eps_at_P(a)) == a for a in self.carrier),
            "unit_right": all(self.delta(self.P_eps(a)) == a for a in self.carrier),
        }
        c2 = self.carrier2
        others = [z for z in c2 if z != self.base2]

        def assoc(fam3):
            return self.delta(self.P_delta(fam3)) == self.delta(self.delta_at_P(fam3))

        if len(others) <= 10:
            elems = (frozenset(c) | self.base3 for r in range(len(others) + 1) for c in itertools.combinations(others, r))
            out["assoc"] = all(assoc(f) for f in elems)
            out["assoc_mode"] = "exhaustive"
        else:
            rng = random.Random(seed)
            gens = all(assoc(frozenset({self.base2, z})) for z in c2)
            sampled = all(assoc(frozenset(z for z in others if rng.random() < 0.5) | self.base3) for _ in range(samples))
            out["assoc"] = gens and sampled
            out["assoc_mode"] = f"generators+{samples} samples"
        out["all_hold"] = out["unit_left"] and out["unit_right"] and out["assoc"]
        return out


def powerset_comonad(X: PointedSet) -> PowersetMonad:
    return PowersetMonad(X)


# ---------------------------------------------------------------- split monos


@dataclass(frozen=True)
class PointedSplitMono:
    X: PointedSet
    Y: PointedSet
    f: tuple[int, ...]      # Y -> X, injective
    s: tuple[int, ...]      # X -> Y, s f = 1

    def __post_init__(self):
        X, Y, f, s = self.X, self.Y, self.f, self.s
        if len(f) != Y.size or len(s) != X.size:
            raise ValueError("f and s must be total functions")
        if f[Y.basepoint] != X.basepoint or s[X.basepoint] != Y.basepoint:
            raise ValueError("f and s must preserve basepoints")
        if len(set(f)) != len(f):
            raise ValueError("f is not injective")
        for y in range(Y.size):
            if s[f[y]] != y:
                raise ValueError(f"s(f({y})) != {y}")

    @cached_property
    def complement(self) -> tuple[int, ...]:
        """X minus f(Y), in index order."""
        im = set(self.f)
        return tuple(x for x in range(self.X.size) if x not in im)

    @cached_property
    def K(self) -> PointedSet:
        return PointedSet(len(self.complement) + 1, 0)

    @cached_property
    def k(self) -> tuple[int, ...]:
        """Cokernel X -> K: f(Y) goes to *, the rest is renumbered 1, 2, ..."""
        pos = {x: i + 1 for i, x in enumerate(self.complement)}
        return tuple(pos.get(x, 0) for x in range(self.X.size))

    @property
    def fs(self) -> tuple[int, ...]:
        return tuple(self.f[self.s[x]] for x in range(self.X.size))


def coproduct_shape(m: PointedSplitMono) -> bool:
    """s collapses X minus f(Y) to the basepoint, i.e. X is K + Y."""
    return all(m.s[x] == m.Y.basepoint for x in m.complement)


def is1_holds(m: PointedSplitMono, q, P: PowersetMonad, x: int) -> bool:
    """delta(t(q k(x), eps(f s(x)))) = eps(x)."""
    return P.delta(P.t(q[m.k[x]], P.eps(m.fs[x]))) == P.eps(x)


def is2_holds(m: PointedSplitMono, q, P: PowersetMonad, a: int) -> bool:
    """Union over x in q(a) of {k(x)_1, s(x)_2, *} equals {a_1, *} in P(K + Y)."""
    KY, i1, i2 = wedge(m.K, m.Y)
    got = 1
    for x in range(m.X.size):
        if q[a] >> x & 1:
            got |= (1 << i1[m.k[x]]) | (1 << i2[m.s[x]]) | 1
    return got == (1 << i1[a]) | 1


@dataclass
class SplitMonoVerdict:
    is_schreier: bool
    q: dict[int, int] | None                    # complement element of X -> subset mask
    witness: int | None = None                  # element of X minus f(Y) with no valid q-value
    candidates: int = 0
    predicate: bool = False

    @property
    def agrees(self) -> bool:
        return self.is_schreier == self.predicate


def analyze_split_mono(m: PointedSplitMono, prune: bool = True) -> SplitMonoVerdict:
    """Backtracking search for q: K -> P(X) satisfying both conditions.

    Every condition instance mentions one value q(a) only (k(x) = a for a
    single x, or x in f(Y) where q(*) = {*} is fixed), so each level is
    checked as soon as it is assigned.  With ``prune`` the candidates for
    q(a) are restricted to subsets containing a, which iS1 at x = a forces.
    """
    P = PowersetMonad(m.X)
    K = m.K
    q = [P.base] * K.size
    ok_base = all(is1_holds(m, q, P, x) for x in m.f) and is2_holds(m, q, P, 0)
    pred = coproduct_shape(m)
    if not ok_base:
        return SplitMonoVerdict(False, None, m.X.basepoint, 0, pred)

    xs_of = {a: [x for x in range(m.X.size) if m.k[x] == a] for a in range(1, K.size)}
    candidates = 0
    deepest = [0]

    def options(a):
        xa = m.complement[a - 1]
        for mask in P.carrier:
            if prune and not mask >> xa & 1:
                continue
            yield mask

    def search(a: int) -> bool:
        nonlocal candidates
        if a == K.size:
            return True
        deepest[0] = max(deepest[0], a)
        for mask in options(a):
            candidates += 1
            q[a] = mask
            if all(is1_holds(m, q, P, x) for x in xs_of[a]) and is2_holds(m, q, P, a):
                if search(a + 1):
                    return True
        q[a] = P.base
        return False

    if search(1):
        # full re-evaluation of both diagrams on every element
        assert all(is1_holds(m, q, P, x) for x in range(m.X.size))
        assert all(is2_holds(m, q, P, a) for a in range(K.size))
        qmap = {m.complement[a - 1]: q[a] for a in range(1, K.size)}
        return SplitMonoVerdict(True, qmap, None, candidates, pred)
    return SplitMonoVerdict(False, None, m.complement[deepest[0] - 1], candidates, pred)


def special_split_mono(Y: PointedSet) -> PointedSplitMono:
    """Y -> Y + Y by the second injection, split by the fold map."""
    W, i1, i2 = wedge(Y, Y)
    fold = [0] * W.size
    for y in range(Y.size):
        fold[i1[y]] = y
        fold[i2[y]] = y
    return PointedSplitMono(W, Y, i2, tuple(fold))


def is_special(Y: PointedSet) -> SplitMonoVerdict:
    return analyze_split_mono(special_split_mono(Y))


# ---------------------------------------------------------------- census


def split_monos(nx: int, ny: int) -> Iterator[PointedSplitMono]:
    """All split monos Y -> X with both basepoints at 0 (every injection f, every retraction s)."""
    X, Y = PointedSet(nx, 0), PointedSet(ny, 0)
    for img in itertools.permutations(range(1, nx), ny - 1):
        f = (0,) + img
        rest = [x for x in range(nx) if x not in f]
        for choice in itertools.product(range(ny), repeat=len(rest)):
            s = [0] * nx
            for y, x in enumerate(f):
                s[x] = y
            for x, y in zip(rest, choice):
                s[x] = y
            yield PointedSplitMono(X, Y, f, tuple(s))


@dataclass
class Census:
    max_size: int
    instances: int = 0
    schreier: int = 0
    disagreements: list = field(default_factory=list)
    special: dict[int, bool] = field(default_factory=dict)
    laws: dict[int, dict] = field(default_factory=dict)

    @property
    def all_agree(self) -> bool:
        return not self.disagreements

    @property
    def special_iff_zero(self) -> bool:
        return all(v == (n == 1) for n, v in self.special.items())


def classify_all(n: int = DEFAULT_MAX_SIZE, prune: bool = True) -> Census:
    census = Census(n)
    for nx in range(1, n + 1):
        if nx <= LAW_CHECK_MAX:
            census.laws[nx] = PowersetMonad(PointedSet(nx)).check_laws()
        for ny in range(1, nx + 1):
            for m in split_monos(nx, ny):
                v = analyze_split_mono(m, prune)
                census.instances += 1
                census.schreier += v.is_schreier
                if not v.agrees:
                    census.disagreements.append((m.X.size, m.Y.size, m.f, m.s, v.is_schreier))
        census.special[nx] = is_special(PointedSet(nx)).is_schreier
    return census
