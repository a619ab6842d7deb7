"""Finite monoids and groups as multiplication tables, their homomorphisms,
and the finite limits (kernels, products, pullbacks, kernel pairs) used by the
rest of the package.

Elements are dense indices ``0..n-1``.  The identity is an explicit field and
need not be ``0``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce

import numpy as np

from . import _kernels as K
from .errors import (
    AlgebraError,
    NoIdentity,
    NotAGroup,
    NotAHomomorphism,
    NotAssociative,
    PresentationTooLarge,
)

DEFAULT_CAP = 10_000


def _frozen(a):
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    """A monoid given by its Cayley table, ``table[i, j] = i * j``.

    Instances built directly are trusted; use :func:`validate_monoid` for
    untrusted tables.
    """

    table: np.ndarray
    identity: int
    labels: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self):
        t = _frozen(self.table)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise AlgebraError(f"table must be a non-empty square matrix, got shape {t.shape}")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise AlgebraError("table entries must be element indices in [0, size)")
        if not 0 <= int(self.identity) < n:
            raise AlgebraError(f"identity {self.identity} out of range")
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "identity", int(self.identity))
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise AlgebraError(f"{len(labels)} labels for {n} elements")
            if len(set(labels)) != n:
                raise AlgebraError("labels must be distinct")
            object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return (
            self.identity == other.identity
            and self.labels == other.labels
            and self.name == other.name
            and np.array_equal(self.table, other.table)
        )

    __hash__ = object.__hash__

    def same_structure(self, other) -> bool:
        """Equal tables and identity, ignoring labels and name."""
        return self is other or (
            self.identity == other.identity and np.array_equal(self.table, other.table)
        )

    def mul(self, *xs: int) -> int:
        return reduce(lambda a, b: int(self.table[a, b]), xs, self.identity)

    def power(self, x: int, e: int) -> int:
        if e < 0:
            raise AlgebraError("negative powers need a group")
        acc = self.identity
        for _ in range(e):
            acc = int(self.table[acc, x])
        return acc

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def index(self, label) -> int:
        """Element index for a label (or a plain integer index)."""
        if isinstance(label, (int, np.integer)):
            x = int(label)
        elif self.labels is not None and str(label) in self._label_index:
            return self._label_index[str(label)]
        else:
            try:
                x = int(label)
            except ValueError:
                raise KeyError(f"no element labelled {label!r}") from None
        if not 0 <= x < self.size:
            raise KeyError(f"element index {x} out of range")
        return x

    @cached_property
    def _label_index(self):
        return {s: i for i, s in enumerate(self.labels or ())}

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self):
        name = self.name or "monoid"
        return f"<{type(self).__name__} {name} of order {self.size}>"


@dataclass(frozen=True, eq=False, repr=False)
class FiniteGroup(FiniteMonoid):
    inverse: np.ndarray = field(kw_only=True)

    def __post_init__(self):
        super().__post_init__()
        inv = _frozen(self.inverse)
        object.__setattr__(self, "inverse", inv)
        idx = np.arange(self.size)
        if inv.shape != (self.size,) or not (
            (self.table[idx, inv] == self.identity).all() and (self.table[inv, idx] == self.identity).all()
        ):
            raise AlgebraError("inverse array does not invert every element")

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def power(self, x: int, e: int) -> int:
        if e < 0:
            return super().power(int(self.inverse[x]), -e)
        return super().power(x, e)

    def element_order(self, x: int) -> int:
        acc, n = x, 1
        while acc != self.identity:
            acc = int(self.table[acc, x])
            n += 1
        return n

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, (self.element_order(x) for x in self), 1)

    @cached_property
    def commutator_table(self) -> np.ndarray:
        """``[x, y] = x y x^-1 y^-1`` for all pairs."""
        t, inv = self.table, self.inverse
        xy = t
        out = t[t[xy, inv[:, None]], inv[None, :]]
        out.setflags(write=False)
        return out


# ---------------------------------------------------------------- validation


def validate_monoid(table, identity=None, labels=None, name="") -> FiniteMonoid:
    """Check identity and associativity exhaustively and return the monoid.

    ``identity=None`` searches for the (unique) two-sided identity.
    """
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise AlgebraError(f"table must be square, got shape {t.shape}")
    t = t.astype(np.int64)
    n = t.shape[0]
    if n == 0 or t.min() < 0 or t.max() >= n:
        raise AlgebraError("table entries must be element indices in [0, size)")
    if identity is None:
        cands = np.flatnonzero(K.identity_candidates(t))
        if len(cands) == 0:
            raise NoIdentity(None, None)
        identity = int(cands[0])
    identity = int(identity)
    if not 0 <= identity < n:
        raise AlgebraError(f"identity {identity} out of range")
    idx = np.arange(n)
    bad = np.flatnonzero((t[identity] != idx) | (t[:, identity] != idx))
    if len(bad):
        raise NoIdentity(identity, int(bad[0]))
    i, j, k = K.assoc_violation(t)
    if i >= 0:
        raise NotAssociative(int(i), int(j), int(k))
    return FiniteMonoid(t, identity, labels, name)


def as_group(m: FiniteMonoid) -> FiniteGroup:
    """The monoid as a group, or :class:`NotAGroup` with an element lacking an inverse."""
    if isinstance(m, FiniteGroup):
        return m
    t, e = m.table, m.identity
    both = (t == e) & (t.T == e)
    has = both.any(axis=1)
    if not has.all():
        raise NotAGroup(int(np.argmin(has)))
    inverse = both.argmax(axis=1)
    return FiniteGroup(t, e, m.labels, m.name, inverse=inverse)


def translations_bijective(m: FiniteMonoid) -> bool:
    """Every left and right translation is a permutation (group test by Latin square)."""
    n = m.size
    target = np.arange(n)
    return bool(
        (np.sort(m.table, axis=1) == target).all() and (np.sort(m.table, axis=0) == target[:, None]).all()
    )


def is_group(m: FiniteMonoid) -> bool:
    try:
        as_group(m)
    except NotAGroup:
        return False
    return True


# ---------------------------------------------------------------- homomorphisms


@dataclass(frozen=True, eq=False)
class MonoidHom:
    domain: FiniteMonoid
    codomain: FiniteMonoid
    map: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "map", _frozen(self.map))

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def __eq__(self, other):
        if not isinstance(other, MonoidHom):
            return NotImplemented
        return (
            self.domain.same_structure(other.domain)
            and self.codomain.same_structure(other.codomain)
            and np.array_equal(self.map, other.map)
        )

    __hash__ = object.__hash__

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.map)) == self.domain.size

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.map)) == self.codomain.size

    def image(self) -> "Submonoid":
        return Submonoid(self.codomain, np.unique(self.map))

    def __repr__(self):
        return f"<MonoidHom {self.domain!r} -> {self.codomain!r}>"


def hom(domain: FiniteMonoid, codomain: FiniteMonoid, map) -> MonoidHom:
    """Validated homomorphism from a total map array."""
    m = np.asarray(map)
    if m.shape != (domain.size,):
        raise NotAHomomorphism(f"map must have length {domain.size}, got shape {m.shape}")
    m = m.astype(np.int64)
    if m.min(initial=0) < 0 or m.max(initial=0) >= codomain.size:
        raise NotAHomomorphism("map values out of range of the codomain")
    if m[domain.identity] != codomain.identity:
        raise NotAHomomorphism("identity not preserved", witness=domain.identity)
    lhs = m[domain.table]
    rhs = codomain.table[m[:, None], m[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise NotAHomomorphism(f"map({x}*{y}) != map({x})*map({y})", witness=(x, y))
    return MonoidHom(domain, codomain, m)


def identity_hom(m: FiniteMonoid) -> MonoidHom:
    return MonoidHom(m, m, np.arange(m.size))


def trivial_hom(domain: FiniteMonoid, codomain: FiniteMonoid) -> MonoidHom:
    return MonoidHom(domain, codomain, np.full(domain.size, codomain.identity))


def compose(*homs: MonoidHom) -> MonoidHom:
    """``compose(g, f)`` is g after f."""
    out = homs[-1]
    for g in reversed(homs[:-1]):
        if not g.domain.same_structure(out.codomain):
            raise NotAHomomorphism("codomain/domain mismatch in composition")
        out = MonoidHom(out.domain, g.codomain, g.map[out.map])
    return out


def generating_set(m: FiniteMonoid) -> list[int]:
    gens: list[int] = []
    mask = np.zeros(m.size, dtype=bool)
    mask[m.identity] = True
    for x in range(m.size):
        if not mask[x]:
            gens.append(x)
            mask[x] = True
            mask = K.closure(m.table, mask)
    return gens


def all_homs(domain: FiniteMonoid, codomain: FiniteMonoid) -> list[MonoidHom]:
    """Every homomorphism, by assigning images to a generating set and closing."""
    gens = generating_set(domain)
    out = []
    td, tc = domain.table, codomain.table
    for images in itertools.product(range(codomain.size), repeat=len(gens)):
        m = np.full(domain.size, -1, dtype=np.int64)
        m[domain.identity] = codomain.identity
        queue = [domain.identity]
        ok = True
        while queue and ok:
            u = queue.pop()
            for g, img in zip(gens, images):
                v = td[u, g]
                w = tc[m[u], img]
                if m[v] == -1:
                    m[v] = w
                    queue.append(int(v))
                elif m[v] != w:
                    ok = False
                    break
        if ok:
            out.append(MonoidHom(domain, codomain, m))
    return out


def is_isomorphic(a: FiniteMonoid, b: FiniteMonoid) -> bool:
    if a.size != b.size:
        return False
    return any(h.is_injective for h in all_homs(a, b))


# ---------------------------------------------------------------- submonoids


@dataclass(frozen=True, eq=False)
class Submonoid:
    parent: FiniteMonoid
    elements: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "elements", _frozen(np.unique(self.elements)))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return bool(self._mask[x])

    @cached_property
    def _mask(self):
        mask = np.zeros(self.parent.size, dtype=bool)
        mask[self.elements] = True
        return mask

    @cached_property
    def _local(self):
        loc = np.full(self.parent.size, -1, dtype=np.int64)
        loc[self.elements] = np.arange(len(self.elements))
        return loc

    def local(self, x):
        """Position(s) of parent element(s) inside ``elements``."""
        return self._local[x]

    @cached_property
    def monoid(self) -> FiniteMonoid:
        e = self.elements
        table = self._local[self.parent.table[np.ix_(e, e)]]
        labels = None if self.parent.labels is None else [self.parent.labels[x] for x in e]
        ident = int(self._local[self.parent.identity])
        if isinstance(self.parent, FiniteGroup):
            return FiniteGroup(table, ident, labels, inverse=self._local[self.parent.inverse[e]])
        return FiniteMonoid(table, ident, labels)

    @cached_property
    def inclusion(self) -> MonoidHom:
        return MonoidHom(self.monoid, self.parent, self.elements)

    def is_whole(self) -> bool:
        return len(self.elements) == self.parent.size


def submonoid(parent: FiniteMonoid, elements) -> Submonoid:
    """Validated submonoid: must contain the identity and be closed."""
    s = Submonoid(parent, np.asarray(list(elements), dtype=np.int64))
    if parent.identity not in s:
        raise AlgebraError("submonoid must contain the identity")
    prods = parent.table[np.ix_(s.elements, s.elements)]
    if not s._mask[prods].all():
        raise AlgebraError("subset is not closed under multiplication")
    return s


def generated_submonoid(m: FiniteMonoid, gens) -> Submonoid:
    seed = np.zeros(m.size, dtype=bool)
    seed[m.identity] = True
    seed[np.asarray(list(gens), dtype=np.int64)] = True
    return Submonoid(m, np.flatnonzero(K.closure(m.table, seed)))


def kernel(f: MonoidHom) -> Submonoid:
    return Submonoid(f.domain, np.flatnonzero(f.map == f.codomain.identity))


# ---------------------------------------------------------------- limits


def _pair_labels(a: FiniteMonoid, b: FiniteMonoid, pairs):
    return [f"({a.label(x)},{b.label(y)})" for x, y in pairs]


@dataclass(frozen=True, eq=False)
class Product:
    monoid: FiniteMonoid
    left: FiniteMonoid
    right: FiniteMonoid
    pi1: MonoidHom
    pi2: MonoidHom

    def index(self, x: int, y: int) -> int:
        return x * self.right.size + y

    def components(self, p: int) -> tuple[int, int]:
        return divmod(int(p), self.right.size)

    def pair(self, f: MonoidHom, g: MonoidHom) -> MonoidHom:
        """The pairing <f, g> into the product."""
        if not f.domain.same_structure(g.domain):
            raise NotAHomomorphism("pairing needs a common domain")
        return MonoidHom(f.domain, self.monoid, f.map * self.right.size + g.map)


def product(a: FiniteMonoid, b: FiniteMonoid) -> Product:
    na, nb = a.size, b.size
    table = (a.table[:, None, :, None] * nb + b.table[None, :, None, :]).reshape(na * nb, na * nb)
    identity = a.identity * nb + b.identity
    pairs = list(itertools.product(range(na), range(nb)))
    labels = _pair_labels(a, b, pairs)
    name = f"{a.name or 'M'}x{b.name or 'N'}"
    if isinstance(a, FiniteGroup) and isinstance(b, FiniteGroup):
        inverse = (a.inverse[:, None] * nb + b.inverse[None, :]).ravel()
        p = FiniteGroup(table, identity, labels, name, inverse=inverse)
    else:
        p = FiniteMonoid(table, identity, labels, name)
    idx = np.arange(na * nb)
    return Product(p, a, b, MonoidHom(p, a, idx // nb), MonoidHom(p, b, idx % nb))


def diagonal(m: FiniteMonoid) -> MonoidHom:
    """The diagonal <1, 1>: M -> M x M."""
    p = product(m, m)
    return p.pair(identity_hom(m), identity_hom(m))


@dataclass(frozen=True, eq=False)
class Pullback:
    """P = {(x, y) | f(x) = g(y)} with projections p1, p2."""

    monoid: FiniteMonoid
    pairs: np.ndarray
    p1: MonoidHom
    p2: MonoidHom
    f: MonoidHom
    g: MonoidHom

    def index(self, x: int, y: int) -> int:
        i = self._lookup[x * self.g.domain.size + y]
        if i < 0:
            raise KeyError(f"({x}, {y}) is not in the pullback")
        return int(i)

    @cached_property
    def _lookup(self):
        ny = self.g.domain.size
        lk = np.full(self.f.domain.size * ny, -1, dtype=np.int64)
        lk[self.pairs[:, 0] * ny + self.pairs[:, 1]] = np.arange(len(self.pairs))
        return lk

    def pair(self, u: MonoidHom, v: MonoidHom) -> MonoidHom:
        """Universal map W -> P from u: W -> X, v: W -> Y with f u = g v."""
        if not np.array_equal(self.f.map[u.map], self.g.map[v.map]):
            raise NotAHomomorphism("f u != g v; no induced map into the pullback")
        ny = self.g.domain.size
        return MonoidHom(u.domain, self.monoid, self._lookup[u.map * ny + v.map])


def pullback(f: MonoidHom, g: MonoidHom) -> Pullback:
    if not f.codomain.same_structure(g.codomain):
        raise NotAHomomorphism("pullback needs a common codomain")
    x, y = f.domain, g.domain
    xs, ys = np.nonzero(f.map[:, None] == g.map[None, :])
    pairs = np.stack([xs, ys], axis=1).astype(np.int64)
    ny = y.size
    lookup = np.full(x.size * ny, -1, dtype=np.int64)
    lookup[xs * ny + ys] = np.arange(len(xs))
    px = x.table[xs[:, None], xs[None, :]]
    py = y.table[ys[:, None], ys[None, :]]
    table = lookup[px * ny + py]
    identity = int(lookup[x.identity * ny + y.identity])
    labels = _pair_labels(x, y, pairs)
    if isinstance(x, FiniteGroup) and isinstance(y, FiniteGroup):
        inverse = lookup[x.inverse[xs] * ny + y.inverse[ys]]
        p = FiniteGroup(table, identity, labels, inverse=inverse)
    else:
        p = FiniteMonoid(table, identity, labels)
    pb = Pullback(p, pairs, MonoidHom(p, x, xs), MonoidHom(p, y, ys), f, g)
    pb.__dict__["_lookup"] = lookup
    return pb


@dataclass(frozen=True, eq=False)
class KernelPair:
    """Eq(f) with its projections and the reflexivity section e_f = <1, 1>."""

    pullback: Pullback
    e: MonoidHom

    @property
    def monoid(self):
        return self.pullback.monoid

    @property
    def f1(self):
        return self.pullback.p1

    @property
    def f2(self):
        return self.pullback.p2


def kernel_pair(f: MonoidHom) -> KernelPair:
    pb = pullback(f, f)
    one = identity_hom(f.domain)
    return KernelPair(pb, pb.pair(one, one))


# ---------------------------------------------------------------- group words


def commutator(g: FiniteGroup, x: int, y: int) -> int:
    """[x, y] = x y x^-1 y^-1."""
    return g.mul(x, y, g.inv(x), g.inv(y))


def conjugate(g: FiniteGroup, y: int, x: int) -> int:
    """The conjugate of x by y, y x y^-1."""
    return g.mul(y, x, g.inv(y))


def derived_subgroup(g: FiniteGroup) -> Submonoid:
    return generated_submonoid(g, np.unique(g.commutator_table))


# ---------------------------------------------------------------- constructions


def _group_from_mult(elements, mult, labels, name) -> FiniteGroup:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mult(a, b)]
    m = FiniteMonoid(table, int(np.flatnonzero(K.identity_candidates(table))[0]), labels, name)
    return as_group(m)


def _power_label(base: str, e: int) -> str:
    if e == 0:
        return ""
    return base if e == 1 else f"{base}^{e}"


def cyclic(n: int, gen: str = "g") -> FiniteGroup:
    labels = ["1"] + [_power_label(gen, i) for i in range(1, n)]
    return _group_from_mult(list(range(n)), lambda a, b: (a + b) % n, labels, f"C{n}")


def trivial_monoid() -> FiniteGroup:
    return cyclic(1)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given order, as {a^i b^j} with a^(order/2) = b^2 = abab = 1."""
    if order % 2 or order < 2:
        raise AlgebraError("dihedral order must be even")
    n = order // 2
    elems = [(i, j) for j in range(2) for i in range(n)]

    def mult(p, q):
        i, j = p
        k, l = q
        return ((i + (k if j == 0 else -k)) % n, (j + l) % 2)

    labels = [(_power_label("a", i) + ("b" if j else "")) or "1" for i, j in elems]
    return _group_from_mult(elems, mult, labels, f"D{order}")


_QUAT_UNIT = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion() -> FiniteGroup:
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]

    def mult(p, q):
        sign, unit = _QUAT_UNIT[p[1], q[1]]
        return (p[0] * q[0] * sign, unit)

    labels = [("" if s == 1 else "-") + u for s, u in elems]
    return _group_from_mult(elems, mult, labels, "Q8")


def _cycle_label(p) -> str:
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = p[x]
        cycles.append("(" + "".join(cyc) + ")")
    return "".join(cycles) or "()"


def symmetric(n: int) -> FiniteGroup:
    """Permutations of {1..n}; product p*q means apply q first, then p."""
    elems = list(itertools.permutations(range(n)))
    labels = [_cycle_label(p) for p in elems]
    return _group_from_mult(elems, lambda p, q: tuple(p[q[i]] for i in range(n)), labels, f"S{n}")


def permutation_sign(g: FiniteGroup) -> MonoidHom:
    """Sign hom S_n -> C2, for groups built by :func:`symmetric`."""
    c2 = cyclic(2)
    signs = []
    for lab in g.labels:
        cycles = re.findall(r"\((\d+)\)", lab)
        signs.append(sum(len(c) - 1 for c in cycles) % 2)
    return hom(g, c2, signs)


def semilattice() -> FiniteMonoid:
    """The two-element semilattice {1, a} with a*a = a."""
    return FiniteMonoid([[0, 1], [1, 1]], 0, ("1", "a"), "Semilattice2")


def chain(n: int) -> FiniteMonoid:
    """Totally ordered meet-semilattice 1 > c1 > ... > c(n-1), product = min."""
    labels = ["1"] + [f"c{i}" for i in range(1, n)]
    table = np.maximum(np.arange(n)[:, None], np.arange(n)[None, :])
    return FiniteMonoid(table, 0, labels, f"Chain{n}")


def full_transformations(n: int) -> FiniteMonoid:
    """All maps {0..n-1} -> itself under composition (f*g = f after g)."""
    elems = list(itertools.product(range(n), repeat=n))
    index = {e: i for i, e in enumerate(elems)}
    table = np.array(
        [[index[tuple(f[g[i]] for i in range(n))] for g in elems] for f in elems], dtype=np.int64
    )
    labels = ["".join(str(v) for v in e) for e in elems]
    return FiniteMonoid(table, index[tuple(range(n))], labels, f"T{n}")


def direct_product(*ms: FiniteMonoid) -> FiniteMonoid:
    out = ms[0]
    for m in ms[1:]:
        out = product(out, m).monoid
    if len(ms) > 1:
        name = "x".join(m.name or "M" for m in ms)
        out = _renamed(out, name)
    return out


def _renamed(m: FiniteMonoid, name: str) -> FiniteMonoid:
    if isinstance(m, FiniteGroup):
        return FiniteGroup(m.table, m.identity, m.labels, name, inverse=m.inverse)
    return FiniteMonoid(m.table, m.identity, m.labels, name)


def relabel(m: FiniteMonoid, labels=None, name=None) -> FiniteMonoid:
    labels = m.labels if labels is None else labels
    name = m.name if name is None else name
    if isinstance(m, FiniteGroup):
        return FiniteGroup(m.table, m.identity, labels, name, inverse=m.inverse)
    return FiniteMonoid(m.table, m.identity, labels, name)


# ---------------------------------------------------------------- presentations

_TOKEN = re.compile(r"\s*([A-Za-z])(?:\^\(?(-?\d+)\)?)?\s*")


def parse_word(text: str, letters=None) -> list[tuple[str, int]]:
    """Parse ``a^5``, ``abab`` or ``a^-1 b a^2`` into (letter, exponent) syllables."""
    out, pos = [], 0
    text = text.strip()
    if text in ("", "1"):
        return out
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise AlgebraError(f"cannot parse word {text!r} at position {pos}")
        letter, exp = m.group(1), int(m.group(2)) if m.group(2) is not None else 1
        if letters is not None and letter not in letters:
            raise AlgebraError(f"unknown letter {letter!r} in {text!r}")
        out.append((letter, exp))
        pos = m.end()
    return out


def _compress(word) -> str:
    out, i = [], 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        out.append(_power_label(word[i], j - i))
        i = j
    return "".join(out) or "1"


def from_presentation(generators, relators, cap: int = DEFAULT_CAP, name="") -> FiniteGroup:
    """Finite group from a presentation, closed by coset enumeration.

    Raises :class:`PresentationTooLarge` when more than ``cap`` cosets are needed.
    Elements are labelled by their shortlex-least positive word.
    """
    from sympy.combinatorics.fp_groups import FpGroup
    from sympy.combinatorics.free_groups import free_group

    generators = list(generators)
    F, *gens = free_group(",".join(generators) + ("," if len(generators) == 1 else ""))
    by_name = dict(zip(generators, gens))
    rels = []
    for r in relators:
        w = F.identity
        for letter, e in parse_word(r, generators):
            w = w * by_name[letter] ** e
        rels.append(w)
    group = FpGroup(F, rels)
    try:
        ct = group.coset_enumeration([], max_cosets=cap)
    except ValueError as exc:
        raise PresentationTooLarge(cap) from exc
    ct.compress()
    ct.standardize()
    table = np.array(ct.table, dtype=np.int64)   # columns: g1, g1^-1, g2, g2^-1, ...
    n = len(table)
    if n > cap:
        raise PresentationTooLarge(cap)
    cols = table[:, 0::2]
    # breadth-first over positive generator words
    words = {0: ""}
    order = [0]
    for c in order:
        for gi, g in enumerate(generators):
            d = int(cols[c, gi])
            if d not in words:
                words[d] = words[c] + g
                order.append(d)
    if len(words) != n:
        raise AlgebraError("presentation does not define a finite group on positive words")
    mult = np.empty((n, n), dtype=np.int64)
    col = {g: cols[:, i] for i, g in enumerate(generators)}
    for j in range(n):
        cur = np.arange(n)
        for letter in words[j]:
            cur = col[letter][cur]
        mult[:, j] = cur
    labels = [_compress(words[i]) for i in range(n)]
    return as_group(FiniteMonoid(mult, 0, labels, name))


# ---------------------------------------------------------------- enumeration


def enumerate_monoids(n: int) -> list[FiniteMonoid]:
    """All monoids of order n up to isomorphism (brute force, n <= 4)."""
    if n < 1 or n > 4:
        raise AlgebraError("exhaustive monoid enumeration is limited to orders 1..4")
    if n == 1:
        return [FiniteMonoid([[0]], 0, name="M1_0")]
    m = n - 1
    free = np.array(list(itertools.product(range(n), repeat=m * m)), dtype=np.int64)
    b = len(free)
    tables = np.empty((b, n, n), dtype=np.int64)
    tables[:, 0, :] = np.arange(n)
    tables[:, :, 0] = np.arange(n)
    tables[:, 1:, 1:] = free.reshape(b, m, m)
    tables = tables[K.assoc_mask_batch(tables)]
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = np.array((0,) + perm)
        pinv = np.argsort(p)
        relab = p[tables[:, pinv[:, None], pinv[None, :]]].reshape(len(tables), -1)
        best = relab if best is None else _lexmin(best, relab)
    keys = np.unique(best, axis=0)
    return [FiniteMonoid(k.reshape(n, n), 0, name=f"M{n}_{i}") for i, k in enumerate(keys)]


def _lexmin(a, b):
    diff = a != b
    first = diff.argmax(axis=1)
    rows = np.arange(len(a))
    take_b = diff.any(axis=1) & (b[rows, first] < a[rows, first])
    return np.where(take_b[:, None], b, a)
