"""Finite-dimensional Lie algebras over Q with exact structure constants.

Scalars are ``gmpy2.mpq`` (exact, and far cheaper than ``Fraction`` in the
sample sweeps); vectors are tuples of them.  Brackets are stored
sparsely: only pairs i < j with a nonzero image are kept, so evaluating
[x, y] costs one term per nonzero basis bracket.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy
from gmpy2 import mpq

from .errors import JacobiFails, NoAnsatzSolution, NotAntisymmetric

Vector = tuple  # tuple[mpq, ...]

DEFAULT_SEED = 20240611
SAMPLE_BATCH = 8
K_VALUES = (mpq(-2), mpq(-1), mpq(0), mpq(1), mpq(2), mpq(1, 2))


def rational(v) -> mpq:
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    if isinstance(v, str):
        return mpq(v.strip())
    return mpq(v)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    constants: Mapping[tuple[int, int], Vector]     # i < j only, nonzero images
    labels: tuple[str, ...] | None = None
    name: str = ""

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.dim == other.dim and dict(self.constants) == dict(other.constants)

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.constants.items()))))

    def zero(self) -> Vector:
        return (mpq(0),) * self.dim

    def basis(self, i: int) -> Vector:
        return tuple(mpq(int(j == i)) for j in range(self.dim))

    def vector(self, coords) -> Vector:
        coords = tuple(rational(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return coords

    def structure(self, i: int, j: int) -> Vector:
        """[e_i, e_j]."""
        if i == j:
            return self.zero()
        if i < j:
            return self.constants.get((i, j), self.zero())
        return neg(self.constants.get((j, i), self.zero()))

    def bracket(self, x: Vector, y: Vector) -> Vector:
        out = [mpq(0)] * self.dim
        for (i, j), c in self.constants.items():
            w = x[i] * y[j] - x[j] * y[i]
            if w:
                for t, ct in enumerate(c):
                    if ct:
                        out[t] += w * ct
        return tuple(out)

    def is_abelian(self) -> bool:
        return not self.constants

    def format(self, v: Vector) -> str:
        names = self.labels or tuple(f"e{i + 1}" for i in range(self.dim))
        terms = []
        for c, n in zip(v, names):
            if not c:
                continue
            if c == 1:
                terms.append(n)
            elif c == -1:
                terms.append(f"-{n}")
            else:
                terms.append(f"{c}{n}" if c.denominator == 1 else f"({c}){n}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def add(*vs: Vector) -> Vector:
    return tuple(sum(cs, mpq(0)) for cs in zip(*vs))


def scale(c, v: Vector) -> Vector:
    c = rational(c)
    return tuple(c * a for a in v)


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def is_zero(v: Vector) -> bool:
    return not any(v)


# ---------------------------------------------------------------- validation


def validate_lie(constants, dim: int | None = None, labels=None, name: str = "") -> LieAlgebra:
    """Build a Lie algebra from a sparse mapping or a dense c[i][j] table.

    Pairs may be given in either order; a pair listed both ways must agree up
    to sign.  Jacobi is checked on every basis triple i < j < k, which is
    enough because the Jacobiator is alternating and trilinear.
    """
    if isinstance(constants, Mapping):
        items = [(tuple(k), v) for k, v in constants.items()]
        if dim is None:
            raise ValueError("dim is required with sparse constants")
    else:
        rows = list(constants)
        dim = len(rows) if dim is None else dim
        items = [((i, j), rows[i][j]) for i in range(len(rows)) for j in range(len(rows[i]))]
    if labels is not None and len(labels) != dim:
        raise ValueError("labels length must equal dim")

    sparse: dict[tuple[int, int], Vector] = {}
    for (i, j), v in items:
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"basis index out of range in pair ({i}, {j})")
        v = tuple(rational(c) for c in v)
        if len(v) != dim:
            raise ValueError(f"bracket [{i}, {j}] has {len(v)} coordinates, expected {dim}")
        if i == j:
            if any(v):
                raise NotAntisymmetric(i, j)
            continue
        key, val = ((i, j), v) if i < j else ((j, i), neg(v))
        if key in sparse and sparse[key] != val:
            raise NotAntisymmetric(*key)
        sparse[key] = val
    sparse = {k: v for k, v in sorted(sparse.items()) if any(v)}
    L = LieAlgebra(dim, sparse, tuple(labels) if labels else None, name)

    for i, j, k in itertools.combinations(range(dim), 3):
        ei, ej, ek = L.basis(i), L.basis(j), L.basis(k)
        jac = add(
            L.bracket(ei, L.bracket(ej, ek)),
            L.bracket(ej, L.bracket(ek, ei)),
            L.bracket(ek, L.bracket(ei, ej)),
        )
        if not is_zero(jac):
            raise JacobiFails(i, j, k)
    return L


# ---------------------------------------------------------------- catalogue


def abelian(n: int) -> LieAlgebra:
    return validate_lie({}, n, name=f"abelian{n}")


def heisenberg() -> LieAlgebra:
    return validate_lie({(0, 1): (0, 0, 1)}, 3, labels=("e1", "e2", "e3"), name="h3")


def sl2() -> LieAlgebra:
    """Basis (e, f, h) with [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return validate_lie(
        {(0, 1): (0, 0, 1), (2, 0): (2, 0, 0), (2, 1): (0, -2, 0)},
        3,
        labels=("e", "f", "h"),
        name="sl2",
    )


def free_class2(g: int) -> LieAlgebra:
    """Free nilpotent class-2 algebra on g generators: x_i plus [x_i, x_j], i < j."""
    pairs = list(itertools.combinations(range(g), 2))
    dim = g + len(pairs)
    cons = {}
    for t, (i, j) in enumerate(pairs):
        v = [0] * dim
        v[g + t] = 1
        cons[(i, j)] = tuple(v)
    labels = [f"x{i + 1}" for i in range(g)] + [f"[x{i + 1},x{j + 1}]" for i, j in pairs]
    return validate_lie(cons, dim, labels=labels, name=f"free_class2({g})")


# ---------------------------------------------------------------- samples


def sample_vectors(dim: int, seed: int = DEFAULT_SEED, batch: int = SAMPLE_BATCH) -> list[Vector]:
    """All 0/1 coordinate vectors (dim <= 6) followed by a seeded rational batch."""
    out: list[Vector] = []
    if dim <= 6:
        out.extend(tuple(mpq(b) for b in bits) for bits in itertools.product((0, 1), repeat=dim))
    rng = random.Random(seed * 1009 + dim)
    for _ in range(batch):
        out.append(tuple(mpq(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(dim)))
    return out


# ---------------------------------------------------------------- 2-Engel


@dataclass
class LieEngelReport:
    is_2engel: bool
    polarized: bool
    sampled: bool
    polarized_witness: tuple[int, int, int] | None = None
    direct_witness: tuple[Vector, Vector, Vector] | None = None     # (x, y, [[x,y],y])
    samples: int = 0

    @property
    def consistent(self) -> bool:
        return self.polarized == self.sampled


def is_2engel_lie(L: LieAlgebra, seed: int = DEFAULT_SEED) -> LieEngelReport:
    """Polarized basis check [[e_i,e_j],e_k] + [[e_i,e_k],e_j] = 0 plus the direct
    identity [[x,y],y] = 0 on sample pairs.

    The direct witness is taken from basis pairs first, then from samples.
    """
    basis = [L.basis(i) for i in range(L.dim)]
    br = [[L.bracket(a, b) for b in basis] for a in basis]
    pol_wit = None
    for i, j, k in itertools.product(range(L.dim), repeat=3):
        if not is_zero(add(L.bracket(br[i][j], basis[k]), L.bracket(br[i][k], basis[j]))):
            pol_wit = (i, j, k)
            break

    direct = None
    vecs = basis + sample_vectors(L.dim, seed)
    for x in vecs:
        for y in vecs:
            v = L.bracket(L.bracket(x, y), y)
            if not is_zero(v):
                direct = (x, y, v)
                break
        if direct:
            break
    return LieEngelReport(
        is_2engel=pol_wit is None,
        polarized=pol_wit is None,
        sampled=direct is None,
        polarized_witness=pol_wit,
        direct_witness=direct,
        samples=len(vecs),
    )


# ---------------------------------------------------------------- star and the loop


def star(L: LieAlgebra, k, x: Vector, y: Vector) -> Vector:
    """x * y = x + y + k [x, y]."""
    return add(x, y, scale(k, L.bracket(x, y)))


def q_ansatz(L: LieAlgebra, alpha, beta, x: Vector, y: Vector) -> Vector:
    """q(x, y) = x + alpha y + beta [x, y]."""
    return add(x, scale(alpha, y), scale(beta, L.bracket(x, y)))


def solve_ansatz(k) -> tuple[mpq, mpq]:
    """Solve q(x,y)*y = x and q(x*y,y) = x for (alpha, beta) on free_class2(2).

    Both residuals are affine in (alpha, beta), so three evaluations pin
    them down; the stacked linear system is solved exactly with sympy.
    """
    k = rational(k)
    F = free_class2(2)
    x, y = F.basis(0), F.basis(1)
    xy = star(F, k, x, y)

    def residual(a, b):
        r1 = add(star(F, k, q_ansatz(F, a, b, x, y), y), neg(x))
        r2 = add(q_ansatz(F, a, b, xy, y), neg(x))
        return r1 + r2

    r0 = residual(0, 0)
    ra = add(residual(1, 0), neg(r0))
    rb = add(residual(0, 1), neg(r0))
    A = sympy.Matrix([[sympy.Rational(u.numerator, u.denominator), sympy.Rational(v.numerator, v.denominator)] for u, v in zip(ra, rb)])
    rhs = sympy.Matrix([-sympy.Rational(c.numerator, c.denominator) for c in r0])
    a, b = sympy.symbols("alpha beta")
    sol = sympy.linsolve((A, rhs), a, b)
    if not sol:
        raise NoAnsatzSolution(k)
    (sa, sb), = sol
    if sa.free_symbols or sb.free_symbols:
        # underdetermined: pick the representative with free parameters at 0
        sa, sb = sa.subs({a: 0, b: 0}), sb.subs({a: 0, b: 0})
    return mpq(int(sa.p), int(sa.q)), mpq(int(sb.p), int(sb.q))


@dataclass
class LoopCheck:
    k: mpq
    alpha: mpq
    beta: mpq
    holds: bool
    witness: tuple[Vector, Vector, str] | None = None     # (x, y, failing axiom)
    pairs: int = 0
    axioms: dict[str, bool] = field(default_factory=dict)


def loop_check_lie(L: LieAlgebra, k, seed: int = DEFAULT_SEED, vectors: Sequence[Vector] | None = None) -> LoopCheck:
    """Solve the ansatz symbolically, then verify iSs1..iSs4 on sample pairs of L."""
    k = rational(k)
    alpha, beta = solve_ansatz(k)
    vecs = list(vectors) if vectors is not None else [L.basis(i) for i in range(L.dim)] + sample_vectors(L.dim, seed)
    zero = L.zero()
    ax = {"iSs1": True, "iSs2": True, "iSs3": True, "iSs4": True}
    witness = None
    pairs = 0
    for x in vecs:
        if ax["iSs3"] and q_ansatz(L, alpha, beta, x, zero) != x:
            ax["iSs3"] = False
            witness = witness or (x, zero, "iSs3")
        if ax["iSs4"] and not is_zero(q_ansatz(L, alpha, beta, x, x)):
            ax["iSs4"] = False
            witness = witness or (x, x, "iSs4")
        for y in vecs:
            pairs += 1
            if ax["iSs1"] and star(L, k, q_ansatz(L, alpha, beta, x, y), y) != x:
                ax["iSs1"] = False
                witness = witness or (x, y, "iSs1")
            if ax["iSs2"] and q_ansatz(L, alpha, beta, star(L, k, x, y), y) != x:
                ax["iSs2"] = False
                witness = witness or (x, y, "iSs2")
            if witness is not None:
                break
        if witness is not None:
            break
    return LoopCheck(k, alpha, beta, all(ax.values()), witness, pairs, ax)


def unit_laws(L: LieAlgebra, k, vectors: Iterable[Vector]) -> bool:
    z = L.zero()
    return all(star(L, k, x, z) == x and star(L, k, z, x) == x for x in vectors)
