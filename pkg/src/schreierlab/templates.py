"""Natural imaginary splittings of groups as two-letter exponent words.

A template is a reduced word x^k1 y^l1 ... x^km y^lm in the free product of
two infinite cyclic groups whose x- and y-exponents both sum to one.  Folding
it on a group G gives the binary operation x * y; G is special with respect to
the template when every right translation z -> z * y is a bijection.

The module also carries the 2-Engel checks: the equivalent commutator
conditions, the reduction x * y = [x,y]^k x y on 2-Engel groups, and sweeps
over bounded template enumerations.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Iterator

import numpy as np

from . import _kernels as K
from .algebra import FiniteGroup, derived_subgroup, generated_submonoid, parse_word
from .errors import AlgebraError, BadSums, NoUniformK

DEFAULT_LENGTH = 6
DEFAULT_EXPONENT = 3


# ---------------------------------------------------------------- words


def _reduce_syllables(syllables) -> list[tuple[str, int]]:
    out: list[list] = []
    for letter, e in syllables:
        if e == 0:
            continue
        if out and out[-1][0] == letter:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([letter, e])
    return [(a, b) for a, b in out]


def _syllables_from_pairs(pairs) -> list[tuple[str, int]]:
    syl = []
    for k, l in pairs:
        syl.append(("x", int(k)))
        syl.append(("y", int(l)))
    return syl


@dataclass(frozen=True)
class SplittingTemplate:
    """Normal-form exponent pairs; build with :func:`normalize` or :func:`parse_template`."""

    pairs: tuple[tuple[int, int], ...]

    @cached_property
    def syllables(self) -> tuple[tuple[str, int], ...]:
        return tuple(_reduce_syllables(_syllables_from_pairs(self.pairs)))

    @property
    def length(self) -> int:
        """Number of letter blocks in the reduced word."""
        return len(self.syllables)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.pairs, dtype=np.int64).reshape(-1, 2)
        a.setflags(write=False)
        return a

    def __str__(self):
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.syllables)


def normalize(raw) -> SplittingTemplate:
    """Reduce a list of (k, l) pairs (or x/y syllables) to normal form."""
    raw = list(raw)
    if raw and isinstance(raw[0][0], str):
        syl = _reduce_syllables(raw)
    else:
        syl = _reduce_syllables(_syllables_from_pairs(raw))
    sx = sum(e for s, e in syl if s == "x")
    sy = sum(e for s, e in syl if s == "y")
    if (sx, sy) != (1, 1):
        raise BadSums((sx, sy))
    pairs = []
    i = 0
    while i < len(syl):
        if syl[i][0] == "x":
            k = syl[i][1]
            i += 1
        else:
            k = 0
        if i < len(syl) and syl[i][0] == "y":
            l = syl[i][1]
            i += 1
        else:
            l = 0
        pairs.append((k, l))
    return SplittingTemplate(tuple(pairs))


def parse_template(text: str) -> SplittingTemplate:
    """``"x^-1 y x^2"`` -> template."""
    return normalize(parse_word(text, "xy"))


DIRECT = normalize([(1, 1)])
TWISTED = parse_template("y x")
SIMPLE = parse_template("x^-1 y x^2")


def commutator_power_template(k: int) -> SplittingTemplate:
    """The word [x,y]^k x y, with [x,y] = x y x^-1 y^-1."""
    block = [("x", 1), ("y", 1), ("x", -1), ("y", -1)] if k >= 0 else [("y", 1), ("x", 1), ("y", -1), ("x", -1)]
    return normalize(block * abs(k) + [("x", 1), ("y", 1)])


ENGEL_SQUARE = commutator_power_template(2)


def enumerate_templates(max_length: int = DEFAULT_LENGTH, max_exponent: int = DEFAULT_EXPONENT) -> Iterator[SplittingTemplate]:
    """Every normal-form template with at most ``max_length`` letter blocks and |exponents| <= ``max_exponent``.

    Order is deterministic: by length, then starting letter, then exponents.
    """
    exps = [e for e in range(-max_exponent, max_exponent + 1) if e]
    for m in range(1, max_length + 1):
        for start in "xy":
            letters = ["xy"[("xy".index(start) + i) % 2] for i in range(m)]
            for es in itertools.product(exps, repeat=m):
                sx = sum(e for c, e in zip(letters, es) if c == "x")
                sy = sum(e for c, e in zip(letters, es) if c == "y")
                if sx == 1 and sy == 1:
                    yield normalize(list(zip(letters, es)))


# ---------------------------------------------------------------- induced operations


@dataclass(frozen=True, eq=False)
class InducedOperation:
    group: FiniteGroup
    template: SplittingTemplate | None
    star: np.ndarray

    def __call__(self, x: int, y: int) -> int:
        return int(self.star[x, y])


def induced_op(g: FiniteGroup, t: SplittingTemplate) -> InducedOperation:
    """Evaluate the template on every pair of g; unit laws are checked."""
    star = K.eval_word(g.table, g.inverse, g.identity, np.ascontiguousarray(t.array))
    idx = np.arange(g.size)
    if not ((star[:, g.identity] == idx).all() and (star[g.identity, :] == idx).all()):
        raise AlgebraError(f"induced operation of {t} violates the unit laws")
    star.setflags(write=False)
    return InducedOperation(g, t, star)


def commutator_power_op(g: FiniteGroup, k: int) -> InducedOperation:
    """x * y = [x,y]^k x y, computed directly from the commutator table."""
    c = _commutator_powers(g, k)
    star = g.table[c, g.table]
    star.setflags(write=False)
    return InducedOperation(g, None, star)


def _commutator_powers(g: FiniteGroup, k: int) -> np.ndarray:
    pw = K.power_table(g.table, g.inverse, g.identity, abs(k))
    return pw[abs(k) + k][g.commutator_table]


@dataclass
class SpecialResult:
    is_special: bool
    q: np.ndarray | None = None
    witness: tuple[int, int, int] | None = None     # (y, z1, z2) with z1 * y = z2 * y

    def solutions(self, op: InducedOperation, x: int, y: int) -> list[int]:
        """All z with z * y = x."""
        return [int(z) for z in np.flatnonzero(op.star[:, y] == x)]


def special_wrt(g: FiniteGroup, t: SplittingTemplate | InducedOperation) -> SpecialResult:
    """Whether every right translation of the induced operation is a bijection."""
    op = t if isinstance(t, InducedOperation) else induced_op(g, t)
    q, bad, z1, z2 = K.column_inverse(np.ascontiguousarray(op.star))
    if bad >= 0:
        return SpecialResult(False, None, (int(bad), int(z1), int(z2)))
    return SpecialResult(True, q, None)


def is_latin_square(star: np.ndarray) -> bool:
    n = star.shape[0]
    target = np.arange(n)
    return bool((np.sort(star, axis=0) == target[:, None]).all() and (np.sort(star, axis=1) == target).all())


def loop_axioms(op: InducedOperation, q: np.ndarray) -> dict[str, bool]:
    """iSs1..iSs4 for an operation and a candidate subtraction."""
    g = op.group
    idx = np.arange(g.size)
    x, y = idx[:, None], idx[None, :]
    star = op.star
    return {
        "iSs1": bool((star[q, y] == x).all()),
        "iSs2": bool((q[star, y] == x).all()),
        "iSs3": bool((q[idx, g.identity] == idx).all()),
        "iSs4": bool((q[idx, idx] == g.identity).all()),
    }


# ---------------------------------------------------------------- 2-Engel

ENGEL_CONDITIONS = (
    "[[x,y],y]=1",
    "[[x,y],x]=1",
    "[yxy^-1,x]=1",
    "[x,y^-1]=[x,y]^-1",
    "[x^-1,y]=[x,y]^-1",
    "[x,y^k]=[x,y]^k",
    "[x^k,y]=[x,y]^k",
)


@dataclass
class EngelReport:
    verdicts: dict[str, bool]
    witnesses: dict[str, tuple | None]

    @property
    def is_2engel(self) -> bool:
        return self.verdicts[ENGEL_CONDITIONS[0]]

    @property
    def consistent(self) -> bool:
        return len(set(self.verdicts.values())) == 1


def _first_pair(mask):
    bad = np.argwhere(~mask)
    return None if len(bad) == 0 else tuple(int(v) for v in bad[0])


def is_2engel(g: FiniteGroup) -> EngelReport:
    """Check every equivalent 2-Engel condition exhaustively.

    Powers k range over 0..exponent-1, which covers all integers since both
    sides are periodic in k with period dividing the exponent.
    """
    t, inv, e = g.table, g.inverse, g.identity
    c = g.commutator_table
    n = g.size
    idx = np.arange(n)
    x, y = idx[:, None], idx[None, :]
    v, w = {}, {}

    def record(name, mask, wit=None):
        v[name] = bool(mask.all())
        w[name] = wit if wit is not None else _first_pair(mask)

    record(ENGEL_CONDITIONS[0], c[c, y] == e)
    record(ENGEL_CONDITIONS[1], c[c, x] == e)
    conj = t[t[y, x], inv[None, :]]                     # y x y^-1 at [x, y]
    record(ENGEL_CONDITIONS[2], c[conj, x] == e)
    record(ENGEL_CONDITIONS[3], c[x, inv[None, :]] == inv[c])
    record(ENGEL_CONDITIONS[4], c[inv[:, None], y] == inv[c])

    exp = g.exponent
    pw = K.power_table(t, inv, e, exp)
    ok_y, ok_x = True, True
    wy = wx = None
    for k in range(exp):
        ck = pw[exp + k][c]
        my = c[x, pw[exp + k][None, :]] == ck
        mx = c[pw[exp + k][:, None], y] == ck
        if ok_y and not my.all():
            ok_y, wy = False, _first_pair(my) + (k,)
        if ok_x and not mx.all():
            ok_x, wx = False, _first_pair(mx) + (k,)
    v[ENGEL_CONDITIONS[5]], w[ENGEL_CONDITIONS[5]] = ok_y, wy
    v[ENGEL_CONDITIONS[6]], w[ENGEL_CONDITIONS[6]] = ok_x, wx
    return EngelReport(v, w)


def engel_pair(g: FiniteGroup, x: int, y: int) -> dict:
    """[x,y], [x,y] y and y [x,y] for one pair; they differ iff [[x,y],y] != 1."""
    c = int(g.commutator_table[x, y])
    cy = int(g.table[c, y])
    yc = int(g.table[y, c])
    return {"x": x, "y": y, "commutator": c, "commutator_times_y": cy, "y_times_commutator": yc, "commute": cy == yc}


def exponent_of(g: FiniteGroup, elements) -> int:
    return reduce(math.lcm, (g.element_order(int(a)) for a in elements), 1)


def commutator_exponent(g: FiniteGroup) -> int:
    """Exponent of the derived subgroup."""
    return exponent_of(g, derived_subgroup(g).elements)


def engel_star_coefficient(g: FiniteGroup, t: SplittingTemplate | InducedOperation) -> int:
    """Least k in [0, exponent) with x * y = [x,y]^k x y on all pairs."""
    op = t if isinstance(t, InducedOperation) else induced_op(g, t)
    exp = g.exponent
    pw = K.power_table(g.table, g.inverse, g.identity, exp)
    c = g.commutator_table
    valid_any = np.zeros(op.star.shape, dtype=bool)
    for k in range(exp):
        mask = g.table[pw[exp + k][c], g.table] == op.star
        if mask.all():
            return k
        valid_any |= mask
    raise NoUniformK(_first_pair(valid_any))


def engel_star_coefficient_bruteforce(g: FiniteGroup, t: SplittingTemplate) -> int | None:
    """Reference scan with scalar group arithmetic; None when no k is uniform."""
    star = {}
    for x in g:
        for y in g:
            acc = g.identity
            for k, l in t.pairs:
                acc = g.mul(acc, g.power(x, k), g.power(y, l))
            star[x, y] = acc
    for k in range(g.exponent):
        if all(g.mul(g.power(g.mul(x, y, g.inv(x), g.inv(y)), k), x, y) == star[x, y] for x in g for y in g):
            return k
    return None


def binary_commutators_distribute(g: FiniteGroup) -> tuple[bool, tuple | None]:
    """Inside every 2-generated subgroup: [[a,b],c] = 1, [ab,c] = [b,c][a,c],
    [a,bc] = [a,b][a,c], [a^-1,b] = [a,b]^-1 = [a,b^-1].

    Returns (holds, (x, y, a, b, c)) with the first failing triple.
    """
    t, inv, e = g.table, g.inverse, g.identity
    c = g.commutator_table
    seen = set()
    for x in g:
        for y in g:
            h = generated_submonoid(g, [x, y]).elements
            key = h.tobytes()
            if key in seen:
                continue
            seen.add(key)
            a, b, cc = h[:, None, None], h[None, :, None], h[None, None, :]
            checks = (
                c[c[a, b], cc] == e,
                c[t[a, b], cc] == t[c[b, cc], c[a, cc]],
                c[a, t[b, cc]] == t[c[a, b], c[a, cc]],
                np.broadcast_to(c[inv[a], b] == inv[c[a, b]], (len(h),) * 3),
                np.broadcast_to(c[a, inv[b]] == inv[c[a, b]], (len(h),) * 3),
            )
            for m in checks:
                if not m.all():
                    i, j, k = np.argwhere(~m)[0]
                    return False, (x, y, int(h[i]), int(h[j]), int(h[k]))
    return True, None


def simple_t_engel_equivalence(g: FiniteGroup) -> dict:
    """(x * y^-1) * y = x for the simple template, compared with the 2-Engel verdict."""
    op = induced_op(g, SIMPLE)
    idx = np.arange(g.size)
    q = op.star[idx[:, None], g.inverse[None, :]]
    mask = op.star[q, idx[None, :]] == idx[:, None]
    holds = bool(mask.all())
    engel = is_2engel(g).is_2engel
    return {"identity_holds": holds, "witness": _first_pair(mask), "is_2engel": engel, "agree": holds == engel}


@dataclass
class TemplateSweep:
    group: str
    bounds: tuple[int, int]
    results: list[tuple[str, bool]] = field(default_factory=list)
    coefficients: dict[str, int] = field(default_factory=dict)
    is_2engel: bool = False
    k_reduction: dict[int, bool] | None = None
    complete: bool = False

    @property
    def count(self) -> int:
        return len(self.results)

    @property
    def all_special(self) -> bool:
        ok = all(v for _, v in self.results)
        if self.k_reduction is not None:
            ok = ok and all(self.k_reduction.values())
        return ok


def special_for_all_templates(g: FiniteGroup, max_length: int = DEFAULT_LENGTH, max_exponent: int = DEFAULT_EXPONENT) -> TemplateSweep:
    """Bounded sweep over templates; for 2-Engel groups also the complete k-reduction.

    On a 2-Engel group every template folds to some [x,y]^k x y with k taken
    modulo the exponent of the derived subgroup, so checking those finitely
    many operations covers all templates.  Otherwise only the bounded
    enumeration is claimed and ``complete`` stays False.
    """
    sweep = TemplateSweep(g.name, (max_length, max_exponent))
    sweep.is_2engel = is_2engel(g).is_2engel
    for t in enumerate_templates(max_length, max_exponent):
        op = induced_op(g, t)
        sweep.results.append((str(t), special_wrt(g, op).is_special))
        if sweep.is_2engel:
            sweep.coefficients[str(t)] = engel_star_coefficient(g, op)
    if sweep.is_2engel:
        e = commutator_exponent(g)
        sweep.k_reduction = {k: special_wrt(g, commutator_power_op(g, k)).is_special for k in range(e)}
        sweep.complete = all(sweep.k_reduction.values())
    return sweep


# ---------------------------------------------------------------- counterexample search


@dataclass(frozen=True)
class Finding:
    group: str
    template: str
    special: bool
    witness: tuple[int, int, int] | None

    @property
    def key(self):
        return (self.group, self.template)


def _findings_for(args):
    g, templates = args
    out = []
    for t in templates:
        r = special_wrt(g, t)
        out.append(Finding(g.name, str(t), r.is_special, r.witness))
    return out


def search_counterexamples(groups: Iterable[FiniteGroup], templates: Iterable[SplittingTemplate], workers: int | None = None) -> Iterator[Finding]:
    """Stream (group, template, verdict, witness) findings.

    With ``workers > 1`` groups are fanned out to processes; each finding
    carries its own key so consumers need not rely on arrival order.
    """
    templates = list(templates)
    jobs = [(g, templates) for g in groups]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for batch in ex.map(_findings_for, jobs):
                yield from batch
    else:
        for job in jobs:
            yield from _findings_for(job)
