"""Schreier special objects of monoids and their one-sided loop structure.

A monoid M is special when the canonical point (pi2, <1,1>): M x M -> M is
Schreier.  Three routes decide it and must agree: the Schreier analysis of
that point, the existence of a right subtraction (every right translation is
a bijection), and the group test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels as K
from .algebra import FiniteMonoid, diagonal, is_group, product
from .schreier import SplitExtension, analyze, is_strong, split_extension

ORIENTATIONS = ("right", "left")


@dataclass(frozen=True, eq=False)
class LoopStructure:
    """A unital magma with subtraction.

    ``orientation="right"``: q(x, y) * y = x and q(x * y, y) = x.
    ``orientation="left"``:  x * q(x, y) = y and q(x, x * y) = y.
    """

    carrier: FiniteMonoid
    subtraction: np.ndarray
    orientation: str = "right"

    def axioms(self) -> dict[str, bool]:
        t, q = self.carrier.table, self.subtraction
        e = self.carrier.identity
        idx = np.arange(self.carrier.size)
        x, y = idx[:, None], idx[None, :]
        if self.orientation == "right":
            return {
                "iL1": bool((t[q, y] == x).all()),
                "iL2": bool((q[t, y] == x).all()),
                "q(x,1)=x": bool((q[idx, e] == idx).all()),
                "q(x,x)=1": bool((q[idx, idx] == e).all()),
            }
        return {
            "iL1": bool((t[x, q] == y).all()),
            "iL2": bool((q[x, t] == y).all()),
            "q(1,x)=x": bool((q[e, idx] == idx).all()),
            "q(x,x)=1": bool((q[idx, idx] == e).all()),
        }


def special_point(m: FiniteMonoid) -> SplitExtension:
    """M x M -> M by the second projection, split by the diagonal."""
    p = product(m, m)
    return split_extension(p.pi2, diagonal(m))


class SpecialVerdict(NamedTuple):
    is_special: bool
    loop: LoopStructure | None
    witness: tuple[int, int] | None      # (element of M x M, multiplicity)


def is_schreier_special(m: FiniteMonoid, orientation: str = "right") -> SpecialVerdict:
    ext = special_point(m)
    a = analyze(ext)
    n = m.size
    if orientation == "right":
        if not a.is_schreier:
            return SpecialVerdict(False, None, a.witness)
        # (x, y) = (q(x,y), 1) . (y, y), so the first coordinate of kq is q(x, y)
        sub = (a.kq // n).reshape(n, n)
        return SpecialVerdict(True, LoopStructure(m, sub, "right"), None)
    if orientation == "left":
        if not a.is_left_homogeneous:
            return SpecialVerdict(False, None, a.left_witness)
        # (u, v) = (v, v) . (a, 1) means v a = u, i.e. a = l(v, u)
        kq = ext.K.elements[a.left_q]
        sub = (kq // n).reshape(n, n).T.copy()
        return SpecialVerdict(True, LoopStructure(m, sub, "left"), None)
    raise ValueError(f"orientation must be one of {ORIENTATIONS}")


class LoopSearch(NamedTuple):
    loop: LoopStructure | None
    witness: int | None          # a y whose translation is not a bijection


def right_loop_structure(m: FiniteMonoid, orientation: str = "right") -> LoopSearch:
    """Subtraction found directly from the translations of M."""
    if orientation == "right":
        q, bad, _, _ = K.column_inverse(np.ascontiguousarray(m.table))
        if bad >= 0:
            return LoopSearch(None, int(bad))
        return LoopSearch(LoopStructure(m, q, "right"), None)
    if orientation == "left":
        q, bad, _, _ = K.column_inverse(np.ascontiguousarray(m.table.T))
        if bad >= 0:
            return LoopSearch(None, int(bad))
        # column_inverse on the transpose solves x * z = y for z, indexed [y, x]
        return LoopSearch(LoopStructure(m, q.T.copy(), "left"), None)
    raise ValueError(f"orientation must be one of {ORIENTATIONS}")


def is_protomodular_object_monoid(m: FiniteMonoid, points=()) -> dict:
    """Group test, plus an optional bounded strongness sweep of points over m."""
    report = {"is_group": is_group(m), "sweep_size": 0, "sweep_all_strong": None, "sweep_witness": None}
    if points:
        report["sweep_size"] = len(points)
        report["sweep_all_strong"] = True
        for i, p in enumerate(points):
            if not is_strong(p):
                report["sweep_all_strong"] = False
                report["sweep_witness"] = i
                break
    return report


def agreement(m: FiniteMonoid, orientation: str = "right") -> dict:
    """The three characterisations side by side, plus the q-table comparison."""
    sv = is_schreier_special(m, orientation)
    ls = right_loop_structure(m, orientation)
    grp = is_group(m)
    same_q = None
    axioms = None
    if sv.loop is not None and ls.loop is not None:
        same_q = bool(np.array_equal(sv.loop.subtraction, ls.loop.subtraction))
        axioms = sv.loop.axioms()
    return {
        "schreier_special": sv.is_special,
        "loop": ls.loop is not None,
        "group": grp,
        "agree": sv.is_special == (ls.loop is not None) == grp,
        "same_q": same_q,
        "axioms": axioms,
        "special_witness": sv.witness,
        "loop_witness": ls.witness,
    }
