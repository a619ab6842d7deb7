"""Analyses packaged as plain records.

A record is a JSON-ready dict::

    {"record": "result", "key": ..., "analysis": ..., "summary": ...,
     "verdicts": {name: bool}, "witnesses": {name: value | None},
     "details": {...}, "complete": bool}

Every false verdict has a non-null witness, and ``complete`` is False for
bounded sweeps.  Element indices are rendered through their labels.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

import numpy as np

from . import lie as L
from . import psetop
from .algebra import FiniteGroup, FiniteMonoid, as_group, generated_submonoid
from .errors import AlgebraError, NoUniformK
from .schreier import SplitExtension, analyze, is_strong, retractions_satisfying_s1_s2
from .special import agreement
from .templates import (
    ENGEL_CONDITIONS,
    SplittingTemplate,
    engel_pair,
    engel_star_coefficient,
    induced_op,
    is_2engel,
    simple_t_engel_equivalence,
    special_for_all_templates,
    special_wrt,
)


class MissingWitness(AssertionError):
    pass


def result(key, analysis, summary, verdicts, witnesses, details=None, complete=True) -> dict:
    for name, ok in verdicts.items():
        if not ok and witnesses.get(name) is None:
            raise MissingWitness(f"{key}/{analysis}: verdict {name!r} is false without a witness")
    return {
        "record": "result",
        "key": key,
        "analysis": analysis,
        "summary": summary,
        "verdicts": dict(verdicts),
        "witnesses": {k: witnesses.get(k) for k in verdicts},
        "details": details or {},
        "complete": bool(complete),
    }


def _lab(m: FiniteMonoid, x) -> str:
    return m.label(int(x))


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# ---------------------------------------------------------------- validate


def validate_record(key: str, obj) -> dict:
    if isinstance(obj, FiniteMonoid):
        kind = "group" if isinstance(obj, FiniteGroup) else "monoid"
        details = {"kind": kind, "order": obj.size, "commutative": obj.is_commutative}
        return result(key, "validate", f"OK: {kind} of order {obj.size}", {"valid": True}, {}, details)
    if isinstance(obj, L.LieAlgebra):
        return result(key, "validate", f"OK: Lie algebra of dimension {obj.dim}", {"valid": True}, {}, {"kind": "lie", "dim": obj.dim})
    if isinstance(obj, psetop.PointedSet):
        return result(key, "validate", f"OK: pointed set of size {obj.size}", {"valid": True}, {}, {"kind": "pointed_set", "size": obj.size})
    if isinstance(obj, SplitExtension):
        d = {"kind": "extension", "X": obj.X.size, "Y": obj.Y.size, "K": len(obj.K)}
        return result(key, "validate", f"OK: split epimorphism {obj.X.size} -> {obj.Y.size}", {"valid": True}, {}, d)
    raise TypeError(type(obj).__name__)


# ---------------------------------------------------------------- schreier


def extension_record(key: str, ext: SplitExtension) -> dict:
    X = ext.X
    a = analyze(ext)
    v = {"schreier": a.is_schreier, "left_homogeneous": a.is_left_homogeneous}
    w: dict[str, Any] = {}
    if a.witness:
        w["schreier"] = {"x": _lab(X, a.witness[0]), "decompositions": a.witness[1]}
    if a.left_witness:
        w["left_homogeneous"] = {"x": _lab(X, a.left_witness[0]), "decompositions": a.left_witness[1]}
    strong = is_strong(ext)
    v["strong"] = strong
    if not strong:
        gen = generated_submonoid(X, np.concatenate([ext.K.elements, np.unique(ext.s.map)]))
        missing = next(x for x in range(X.size) if x not in gen)
        w["strong"] = {"not_generated": _lab(X, missing)}
    details = {"order_X": X.size, "order_Y": ext.Y.size, "order_K": len(ext.K)}
    if a.is_schreier:
        for name, ok in a.properties.verdicts.items():
            v[name] = ok
            wit = a.properties.witnesses[name]
            w[name] = None if wit is None else [_lab(X, i) for i in wit]
        hits = retractions_satisfying_s1_s2(ext, limit=2)
        v["q_unique"] = len(hits) == 1
        if len(hits) != 1:
            w["q_unique"] = {"retractions_found": len(hits)}
        details["q"] = {X.label(x): X.label(int(k)) for x, k in enumerate(a.kq)}
    summary = f"Schreier: {_yes(a.is_schreier)}"
    if a.witness:
        summary += f" ({a.witness[1]} decompositions of {_lab(X, a.witness[0])})"
    return result(key, "schreier", summary, v, w, details)


# ---------------------------------------------------------------- special objects


def special_record(key: str, m: FiniteMonoid) -> dict:
    v, w = {}, {}
    details = {}
    for side in ("right", "left"):
        ag = agreement(m, side)
        v[f"{side}_special"] = ag["schreier_special"]
        v[f"{side}_loop"] = ag["loop"]
        v[f"{side}_agree"] = ag["agree"]
        if ag["special_witness"]:
            x, c = ag["special_witness"]
            w[f"{side}_special"] = {"pair": _pair_label(m, x), "decompositions": c}
        if ag["loop_witness"] is not None:
            w[f"{side}_loop"] = {"translation_by": _lab(m, ag["loop_witness"])}
        if not ag["agree"]:
            w[f"{side}_agree"] = {"schreier_special": ag["schreier_special"], "loop": ag["loop"], "group": ag["group"]}
        if ag["same_q"] is not None:
            v[f"{side}_same_q"] = ag["same_q"]
            if not ag["same_q"]:
                w[f"{side}_same_q"] = {"tables_differ": True}
            for ax, ok in ag["axioms"].items():
                v[f"{side} {ax}"] = ok
                if not ok:
                    w[f"{side} {ax}"] = {"axiom": ax}
    try:
        as_group(m)
        v["group"] = True
    except AlgebraError as exc:
        v["group"] = False
        w["group"] = {"no_inverse": _lab(m, exc.witness) if isinstance(exc.witness, (int, np.integer)) else str(exc.witness)}
    details["order"] = m.size
    summary = f"special: {_yes(v['right_special'])}; group: {_yes(v['group'])}"
    return result(key, "special", summary, v, w, details)


def _pair_label(m: FiniteMonoid, p: int) -> str:
    x, y = divmod(int(p), m.size)
    return f"({m.label(x)},{m.label(y)})"


# ---------------------------------------------------------------- engel


def engel_record(key: str, g: FiniteGroup, pair: tuple[int, int] | None = None) -> dict:
    rep = is_2engel(g)
    v, w = {}, {}
    for name in ENGEL_CONDITIONS:
        v[name] = rep.verdicts[name]
        wit = rep.witnesses[name]
        if wit is not None:
            d = {"x": _lab(g, wit[0]), "y": _lab(g, wit[1])}
            if len(wit) > 2:
                d["k"] = int(wit[2])
            w[name] = d
    v["conditions_agree"] = rep.consistent
    if not rep.consistent:
        w["conditions_agree"] = {k: b for k, b in rep.verdicts.items()}
    v["2-engel"] = rep.is_2engel
    details = {"order": g.size}
    shown = pair
    if not rep.is_2engel:
        wx, wy = rep.witnesses[ENGEL_CONDITIONS[0]][:2]
        w["2-engel"] = {"x": _lab(g, wx), "y": _lab(g, wy)}
        shown = shown or (wx, wy)
    if shown is not None:
        ep = engel_pair(g, *shown)
        details["pair"] = {
            "x": _lab(g, ep["x"]),
            "y": _lab(g, ep["y"]),
            "[x,y]": _lab(g, ep["commutator"]),
            "[x,y]y": _lab(g, ep["commutator_times_y"]),
            "y[x,y]": _lab(g, ep["y_times_commutator"]),
        }
    if rep.is_2engel:
        summary = "2-Engel"
    else:
        summary = f"not 2-Engel; witness x={w['2-engel']['x']}, y={w['2-engel']['y']}"
    if shown is not None:
        p = details["pair"]
        rel = "=" if p["[x,y]y"] == p["y[x,y]"] else "!="
        summary += f"; [{p['x']},{p['y']}] = {p['[x,y]']}, [{p['x']},{p['y']}]{p['y']} = {p['[x,y]y']} {rel} {p['y[x,y]']} = {p['y']}[{p['x']},{p['y']}]"
    return result(key, "engel", summary, v, w, details)


# ---------------------------------------------------------------- templates


def _latin_witness(star: np.ndarray):
    n = star.shape[0]
    for y in range(n):
        if len(np.unique(star[:, y])) != n:
            return ("column", y)
    for x in range(n):
        if len(np.unique(star[x, :])) != n:
            return ("row", x)
    return None


def template_record(key: str, g: FiniteGroup, t: SplittingTemplate) -> dict:
    op = induced_op(g, t)
    sp = special_wrt(g, op)
    v = {"special": sp.is_special}
    w = {}
    lw = _latin_witness(op.star)
    v["latin_square"] = lw is None
    details = {"template": str(t), "order": g.size}
    if lw is not None:
        w["latin_square"] = {lw[0]: _lab(g, lw[1])}
    if not sp.is_special:
        y, z1, z2 = sp.witness
        e = g.identity
        w["special"] = {
            "y": _lab(g, y),
            "collision": [_lab(g, z1), _lab(g, z2)],
            "q(1,y)_candidates": [_lab(g, z) for z in sp.solutions(op, e, y)],
        }
    try:
        k = engel_star_coefficient(g, op)
        details["engel_k"] = k
    except NoUniformK as exc:
        details["engel_k"] = None
        details["no_uniform_k_at"] = [_lab(g, i) for i in exc.witness] if exc.witness else None
    if sp.is_special:
        summary = "special: yes" + (" (Latin square)" if lw is None else "")
    else:
        cands = ", ".join(w["special"]["q(1,y)_candidates"])
        summary = f"special: no; z*{w['special']['y']} = 1 for z in {{{cands}}}"
    return result(key, "template", summary, v, w, details)


def sweep_record(key: str, g: FiniteGroup, max_length: int, max_exponent: int) -> dict:
    sw = special_for_all_templates(g, max_length, max_exponent)
    v = {"enumerated_all_special": all(ok for _, ok in sw.results)}
    w = {}
    if not v["enumerated_all_special"]:
        first = next(t for t, ok in sw.results if not ok)
        w["enumerated_all_special"] = {"template": first}
    details = {
        "bounds": [max_length, max_exponent],
        "templates": sw.count,
        "special_count": sum(ok for _, ok in sw.results),
        "is_2engel": sw.is_2engel,
    }
    if sw.k_reduction is not None:
        v["k_reduction_all_special"] = all(sw.k_reduction.values())
        if not v["k_reduction_all_special"]:
            w["k_reduction_all_special"] = {"k": next(k for k, ok in sw.k_reduction.items() if not ok)}
        details["k_values"] = sorted(sw.k_reduction)
        details["coefficient_histogram"] = _histogram(sw.coefficients.values())
    eq = simple_t_engel_equivalence(g)
    v["simple_t_matches_2engel"] = eq["agree"]
    if not eq["agree"]:
        w["simple_t_matches_2engel"] = {"identity_holds": eq["identity_holds"], "is_2engel": eq["is_2engel"]}
    details["simple_t_identity_holds"] = eq["identity_holds"]
    if eq["witness"] is not None:
        details["simple_t_identity_fails_at"] = [_lab(g, i) for i in eq["witness"]]
    coverage = "complete via k-reduction" if sw.complete else f"bounded (L={max_length}, E={max_exponent}); incomplete"
    summary = f"{details['special_count']}/{sw.count} templates special; {coverage}"
    return result(key, "templates", summary, v, w, details, complete=sw.complete)


def _histogram(values: Iterable[int]) -> dict[str, int]:
    out: dict[str, int] = {}
    for k in values:
        out[str(k)] = out.get(str(k), 0) + 1
    return dict(sorted(out.items(), key=lambda kv: int(kv[0])))


# ---------------------------------------------------------------- lie


def _vec(A: L.LieAlgebra, v) -> str:
    return A.format(v)


def lie_record(key: str, A: L.LieAlgebra, ks=L.K_VALUES, seed: int = L.DEFAULT_SEED) -> dict:
    rep = L.is_2engel_lie(A, seed)
    v = {"2-engel": rep.is_2engel, "polarized": rep.polarized, "sampled": rep.sampled, "oracles_agree": rep.consistent}
    w: dict[str, Any] = {}
    if rep.direct_witness is not None:
        x, y, val = rep.direct_witness
        w["sampled"] = {"x": _vec(A, x), "y": _vec(A, y), "[[x,y],y]": _vec(A, val)}
    if rep.polarized_witness is not None:
        i, j, k = rep.polarized_witness
        w["polarized"] = {"basis_triple": [i, j, k]}
        w["2-engel"] = w.get("sampled") or w["polarized"]
    if not rep.consistent:
        w["oracles_agree"] = {"polarized": rep.polarized, "sampled": rep.sampled}
    details: dict[str, Any] = {"dim": A.dim, "samples": rep.samples, "seed": seed, "ansatz": {}}
    for k in ks:
        c = L.loop_check_lie(A, k, seed)
        name = f"loop k={c.k}"
        v[name] = c.holds
        if c.witness is not None:
            x, y, ax = c.witness
            w[name] = {"x": _vec(A, x), "y": _vec(A, y), "axiom": ax}
        details["ansatz"][str(c.k)] = {"alpha": str(c.alpha), "beta": str(c.beta), "pairs_checked": c.pairs}
    if rep.is_2engel:
        summary = "2-Engel"
    elif "sampled" in w:
        ws = w["sampled"]
        summary = f"not 2-Engel; [[x,y],y] = {ws['[[x,y],y]']} at x={ws['x']}, y={ws['y']}"
    else:
        summary = "not 2-Engel"
    loops = [n for n in v if n.startswith("loop")]
    summary += f"; loop checks passed {sum(v[n] for n in loops)}/{len(loops)}"
    return result(key, "lie", summary, v, w, details)


# ---------------------------------------------------------------- pointed sets


def pointed_record(key: str, Y: psetop.PointedSet) -> dict:
    verdict = psetop.is_special(Y)
    v = {"special": verdict.is_schreier, "special_iff_zero": verdict.is_schreier == (Y.size == 1)}
    w = {}
    wedge = psetop.special_split_mono(Y)
    if not verdict.is_schreier:
        w["special"] = {"element_of_Y+Y": wedge.X.label(verdict.witness), "s(element)": Y.label(wedge.s[verdict.witness])}
    if not v["special_iff_zero"]:
        w["special_iff_zero"] = {"size": Y.size}
    summary = f"special: {_yes(verdict.is_schreier)}"
    return result(key, "psetop", summary, v, w, {"size": Y.size, "candidates": verdict.candidates})


def census_record(n: int) -> dict:
    c = psetop.classify_all(n)
    v = {
        "verdict_matches_coproduct_shape": c.all_agree,
        "special_iff_zero": c.special_iff_zero,
        "monad_laws": all(d["all_hold"] for d in c.laws.values()),
    }
    w = {}
    if c.disagreements:
        nx, ny, f, s, got = c.disagreements[0]
        w["verdict_matches_coproduct_shape"] = {"X": nx, "Y": ny, "f": list(f), "s": list(s), "search": got}
    if not c.special_iff_zero:
        w["special_iff_zero"] = {"size": next(k for k, b in c.special.items() if b != (k == 1))}
    if not v["monad_laws"]:
        w["monad_laws"] = {"size": next(k for k, d in c.laws.items() if not d["all_hold"])}
    details = {
        "max_size": n,
        "instances": c.instances,
        "schreier": c.schreier,
        "special_by_size": {str(k): b for k, b in c.special.items()},
        "law_modes": {str(k): d["assoc_mode"] for k, d in c.laws.items()},
    }
    summary = f"{c.instances} split monos, {c.schreier} intrinsic Schreier; predicate agreement: {_yes(c.all_agree)}"
    return result(f"census(n<={n})", "psetop-census", summary, v, w, details)


# ---------------------------------------------------------------- emission


def _jsonable(o):
    if isinstance(o, dict):
        return {str(k): _jsonable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_jsonable(v) for v in o]
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if o is None or isinstance(o, (bool, int, float, str)):
        return o
    return str(o)


def dumps(record: dict) -> str:
    return json.dumps(_jsonable(record), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def render_text(record: dict, verbose: bool = False) -> list[str]:
    if record.get("record") != "result":
        return []
    lines = [f"{record['key']} [{record['analysis']}]: {record['summary']}"]
    for name, ok in record["verdicts"].items():
        wit = record["witnesses"].get(name)
        if not ok:
            lines.append(f"  {name}: no  (witness: {json.dumps(_jsonable(wit), sort_keys=True, ensure_ascii=False)})")
        elif verbose:
            lines.append(f"  {name}: yes")
    if verbose and record["details"]:
        lines.append("  details: " + json.dumps(_jsonable(record["details"]), sort_keys=True, ensure_ascii=False))
    if not record["complete"]:
        lines.append("  coverage: bounded sweep, not a proof")
    return lines
