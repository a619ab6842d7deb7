"""Algebra files: YAML documents tagged by ``kind``.

Kinds: ``monoid``, ``group``, ``lie``, ``pointed_set``, ``extension``.
Semantic errors are reported against the position of the offending node,
so every :class:`FormatError` from a malformed file carries a line and a
column.  See ``docs/formats.md`` for the field reference.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from . import lie
from .algebra import (
    FiniteGroup,
    FiniteMonoid,
    as_group,
    from_presentation,
    hom,
    is_isomorphic,
    validate_monoid,
)
from .errors import AlgebraError, FormatError
from .psetop import PointedSet
from .schreier import SplitExtension, split_extension

KINDS = ("monoid", "group", "lie", "pointed_set", "extension")
SUFFIXES = (".alg", ".yaml", ".yml")


_SCALARS = yaml.SafeLoader("")


class _Doc:
    """A plain value tree plus the source position of every node, keyed by path."""

    def __init__(self, node: yaml.Node, path: str | None):
        self.path = path
        self.marks: dict[tuple, yaml.Mark] = {}
        self.value = self._convert(node, ())

    def _convert(self, node, key):
        self.marks[key] = node.start_mark
        if isinstance(node, yaml.MappingNode):
            out = {}
            for k, v in node.value:
                name = k.value
                if name in out:
                    raise self.error(f"duplicate key {name!r}", key + (name,), k.start_mark)
                out[name] = self._convert(v, key + (name,))
            return out
        if isinstance(node, yaml.SequenceNode):
            return [self._convert(v, key + (i,)) for i, v in enumerate(node.value)]
        return _SCALARS.construct_object(node)

    def error(self, message: str, key: tuple = (), mark=None) -> FormatError:
        while mark is None and key and key not in self.marks:
            key = key[:-1]
        mark = mark or self.marks.get(key)
        if mark is None:
            return FormatError(message, path=self.path)
        return FormatError(message, mark.line + 1, mark.column + 1, self.path)

    def get(self, key: tuple):
        v = self.value
        for k in key:
            v = v[k]
        return v


def _compose(text: str, path) -> yaml.Node:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        m = exc.problem_mark
        raise FormatError(exc.problem or "malformed YAML", m.line + 1 if m else None, m.column + 1 if m else None, path) from None
    if node is None:
        raise FormatError("empty document", 1, 1, path)
    return node


def parse_text(text: str, path: str | None = None):
    """Parse one algebra document into a FiniteMonoid, FiniteGroup, LieAlgebra,
    PointedSet or SplitExtension."""
    doc = _Doc(_compose(text, path), path)
    if not isinstance(doc.value, dict):
        raise doc.error("top level must be a mapping")
    return _build(doc, ())


def load(path) -> Any:
    p = Path(path)
    return parse_text(p.read_text(), str(p))


def digest(text: str | bytes) -> str:
    data = text.encode() if isinstance(text, str) else text
    return "sha256:" + hashlib.sha256(data).hexdigest()[:16]


# ---------------------------------------------------------------- builders


def _need(doc: _Doc, key: tuple, field: str, types, what: str):
    v = doc.get(key)
    if field not in v:
        raise doc.error(f"missing field {field!r}", key)
    val = v[field]
    if not isinstance(val, types) or (isinstance(val, bool) and types is int):
        raise doc.error(f"{field!r} must be {what}", key + (field,))
    return val


def _labels(doc, key, size):
    v = doc.get(key).get("labels")
    if v is None:
        return None
    if not isinstance(v, list) or not all(isinstance(s, (str, int)) for s in v):
        raise doc.error("'labels' must be a list of strings", key + ("labels",))
    if len(v) != size:
        raise doc.error(f"'labels' has {len(v)} entries, expected {size}", key + ("labels",))
    labels = [str(s) for s in v]
    if len(set(labels)) != len(labels):
        raise doc.error("labels must be distinct", key + ("labels",))
    return labels


def _table(doc, key):
    rows = _need(doc, key, "table", list, "a list of rows")
    n = len(rows)
    if n == 0:
        raise doc.error("'table' is empty", key + ("table",))
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != n:
            raise doc.error(f"row {i} must have {n} entries", key + ("table", i))
        for j, c in enumerate(r):
            if isinstance(c, bool) or not isinstance(c, int) or not 0 <= c < n:
                raise doc.error(f"entry must be an integer in [0, {n})", key + ("table", i, j))
    return np.array(rows, dtype=np.int64)


def _element(doc, key, field, m_labels, size, default=None):
    v = doc.get(key).get(field, default)
    if v is None:
        return None
    if isinstance(v, int) and not isinstance(v, bool):
        if not 0 <= v < size:
            raise doc.error(f"{field!r} out of range", key + (field,))
        return v
    if isinstance(v, str) and m_labels and v in m_labels:
        return m_labels.index(v)
    raise doc.error(f"{field!r} must be an index or a label", key + (field,))


def _finite(doc, key, group: bool):
    d = doc.get(key)
    name = str(d.get("name", ""))
    pres = d.get("presentation")
    built = None
    if pres is not None:
        if not group:
            raise doc.error("presentations are only allowed for kind: group", key + ("presentation",))
        if not isinstance(pres, dict) or "generators" not in pres or "relators" not in pres:
            raise doc.error("presentation needs 'generators' and 'relators'", key + ("presentation",))
        try:
            built = from_presentation(pres["generators"], pres["relators"], name=name)
        except (AlgebraError, ValueError) as exc:
            raise doc.error(str(exc), key + ("presentation",)) from None
    if "table" not in d:
        if built is None:
            raise doc.error("missing field 'table'", key)
        return built
    t = _table(doc, key)
    labels = _labels(doc, key, len(t))
    ident = _element(doc, key, "identity", labels, len(t))
    try:
        m = validate_monoid(t, ident, labels, name)
        if group:
            m = as_group(m)
    except AlgebraError as exc:
        raise doc.error(str(exc), key + ("table",)) from None
    if built is not None and not is_isomorphic(m, built):
        raise doc.error("table and presentation describe different groups", key + ("presentation",))
    return m


def _lie(doc, key):
    d = doc.get(key)
    dim = _need(doc, key, "dim", int, "a positive integer")
    if dim < 1:
        raise doc.error("'dim' must be positive", key + ("dim",))
    labels = _labels(doc, key, dim)
    cons = {}
    for i, entry in enumerate(d.get("brackets") or []):
        ek = key + ("brackets", i)
        if not isinstance(entry, dict) or "pair" not in entry or "value" not in entry:
            raise doc.error("bracket entries need 'pair' and 'value'", ek)
        pair = entry["pair"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise doc.error("'pair' must be [i, j]", ek + ("pair",))
        idx = []
        for t, p in enumerate(pair):
            if isinstance(p, str) and labels and p in labels:
                idx.append(labels.index(p))
            elif isinstance(p, int) and not isinstance(p, bool) and 0 <= p < dim:
                idx.append(p)
            else:
                raise doc.error(f"unknown basis element {p!r}", ek + ("pair", t))
        val = entry["value"]
        if not isinstance(val, list) or len(val) != dim:
            raise doc.error(f"'value' must list {dim} coordinates", ek + ("value",))
        try:
            vec = tuple(lie.rational(str(c)) for c in val)
        except (ValueError, ZeroDivisionError):
            raise doc.error("coordinates must be rationals like '-2' or '1/2'", ek + ("value",)) from None
        pk = tuple(idx)
        if pk in cons:
            raise doc.error(f"bracket {pk} listed twice", ek)
        cons[pk] = vec
    try:
        return lie.validate_lie(cons, dim, labels, str(d.get("name", "")))
    except AlgebraError as exc:
        raise doc.error(str(exc), key + ("brackets",)) from None


def _pointed(doc, key):
    size = _need(doc, key, "size", int, "a positive integer")
    if size < 1:
        raise doc.error("'size' must be positive", key + ("size",))
    labels = _labels(doc, key, size)
    base = _element(doc, key, "basepoint", labels, size, 0)
    return PointedSet(size, base, tuple(labels) if labels else None)


def _map(doc, key, field, src: FiniteMonoid, dst: FiniteMonoid):
    v = doc.get(key).get(field)
    if not isinstance(v, list) or len(v) != src.size:
        raise doc.error(f"{field!r} must list the image of all {src.size} elements", key + (field,))
    out = []
    for i, y in enumerate(v):
        if isinstance(y, str) and dst.labels and y in dst.labels:
            out.append(dst.labels.index(y))
        elif isinstance(y, int) and not isinstance(y, bool) and 0 <= y < dst.size:
            out.append(y)
        else:
            raise doc.error(f"bad image {y!r}", key + (field, i))
    try:
        return hom(src, dst, out)
    except AlgebraError as exc:
        raise doc.error(f"{field}: {exc}", key + (field,)) from None


def _extension(doc, key):
    d = doc.get(key)
    for side in ("X", "Y"):
        if not isinstance(d.get(side), dict):
            raise doc.error(f"missing mapping {side!r}", key)
    X = _build(doc, key + ("X",))
    Y = _build(doc, key + ("Y",))
    if not (isinstance(X, FiniteMonoid) and isinstance(Y, FiniteMonoid)):
        raise doc.error("extension objects must be monoids or groups", key)
    f = _map(doc, key, "f", X, Y)
    s = _map(doc, key, "s", Y, X)
    try:
        return split_extension(f, s)
    except AlgebraError as exc:
        raise doc.error(str(exc), key + ("s",)) from None


def _build(doc: _Doc, key: tuple):
    d = doc.get(key)
    kind = d.get("kind")
    if kind not in KINDS:
        raise doc.error(f"'kind' must be one of {', '.join(KINDS)}", key + ("kind",) if "kind" in d else key)
    if kind == "monoid":
        return _finite(doc, key, False)
    if kind == "group":
        return _finite(doc, key, True)
    if kind == "lie":
        return _lie(doc, key)
    if kind == "pointed_set":
        return _pointed(doc, key)
    return _extension(doc, key)


# ---------------------------------------------------------------- serializer


def _flow(rows) -> str:
    return "[" + ", ".join(str(int(v)) for v in rows) + "]"


def _qs(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _lines(obj, indent: str = "") -> list[str]:
    out = []
    if isinstance(obj, FiniteMonoid):
        out.append(f"{indent}kind: {'group' if isinstance(obj, FiniteGroup) else 'monoid'}")
        if obj.name:
            out.append(f"{indent}name: {_qs(obj.name)}")
        out.append(f"{indent}identity: {obj.identity}")
        if obj.labels:
            out.append(f"{indent}labels: [" + ", ".join(_qs(s) for s in obj.labels) + "]")
        out.append(f"{indent}table:")
        out.extend(f"{indent}  - {_flow(r)}" for r in obj.table)
    elif isinstance(obj, lie.LieAlgebra):
        out.append(f"{indent}kind: lie")
        if obj.name:
            out.append(f"{indent}name: {_qs(obj.name)}")
        out.append(f"{indent}dim: {obj.dim}")
        if obj.labels:
            out.append(f"{indent}labels: [" + ", ".join(_qs(s) for s in obj.labels) + "]")
        if obj.constants:
            out.append(f"{indent}brackets:")
            for (i, j), v in sorted(obj.constants.items()):
                vals = ", ".join(_qs(str(c)) for c in v)
                out.append(f"{indent}  - {{pair: [{i}, {j}], value: [{vals}]}}")
        else:
            out.append(f"{indent}brackets: []")
    elif isinstance(obj, PointedSet):
        out.append(f"{indent}kind: pointed_set")
        out.append(f"{indent}size: {obj.size}")
        out.append(f"{indent}basepoint: {obj.basepoint}")
        if obj.labels:
            out.append(f"{indent}labels: [" + ", ".join(_qs(s) for s in obj.labels) + "]")
    elif isinstance(obj, SplitExtension):
        out.append(f"{indent}kind: extension")
        out.append(f"{indent}X:")
        out.extend(_lines(obj.X, indent + "  "))
        out.append(f"{indent}Y:")
        out.extend(_lines(obj.Y, indent + "  "))
        out.append(f"{indent}f: {_flow(obj.f.map)}")
        out.append(f"{indent}s: {_flow(obj.s.map)}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return out


def serialize(obj) -> str:
    """Deterministic text form; :func:`parse_text` inverts it."""
    return "\n".join(_lines(obj)) + "\n"


def same(a, b) -> bool:
    """Structural equality used by the round-trip checks."""
    if isinstance(a, SplitExtension) and isinstance(b, SplitExtension):
        return a.X == b.X and a.Y == b.Y and np.array_equal(a.f.map, b.f.map) and np.array_equal(a.s.map, b.s.map)
    if isinstance(a, lie.LieAlgebra) and isinstance(b, lie.LieAlgebra):
        return a == b and a.labels == b.labels and a.name == b.name
    return type(a) is type(b) and a == b


# ---------------------------------------------------------------- catalogue directories


def load_directory(path) -> dict[str, Any]:
    """Every algebra file in a directory, keyed by its name (or file stem)."""
    out = {}
    for p in sorted(Path(path).iterdir()):
        if p.suffix in SUFFIXES and p.is_file():
            obj = load(p)
            name = getattr(obj, "name", "") or p.stem
            out[name] = obj
    return out


def write_directory(cat: dict, path) -> list[Path]:
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for name, obj in cat.items():
        p = root / f"{name}.alg"
        p.write_text(serialize(obj))
        written.append(p)
    return written
