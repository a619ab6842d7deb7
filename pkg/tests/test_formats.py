import textwrap
from pathlib import Path

import numpy as np
import pytest

from schreierlab import algebra as A
from schreierlab import catalogue as C
from schreierlab import formats as F
from schreierlab import lie, psetop
from schreierlab.errors import FormatError
from schreierlab.schreier import SplitExtension, analyze

ROOT = Path(__file__).resolve().parents[1]
SAMPLES = sorted((ROOT / "algebras").glob("*.alg"))


@pytest.mark.parametrize("name", sorted(C.builtin_catalogue()))
def test_catalogue_round_trip(name):
    obj = C.builtin_catalogue()[name]
    text = F.serialize(obj)
    back = F.parse_text(text)
    assert F.same(obj, back)
    assert F.serialize(back) == text


@pytest.mark.parametrize("path", SAMPLES, ids=lambda p: p.name)
def test_sample_files_load(path):
    obj = F.load(path)
    assert F.same(F.parse_text(F.serialize(obj)), obj)


def test_sample_contents():
    d10 = F.load(ROOT / "algebras" / "D10.alg")
    assert isinstance(d10, A.FiniteGroup) and A.is_isomorphic(d10, A.dihedral(10))
    flat = F.load(ROOT / "algebras" / "flat.alg")
    assert isinstance(flat, SplitExtension) and not analyze(flat).is_schreier
    sign = F.load(ROOT / "algebras" / "s3_sign.alg")
    assert analyze(sign).is_schreier
    assert F.load(ROOT / "algebras" / "sl2.alg") == lie.sl2()
    assert isinstance(F.load(ROOT / "algebras" / "pointed3.alg"), psetop.PointedSet)


def test_formats_doc_examples():
    doc = (ROOT / "docs" / "formats.md").read_text()
    blocks = doc.split("```yaml\n")[1:]
    texts = [b.split("```")[0] for b in blocks]
    lie_text = next(t for t in texts if "kind: lie" in t)
    assert F.parse_text(lie_text) == lie.sl2()
    ext_text = next(t for t in texts if "kind: extension" in t)
    assert not analyze(F.parse_text(ext_text)).is_schreier


def error_at(text):
    with pytest.raises(FormatError) as ei:
        F.parse_text(textwrap.dedent(text), "bad.alg")
    e = ei.value
    return e.line, e.column, str(e)


def test_error_positions():
    line, col, msg = error_at("""\
        kind: monoid
        table:
          - [0, 1]
          - [1, 7]
        """)
    assert (line, col) == (4, 9) and msg.startswith("bad.alg:4:9:")

    line, col, _ = error_at("""\
        kind: widget
        """)
    assert line == 1

    line, col, msg = error_at("""\
        kind: monoid
        table: [[0, 1], [1, 1]
        """)
    assert line is not None

    line, col, msg = error_at("""\
        kind: lie
        dim: 2
        brackets:
          - {pair: [0, 0], value: ["1", "0"]}
        """)
    assert line == 4

    _, _, msg = error_at("""\
        kind: monoid
        kind: group
        table: [[0]]
        """)
    assert "duplicate" in msg


def test_semantic_errors_carry_position():
    line, _, msg = error_at("""\
        kind: monoid
        table:
          - [0, 1, 2]
          - [1, 2, 0]
          - [2, 2, 2]
        """)
    assert line == 3 and "associativity fails" in msg


def test_presentation_table_mismatch():
    text = F.serialize(A.cyclic(4)).replace("kind: group", "kind: group\npresentation:\n  generators: [a, b]\n  relators: [\"a^2\", \"b^2\", \"a b a^-1 b^-1\"]")
    with pytest.raises(FormatError):
        F.parse_text(text)


def test_digest_and_directory(tmp_path):
    assert F.digest("x") == F.digest(b"x")
    assert F.digest("x").startswith("sha256:") and len(F.digest("x")) == 23
    cat = {k: v for k, v in C.builtin_catalogue().items() if k in ("C3", "Q8", "h3")}
    F.write_directory(cat, tmp_path)
    back = F.load_directory(tmp_path)
    assert sorted(back) == sorted(cat)
    assert all(F.same(cat[k], back[k]) for k in cat)


def test_extension_must_split():
    text = textwrap.dedent("""\
        kind: extension
        X: {kind: group, table: [[0, 1], [1, 0]]}
        Y: {kind: group, table: [[0, 1], [1, 0]]}
        f: [0, 1]
        s: [0, 0]
        """)
    with pytest.raises(FormatError):
        F.parse_text(text)
    assert np.array_equal(F.parse_text(text.replace("s: [0, 0]", "s: [0, 1]")).s.map, [0, 1])
