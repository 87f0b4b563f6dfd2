"""Model-file parsing, diagnostics, and canonical round-trips."""

from fractions import Fraction

import pytest

from cokahler.errors import ModelParseError
from cokahler.modelfile import (CORPUS_MODELS, load_corpus, loads,
                                resolve, serialize)

GOOD = """\
# a comment
name: heisenberg
dimension: 3

[brackets]
1 2 3 1

[metric]
identity

[xi]
X1

[eta]
e1

[J]
0 0 0
0 0 -1   # trailing comment
0 1 0
"""


def test_parse_good_file():
    mf = loads(GOOD)
    assert mf.name == "heisenberg" and mf.dimension == 3
    assert mf.brackets == [(1, 2, 3, Fraction(1))]
    assert mf.metric is None
    assert mf.xi == [1, 0, 0] and mf.eta == [1, 0, 0]
    assert mf.J[1][2] == Fraction(-1)
    assert mf.has_contact_structure()


def test_vector_shorthand_and_explicit_agree():
    short = loads("dimension: 3\n[xi]\nX2\n")
    explicit = loads("dimension: 3\n[xi]\n0 1 0\n")
    assert short.xi == explicit.xi


@pytest.mark.parametrize("text,fragment", [
    ("dimension: 3\n[brackets]\n2 1 3 1\n", "i < j"),
    ("dimension: 3\n[brackets]\n1 2 5 1\n", "out of range"),
    ("dimension: 3\n[brackets]\n1 2 3\n", "i j k c"),
    ("dimension: 3\n[xi]\n1 0\n", "3 components"),
    ("dimension: 3\n[J]\n1 0 0\n", "3 rows"),
    ("dimension: 3\n[brackets]\n1 2 3 x\n", "bad rational"),
    ("dimension: 3\n[weird]\n", "unknown section"),
    ("name: x\n", "missing 'dimension:'"),
    ("dim 3\n", "key: value"),
    ("dimension: 3\nfoo: bar\n", "unknown header"),
    ("dimension: 3\n[automorphism]\n1 0 0\n", "order"),
    ("dimension: 3\n[omega]\n2 1 1\n", "i < j"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ModelParseError) as err:
        loads(text)
    assert fragment in str(err.value)


def test_parse_error_reports_line_numbers():
    with pytest.raises(ModelParseError) as err:
        loads("dimension: 3\n\n[brackets]\n1 2 3 bad\n")
    assert err.value.line == 4
    assert "line 4" in str(err.value)


def test_round_trip_is_canonical():
    mf = loads(GOOD)
    text1 = serialize(mf)
    mf2 = loads(text1)
    text2 = serialize(mf2)
    assert text1 == text2
    assert mf2.brackets == mf.brackets and mf2.J == mf.J
    assert mf2.xi == mf.xi and mf2.eta == mf.eta


def test_round_trip_all_corpus_models():
    for name in CORPUS_MODELS:
        mf = load_corpus(name)
        again = loads(serialize(mf), name_hint=mf.name)
        assert serialize(again) == serialize(mf)


def test_corpus_models_build(contact_models):
    names = {m.name for m in contact_models}
    assert names == {"torus3", "torus5", "heisenberg"}
    rot = load_corpus("t2-rot4-mapping-torus")
    assert rot.automorphism is not None
    matrix, order = rot.automorphism
    assert order == 4 and matrix[0][1] == Fraction(-1)
    assert not rot.has_contact_structure()


def test_resolve_prefers_files(tmp_path):
    target = tmp_path / "custom.model"
    target.write_text("name: custom\ndimension: 2\n")
    assert resolve(str(target)).name == "custom"
    assert resolve("torus3").name == "torus3"
    with pytest.raises(ModelParseError):
        resolve("no-such-model")


def test_metric_section_explicit():
    mf = loads("dimension: 2\n[metric]\n2 0\n0 1\n")
    assert mf.metric == [[2, 0], [0, 1]]
    model = mf.to_lie_model()
    assert model.metric[0][0] == Fraction(2)


def test_rational_entries():
    mf = loads("dimension: 2\n[brackets]\n1 2 1 -3/7\n")
    assert mf.brackets[0][3] == Fraction(-3, 7)
