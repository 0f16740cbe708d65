import string

from hypothesis import given, settings
from hypothesis import strategies as st

from gridkg.text import fold_grapheme, graphemes, normalize, width_fold

from oracles import WIDTH_FOLD_TABLE


def test_normalize_collapses_case_and_whitespace():
    assert normalize("Transformer  #1 ") == "transformer #1"


def test_normalize_empty():
    assert normalize("") == ""


def test_normalize_width_folds_fullwidth_forms():
    assert normalize("ＴＲＡＦＯ１") == "trafo1"


def test_width_fold_against_literal_table():
    for full, half in WIDTH_FOLD_TABLE:
        assert width_fold(full) == half, full


def test_width_fold_leaves_ascii_alone():
    text = string.printable
    assert width_fold(text) == text


def test_graphemes_keep_combining_marks_together():
    # e + combining acute is one cluster
    assert graphemes("éx") == ["é", "x"]
    assert len(graphemes("变压器")) == 3


def test_fold_grapheme():
    assert fold_grapheme("Ｔ") == "t"
    assert fold_grapheme("A") == "a"


@given(st.text(max_size=40))
@settings(max_examples=300)
def test_normalize_is_idempotent(s):
    once = normalize(s)
    assert normalize(once) == once


@given(st.text(max_size=40))
def test_normalize_has_no_outer_or_doubled_whitespace(s):
    result = normalize(s)
    assert result == result.strip()
    assert "  " not in result
