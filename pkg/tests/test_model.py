from hypothesis import given, strategies as st

from suspan.ingest import make_sentence
from suspan.model import AuthorialRef, SuGroup, Token, clause_segments

import pytest


def words(s, ranges):
    return [[t.text for t in s.tokens[a:b]] for a, b in ranges]


def test_su_group_is_closed_set_of_twelve():
    assert len(SuGroup) == 12
    assert [g.value for g in SuGroup][:3] == ["ExplicitSU", "Modality", "ConditionalExpression"]
    assert len(AuthorialRef) == 3


def test_token_defaults():
    t = Token(index=3, text="May", lemma="may", pos="WEIRD", char_start=0, char_end=3)
    assert t.lower == "may"
    assert t.head == 3
    assert t.pos == "X"
    with pytest.raises(ValueError):
        Token(index=0, text="x", lemma="x", pos="X", char_start=2, char_end=2)


def test_clause_initial_adverb_prefix():
    s = make_sentence("However, we find no evidence to support this hypothesis either.")
    clauses = clause_segments(s)
    assert words(s, clauses)[0] == ["However", ","]
    assert len(clauses) == 2
    assert clauses[1] == (2, len(s.tokens))


def test_single_clause():
    s = make_sentence("It is possible that corticosteroids prevent some acute gastrointestinal complications.")
    assert clause_segments(s) == [(0, len(s.tokens))]


def test_single_token_and_empty():
    assert clause_segments(make_sentence("Yes")) == [(0, 1)]
    assert clause_segments(make_sentence("")) == []


def test_semicolon_and_conjunction_boundaries():
    s = make_sentence("The effect is small; it may vary, but we doubt it, and so on.")
    got = words(s, clause_segments(s))
    assert got[0][-1] == ";"
    assert got[1] == ["it", "may", "vary", ","]
    assert got[2][0] == "but"
    assert got[3][0] == "and"


def test_subordinate_clause_closed_by_first_comma():
    s = make_sentence("Although we ruled out bias, the mechanism may vary.")
    got = words(s, clause_segments(s))
    assert got == [["Although", "we", "ruled", "out", "bias", ","], ["the", "mechanism", "may", "vary", "."]]


sentence_text = st.lists(
    st.sampled_from(["we", "may", ",", ";", ":", "and", "but", "however", "although", "If", "data", "is",
                     "unclear", "Thus", "."]),
    min_size=1, max_size=25,
).map(" ".join)


@given(sentence_text)
def test_clauses_partition_tokens(text):
    s = make_sentence(text)
    clauses = clause_segments(s)
    assert clauses == clause_segments(s)
    flat = [i for a, b in clauses for i in range(a, b)]
    assert flat == list(range(len(s.tokens)))
    assert all(a < b for a, b in clauses)
