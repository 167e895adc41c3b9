import random

import pytest

from golden import SAMPLE_SENTENCES
from corpus import plain_corpus
from suspan.ingest import ingest_plain, make_sentence
from suspan.matcher import match_sentence, resolve_overlaps
from suspan.model import AuthorialRef, CancelKind, SuGroup
from suspan.pipeline import NON_SU, SU, annotate_document, annotate_sentence, annotate_sentences, apply_cancellation


def ann(crs, text):
    return annotate_sentence(crs, make_sentence(text))


def test_rebuttal_cancels_same_clause(crs):
    a = ann(crs, "However, we find no evidence to support this hypothesis either.")
    assert a.su_label == NON_SU and a.authorial is None
    assert a.final_spans == ()
    assert {sp.group for sp, _ in a.cancelled} >= {SuGroup.HYPOTHESIS}
    assert all(by.group is CancelKind.REBUTTAL for _, by in a.cancelled)
    assert any(line.startswith("cancelled") for line in a.explanation)


def test_cancellation_scoped_to_clause(crs):
    a = ann(crs, "Although we ruled out bias, the mechanism may vary.")
    assert a.su_label == SU
    assert [sp.group for sp in a.final_spans] == [SuGroup.MODALITY]


def test_confirmation_cancels(crs):
    a = ann(crs, "It is certain that the effect may be linked to age.")
    assert a.su_label == NON_SU
    assert any(by.group is CancelKind.CONFIRMATION for _, by in a.cancelled)


def test_apply_cancellation_without_cancellers(crs):
    s = make_sentence("The effect may vary.")
    spans = resolve_overlaps(match_sentence(crs, s))
    assert apply_cancellation(spans, [], s) == (spans, [])


@pytest.mark.parametrize("text,su,authorial", SAMPLE_SENTENCES)
def test_sample_sentences(crs, text, su, authorial):
    a = ann(crs, text)
    assert (a.su_label == SU) is su
    assert (a.authorial.value if a.authorial else None) == authorial


def test_authorial_previous_via_citation(crs):
    assert ann(crs, "Smith et al. (2019) suggested that the effect may vary.").authorial is AuthorialRef.PREVIOUS_STUDY


def test_authorial_both(crs):
    a = ann(crs, "Consistent with [3], we hypothesize that the effect may vary.")
    assert a.authorial is AuthorialRef.BOTH


def test_authorial_default_authors(crs):
    assert ann(crs, "The mechanism may vary.").authorial is AuthorialRef.CURRENT_AUTHORS


def test_non_su(crs):
    for text in ("The sky is blue.", "The experiment used 50 participants."):
        a = ann(crs, text)
        assert (a.su_label, a.final_spans, a.cancelled, a.authorial, a.explanation) == (NON_SU, (), (), None, ())


def test_explanations(crs):
    a = ann(crs, "There may also be behavioral effects.")
    assert a.explanation[0].startswith('Modality: "may also be"')
    assert a.explanation[-1].startswith("authorial reference: authors")


def test_document_report_counts(crs):
    doc = ingest_plain(" ".join(t for t, _, _ in SAMPLE_SENTENCES))
    assert len(doc.sentences) == 4
    report = annotate_document(crs, doc)
    assert report.label_counts == {SU: 3, NON_SU: 1}
    assert report.authorial_counts == {"authors": 2, "previous": 1, "both": 0}
    assert set(report.group_counts) == {g.value for g in SuGroup}
    assert sum(report.group_counts.values()) == sum(len(a.final_spans) for a in report.annotations)


def test_invariants_on_corpus(crs):
    for i, text in enumerate(plain_corpus(300, seed=3)):
        a = annotate_sentence(crs, make_sentence(text), i)
        assert a.sentence_index == i
        assert (a.su_label == SU) == bool(a.final_spans)
        assert (a.authorial is not None) == (a.su_label == SU)
        for sp, by in a.cancelled:
            assert sp not in a.final_spans
            assert isinstance(by.group, CancelKind)
        data = text.encode()
        for sp in a.final_spans:
            assert data[sp.char_start:sp.char_end].decode() == sp.matched_text


def test_parallel_matches_serial(crs):
    doc = ingest_plain(" ".join(plain_corpus(120, seed=9)))
    sents = list(doc.sentences)
    assert annotate_sentences(crs, sents, workers=3) == annotate_sentences(crs, sents)


def test_empty_document(crs):
    report = annotate_document(crs, ingest_plain(""))
    assert report.annotations == [] and report.label_counts == {SU: 0, NON_SU: 0}
