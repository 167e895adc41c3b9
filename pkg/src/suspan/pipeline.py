"""Three-stage sentence annotation: pattern matching, cancellation by
rebuttal/confirmation statements, and authorial-reference classification."""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .authorial import RefKind, detect_citations, detect_self_reference
from .matcher import SpanMatch, match_sentence, resolve_overlaps
from .model import AuthorialRef, CancelKind, Document, Sentence, SuGroup, clause_index, clause_segments
from .rulelang import AuthorialLexicon, CompiledRuleSet
from .rules import GROUP_DESCRIPTIONS

SU = "SU"
NON_SU = "NonSU"


@dataclass(frozen=True)
class SentenceAnnotation:
    sentence_index: int
    text: str
    su_label: str
    final_spans: tuple[SpanMatch, ...] = ()
    cancelled: tuple[tuple[SpanMatch, SpanMatch], ...] = ()
    authorial: Optional[AuthorialRef] = None
    explanation: tuple[str, ...] = ()

    @property
    def groups(self) -> list[SuGroup]:
        seen: dict[SuGroup, None] = {}
        for sp in self.final_spans:
            seen.setdefault(sp.group, None)
        return list(seen)


@dataclass
class AnnotationReport:
    document_id: str
    ruleset_version: str
    annotations: list[SentenceAnnotation] = field(default_factory=list)
    label_counts: dict[str, int] = field(default_factory=dict)
    group_counts: dict[str, int] = field(default_factory=dict)
    authorial_counts: dict[str, int] = field(default_factory=dict)

    def recount(self) -> None:
        labels = Counter(a.su_label for a in self.annotations)
        self.label_counts = {SU: labels[SU], NON_SU: labels[NON_SU]}
        groups = Counter(sp.group for a in self.annotations for sp in a.final_spans)
        self.group_counts = {g.value: groups[g] for g in SuGroup}
        auth = Counter(a.authorial for a in self.annotations if a.authorial is not None)
        self.authorial_counts = {r.value: auth[r] for r in AuthorialRef}


def apply_cancellation(
    su_spans: list[SpanMatch], cx_spans: list[SpanMatch], s: Sentence
) -> tuple[list[SpanMatch], list[tuple[SpanMatch, SpanMatch]]]:
    """Drop every SU span that shares a clause with a cancellation span."""
    if not cx_spans:
        return list(su_spans), []
    clauses = clause_segments(s)
    cancellers: dict[int, SpanMatch] = {}
    for cx in sorted(cx_spans, key=SpanMatch.sort_key):
        cancellers.setdefault(clause_index(clauses, cx.token_start), cx)
    kept, cancelled = [], []
    for sp in su_spans:
        by = cancellers.get(clause_index(clauses, sp.token_start))
        if by is None:
            kept.append(sp)
        else:
            cancelled.append((sp, by))
    return kept, cancelled


def _signals(s: Sentence, lexicon: AuthorialLexicon, a: int, b: int, cites, refs) -> tuple[bool, bool]:
    """(previous-study signal, current-author signal) within byte range [a, b)."""
    prev = any(c.char_start < b and a < c.char_end for c in cites)
    cur = False
    for r in refs:
        if r.char_start < b and a < r.char_end:
            if r.kind is RefKind.PREVIOUS_STUDY:
                prev = True
            else:
                cur = True
    return prev, cur


def _vote(prev: bool, cur: bool) -> AuthorialRef:
    if prev and cur:
        return AuthorialRef.BOTH
    if prev:
        return AuthorialRef.PREVIOUS_STUDY
    return AuthorialRef.CURRENT_AUTHORS


def classify_authorial(s: Sentence, kept: list[SpanMatch], lexicon: AuthorialLexicon) -> AuthorialRef:
    """Attribute the sentence's uncertainty to its authors, previous work, or both.

    Each kept span votes from the signals in its own clause. A clause with no
    signal inherits the sentence-wide signals (e.g. "..., although they
    highlighted ..." after a cited clause); with none anywhere the claim is
    the authors' own. Disagreeing votes resolve to ``BOTH``.
    """
    cites = detect_citations(s, lexicon.citation_regexes)
    refs = detect_self_reference(s, lexicon)
    clauses = clause_segments(s)
    whole = _signals(s, lexicon, 0, len(s.data), cites, refs)
    votes = set()
    for sp in kept:
        lo, hi = clauses[clause_index(clauses, sp.token_start)]
        a, b = s.tokens[lo].char_start, s.tokens[hi - 1].char_end
        prev, cur = _signals(s, lexicon, a, b, cites, refs)
        if not (prev or cur):
            prev, cur = whole
        votes.add(_vote(prev, cur))
    if len(votes) == 1:
        return votes.pop()
    return AuthorialRef.BOTH


_AUTHORIAL_REASON = {
    AuthorialRef.CURRENT_AUTHORS: "the uncertainty is voiced by the authors of this text",
    AuthorialRef.PREVIOUS_STUDY: "the uncertainty is attributed to previously published work",
    AuthorialRef.BOTH: "the sentence attributes uncertainty both to the authors and to previous work",
}


def explain_span(sp: SpanMatch) -> str:
    return f'{sp.group.value}: "{sp.matched_text}" ({sp.pattern_id}); {GROUP_DESCRIPTIONS[sp.group]}'


def explain_cancel(sp: SpanMatch, by: SpanMatch) -> str:
    assert isinstance(by.group, CancelKind)
    return (f'cancelled {sp.group.value}: "{sp.matched_text}" ({sp.pattern_id}) by '
            f'{by.group.value} "{by.matched_text}" ({by.pattern_id}) in the same clause')


def annotate_sentence(crs: CompiledRuleSet, s: Sentence, index: int | None = None) -> SentenceAnnotation:
    idx = s.doc_index if index is None else index
    if not s.tokens:
        return SentenceAnnotation(idx, s.text, NON_SU)
    matches = resolve_overlaps(match_sentence(crs, s))
    su_spans = [m for m in matches if isinstance(m.group, SuGroup)]
    if not su_spans:
        return SentenceAnnotation(idx, s.text, NON_SU)
    cx_spans = [m for m in matches if isinstance(m.group, CancelKind)]
    kept, cancelled = apply_cancellation(su_spans, cx_spans, s)
    lines = [explain_span(sp) for sp in kept] + [explain_cancel(sp, by) for sp, by in cancelled]
    if not kept:
        return SentenceAnnotation(idx, s.text, NON_SU, (), tuple(cancelled), None, tuple(lines))
    authorial = classify_authorial(s, kept, crs.ruleset.authorial)
    lines.append(f"authorial reference: {authorial.value}; {_AUTHORIAL_REASON[authorial]}")
    return SentenceAnnotation(idx, s.text, SU, tuple(kept), tuple(cancelled), authorial, tuple(lines))


def _annotate_chunk(args: tuple[CompiledRuleSet, list[Sentence]]) -> list[SentenceAnnotation]:
    crs, sentences = args
    return [annotate_sentence(crs, s) for s in sentences]


def annotate_sentences(crs: CompiledRuleSet, sentences: list[Sentence], workers: int = 1) -> list[SentenceAnnotation]:
    """Annotate in input order; ``workers > 1`` fans out over processes."""
    if workers <= 1 or len(sentences) < 2:
        return [annotate_sentence(crs, s) for s in sentences]
    size = max(1, -(-len(sentences) // (workers * 4)))
    chunks = [(crs, sentences[i:i + size]) for i in range(0, len(sentences), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_annotate_chunk, chunks))
    return [a for chunk in results for a in chunk]


def annotate_document(crs: CompiledRuleSet, doc: Document, workers: int = 1) -> AnnotationReport:
    report = AnnotationReport(doc.id, crs.version, annotate_sentences(crs, list(doc.sentences), workers))
    report.recount()
    return report
