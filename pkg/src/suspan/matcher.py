"""Run a compiled ruleset over a sentence and resolve overlapping spans."""
from __future__ import annotations

from dataclasses import dataclass

from .kernel import longest_ends
from .model import Sentence
from .rulelang import CompiledRuleSet, Label


@dataclass(frozen=True, order=False)
class SpanMatch:
    pattern_id: str
    group: Label
    token_start: int
    token_end: int
    char_start: int
    char_end: int
    matched_text: str

    @property
    def length(self) -> int:
        return self.token_end - self.token_start

    def sort_key(self) -> tuple[int, int, str]:
        return (self.token_start, self.token_end, self.pattern_id)

    def overlaps(self, other: SpanMatch) -> bool:
        return self.token_start < other.token_end and other.token_start < self.token_end


def make_span(s: Sentence, pattern_id: str, group: Label, start: int, end: int) -> SpanMatch:
    a = s.tokens[start].char_start
    b = s.tokens[end - 1].char_end
    return SpanMatch(pattern_id, group, start, end, a, b, s.slice(a, b))


def match_sentence(crs: CompiledRuleSet, s: Sentence) -> list[SpanMatch]:
    """All longest matches of every pattern at every start position."""
    n = len(s.tokens)
    if n == 0:
        return []
    rows: dict[int, bytes] = {}
    tests = crs.tests
    tokens = s.tokens
    out: list[SpanMatch] = []
    for p in crs.candidates(s):
        parts = []
        for cid in p.slots:
            row = rows.get(cid)
            if row is None:
                test = tests[cid]
                row = rows[cid] = bytes([test(t) for t in tokens])
            parts.append(row)
        ends = longest_ends(b"".join(parts), n, p.ops)
        for start, end in enumerate(ends):
            if end > start:
                out.append(make_span(s, p.id, p.label, start, end))
    out.sort(key=SpanMatch.sort_key)
    return out


def resolve_overlaps(matches: list[SpanMatch]) -> list[SpanMatch]:
    """Within each group keep non-overlapping spans, preferring longer,
    then leftmost, then the lexicographically smaller pattern id.
    Spans of different groups may overlap freely."""
    by_group: dict[Label, list[SpanMatch]] = {}
    for m in matches:
        by_group.setdefault(m.group, []).append(m)
    kept: list[SpanMatch] = []
    for spans in by_group.values():
        chosen: list[SpanMatch] = []
        for m in sorted(spans, key=lambda m: (-m.length, m.token_start, m.pattern_id)):
            if not any(m.overlaps(c) for c in chosen):
                chosen.append(m)
        kept.extend(chosen)
    kept.sort(key=SpanMatch.sort_key)
    return kept
