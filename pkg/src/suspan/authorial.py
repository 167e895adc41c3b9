"""Citation markers and self/other reference detection."""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable

from .model import Sentence
from .rulelang import AuthorialLexicon


class CitationKind(str, Enum):
    BRACKET_NUMBER = "BracketNumber"
    PARENTHETICAL_AUTHOR_YEAR = "ParentheticalAuthorYear"
    NARRATIVE_AUTHOR_YEAR = "NarrativeAuthorYear"


class RefKind(str, Enum):
    FIRST_PERSON = "FirstPerson"
    PRESENT_STUDY = "PresentStudy"
    PREVIOUS_STUDY = "PreviousStudy"


# nouns a temporal adjective ("previous", "prior", ...) must precede
RESEARCH_NOUNS = frozenset(
    {
        "study", "studies", "research", "work", "works", "meta-analyses", "meta-analysis", "literature",
        "analyses", "analysis", "findings", "reports", "investigations", "trials", "authors", "reviews",
    }
)


@dataclass(frozen=True)
class CitationMarker:
    kind: CitationKind
    char_start: int
    char_end: int
    raw: str


@dataclass(frozen=True)
class Reference:
    kind: RefKind
    char_start: int
    char_end: int


@lru_cache(maxsize=64)
def _compile(regexes: tuple[str, ...]) -> tuple[re.Pattern[str], ...]:
    return tuple(re.compile(r) for r in regexes)


def _kind_of(m: re.Match[str]) -> CitationKind:
    if m.lastgroup:
        try:
            return CitationKind(m.lastgroup)
        except ValueError:
            pass
    raw = m.group()
    if raw.startswith("["):
        return CitationKind.BRACKET_NUMBER
    if raw.startswith("("):
        return CitationKind.PARENTHETICAL_AUTHOR_YEAR
    return CitationKind.NARRATIVE_AUTHOR_YEAR


def _char_to_byte(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


def detect_citations(s: Sentence, citation_regexes: Iterable[str]) -> list[CitationMarker]:
    """Leftmost-longest, non-overlapping citation markers in the sentence."""
    text = s.text
    cands = []
    for rx in _compile(tuple(citation_regexes)):
        for m in rx.finditer(text):
            if m.end() > m.start():
                cands.append((m.start(), -m.end(), m))
    cands.sort(key=lambda c: (c[0], c[1]))
    out: list[CitationMarker] = []
    last_end = -1
    ascii_text = text.isascii()
    for start, neg_end, m in cands:
        if start < last_end:
            continue
        last_end = -neg_end
        a = start if ascii_text else _char_to_byte(text, start)
        b = last_end if ascii_text else _char_to_byte(text, last_end)
        out.append(CitationMarker(_kind_of(m), a, b, m.group()))
    return out


def _norm(tok: str) -> str:
    return tok.lower().rstrip(".")


def detect_self_reference(s: Sentence, lexicon: AuthorialLexicon) -> list[Reference]:
    """First-person tokens and present/previous-study phrases, by byte range."""
    toks = s.tokens
    words = [_norm(t.text) for t in toks]
    out: list[Reference] = []
    first = {w.lower() for w in lexicon.first_person}
    for t, w in zip(toks, words):
        if w in first:
            out.append(Reference(RefKind.FIRST_PERSON, t.char_start, t.char_end))

    def phrase_hits(phrases: Iterable[str], kind: RefKind, need_noun: bool) -> None:
        seqs = sorted({tuple(_norm(w) for w in p.split()) for p in phrases if p.strip()}, key=lambda q: (-len(q), q))
        taken = -1
        for i in range(len(words)):
            if i < taken:
                continue
            for seq in seqs:
                n = len(seq)
                if tuple(words[i:i + n]) != seq:
                    continue
                end = i + n
                if need_noun and n == 1:
                    if end >= len(words) or words[end] not in RESEARCH_NOUNS:
                        continue
                    end += 1
                out.append(Reference(kind, toks[i].char_start, toks[end - 1].char_end))
                taken = end
                break

    phrase_hits(lexicon.present_study, RefKind.PRESENT_STUDY, False)
    phrase_hits(lexicon.previous_study, RefKind.PREVIOUS_STUDY, True)
    out.sort(key=lambda r: (r.char_start, r.char_end, r.kind.value))
    return out
