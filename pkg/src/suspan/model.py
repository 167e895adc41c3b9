"""Linguistic data types shared by every stage of the annotator.

Offsets on :class:`Token` are UTF-8 byte offsets into the owning sentence's
text, end exclusive. Use :meth:`Sentence.slice` to recover the substring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

UPOS = frozenset(
    {
        "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
        "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
    }
)


class SuGroup(str, Enum):
    EXPLICIT_SU = "ExplicitSU"
    MODALITY = "Modality"
    CONDITIONAL_EXPRESSION = "ConditionalExpression"
    HYPOTHESIS = "Hypothesis"
    PREDICTION = "Prediction"
    INTERROGATIVE_EXPRESSION = "InterrogativeExpression"
    NON_GENERALIZABLE_STATEMENT = "NonGeneralizableStatement"
    ADVERBIAL_SU = "AdverbialSU"
    NEGATION = "Negation"
    SUBJECTIVITY = "Subjectivity"
    CONJECTURAL = "Conjectural"
    DISAGREEMENT = "Disagreement"

    def __str__(self) -> str:
        return self.value


class CancelKind(str, Enum):
    REBUTTAL = "rebuttal"
    CONFIRMATION = "confirmation"

    def __str__(self) -> str:
        return self.value


class AuthorialRef(str, Enum):
    CURRENT_AUTHORS = "authors"
    PREVIOUS_STUDY = "previous"
    BOTH = "both"

    def __str__(self) -> str:
        return self.value


class SourceFormat(str, Enum):
    CONLLU = "conllu"
    PLAIN = "plain"


@dataclass(frozen=True)
class Token:
    index: int
    text: str
    lemma: str
    pos: str
    char_start: int
    char_end: int
    morph: frozenset[str] = frozenset()
    dep: str = ""
    head: int = -1
    lower: str = field(default="", compare=True)

    def __post_init__(self) -> None:
        if not self.lower:
            object.__setattr__(self, "lower", self.text.lower())
        if self.head < 0:
            object.__setattr__(self, "head", self.index)
        if self.pos not in UPOS:
            object.__setattr__(self, "pos", "X")
        if not self.char_start < self.char_end:
            raise ValueError(f"empty token span at index {self.index}")


@dataclass(frozen=True)
class Sentence:
    text: str
    tokens: tuple[Token, ...]
    doc_index: int = 0

    @cached_property
    def data(self) -> bytes:
        return self.text.encode("utf-8")

    def slice(self, start: int, end: int) -> str:
        """Return the text between two byte offsets."""
        return self.data[start:end].decode("utf-8")

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[Sentence, ...]
    source_format: SourceFormat = SourceFormat.PLAIN


# words that open a clause after a comma
CLAUSE_CONJUNCTIONS = frozenset(
    {"and", "but", "or", "yet", "so", "however", "although", "though", "whereas", "while"}
)
# subordinators whose first following comma closes the subordinate clause
SUBORDINATORS = frozenset(
    {"although", "though", "whereas", "while", "if", "because", "since", "when", "unless"}
)
DISCOURSE_OPENERS = frozenset(
    {
        "however", "but", "moreover", "furthermore", "thus", "therefore", "hence",
        "nevertheless", "nonetheless", "additionally", "consequently", "indeed",
        "instead", "still", "yet", "also", "finally", "first", "second", "overall",
    }
)


def clause_segments(sentence: Sentence) -> list[tuple[int, int]]:
    """Split a sentence into contiguous clause ranges ``[start, end)``.

    Boundaries fall after ``;`` and ``:``, after a comma followed by a
    coordinating conjunction or contrastive adverb, after a sentence-initial
    adverb + comma prefix, and after the first comma of a clause that opens
    with a subordinator ("Although ..., ...").
    """
    tokens = sentence.tokens
    n = len(tokens)
    if n == 0:
        return []
    cuts: set[int] = set()
    if n > 1 and tokens[1].text == "," and (
        tokens[0].pos in ("ADV", "CCONJ") or tokens[0].lower in DISCOURSE_OPENERS
    ):
        cuts.add(2)
    pending_sub = tokens[0].lower in SUBORDINATORS
    for i, tok in enumerate(tokens):
        if tok.text in (";", ":"):
            cuts.add(i + 1)
            pending_sub = i + 1 < n and tokens[i + 1].lower in SUBORDINATORS
        elif tok.text == ",":
            if i + 1 < n and tokens[i + 1].lower in CLAUSE_CONJUNCTIONS:
                cuts.add(i + 1)
                pending_sub = tokens[i + 1].lower in SUBORDINATORS
            elif pending_sub:
                cuts.add(i + 1)
                pending_sub = False
    bounds = [0] + sorted(c for c in cuts if 0 < c < n) + [n]
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if a < b]


def clause_index(clauses: list[tuple[int, int]], token: int) -> int:
    for i, (a, b) in enumerate(clauses):
        if a <= token < b:
            return i
    raise IndexError(token)
