"""Build :class:`~suspan.model.Document` objects from CoNLL-U or raw text.

Plain-text mode ships a small heuristic tagger (closed-class lexicon plus
suffix rules). It is lossy by design; feed CoNLL-U from a real tagger when
part-of-speech quality matters.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .model import Document, Sentence, SourceFormat, Token

ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL, DEPS, MISC = range(10)


class ConlluError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _byte_offsets(text: str) -> list[int]:
    """Map char index -> byte offset (length len(text) + 1)."""
    out = [0] * (len(text) + 1)
    pos = 0
    for i, ch in enumerate(text):
        out[i] = pos
        pos += len(ch.encode("utf-8"))
    out[len(text)] = pos
    return out


# ---------------------------------------------------------------------------
# CoNLL-U


def _build_conllu_sentence(rows: list[tuple[int, list[str]]], doc_index: int) -> Sentence:
    parts: list[str] = []
    spans: list[tuple[int, int]] = []
    cursor = 0
    for k, (_, cols) in enumerate(rows):
        form = cols[FORM]
        start = cursor
        parts.append(form)
        cursor += len(form)
        spans.append((start, cursor))
        space_after = "SpaceAfter=No" not in cols[MISC].split("|")
        if k < len(rows) - 1 and space_after:
            parts.append(" ")
            cursor += 1
    text = "".join(parts)
    offs = _byte_offsets(text) if not text.isascii() else None
    tokens = []
    for k, (lineno, cols) in enumerate(rows):
        a, b = spans[k]
        if offs is not None:
            a, b = offs[a], offs[b]
        head_col = cols[HEAD]
        if head_col in ("_", "0"):
            head = k
        elif head_col.isdigit():
            head = int(head_col) - 1
        else:
            raise ConlluError(f"non-numeric HEAD {head_col!r}", lineno)
        feats = cols[FEATS]
        lemma = cols[LEMMA]
        tokens.append(
            Token(
                index=k,
                text=cols[FORM],
                lemma=cols[FORM].lower() if lemma == "_" and cols[FORM] != "_" else lemma,
                pos=cols[UPOS],
                char_start=a,
                char_end=b,
                morph=frozenset() if feats == "_" else frozenset(feats.split("|")),
                dep="" if cols[DEPREL] == "_" else cols[DEPREL],
                head=head,
            )
        )
    return Sentence(text=text, tokens=tuple(tokens), doc_index=doc_index)


def parse_conllu(content: str, doc_id: str = "doc") -> Document:
    """Parse CoNLL-U text into a Document.

    Multiword-token ranges (``1-2``) and empty nodes (``1.1``) are skipped.
    Sentence text is rebuilt from the forms, joined by single spaces except
    where MISC carries ``SpaceAfter=No``.
    """
    sentences: list[Sentence] = []
    rows: list[tuple[int, list[str]]] = []

    def flush() -> None:
        if rows:
            sentences.append(_build_conllu_sentence(rows, len(sentences)))
            rows.clear()

    for lineno, line in enumerate(content.splitlines(), start=1):
        line = line.rstrip("\r\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError(f"expected 10 columns, got {len(cols)}", lineno)
        tid = cols[ID]
        if "-" in tid or "." in tid:
            lo = re.split(r"[-.]", tid)
            if not all(p.isdigit() for p in lo):
                raise ConlluError(f"non-numeric ID {tid!r}", lineno)
            continue
        if not tid.isdigit():
            raise ConlluError(f"non-numeric ID {tid!r}", lineno)
        if int(tid) != len(rows) + 1:
            raise ConlluError(f"ID {tid} out of sequence", lineno)
        rows.append((lineno, cols))
    flush()
    if not sentences:
        raise ConlluError("no sentences")
    return Document(id=doc_id, sentences=tuple(sentences), source_format=SourceFormat.CONLLU)


def serialize_conllu(doc: Document) -> str:
    out: list[str] = []
    for sent in doc.sentences:
        out.append(f"# sent_id = {sent.doc_index + 1}")
        out.append(f"# text = {sent.text}")
        toks = sent.tokens
        for k, tok in enumerate(toks):
            nxt = toks[k + 1].char_start if k + 1 < len(toks) else None
            misc = "SpaceAfter=No" if nxt is not None and nxt == tok.char_end else "_"
            head = "0" if tok.head == tok.index else str(tok.head + 1)
            feats = "|".join(sorted(tok.morph)) or "_"
            out.append(
                "\t".join(
                    [str(k + 1), tok.text, tok.lemma, tok.pos, "_", feats, head, tok.dep or "_", "_", misc]
                )
            )
        out.append("")
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------------
# Plain text

DEFAULT_ABBREVIATIONS = frozenset(
    {"e.g.", "i.e.", "et al.", "Fig.", "Figs.", "cf.", "vs.", "al.", "etc.", "approx.", "Eq.", "No.", "Dr.", "resp."}
)


@dataclass(frozen=True)
class IngestConfig:
    mode: SourceFormat = SourceFormat.PLAIN
    abbreviation_list: frozenset[str] = field(default=DEFAULT_ABBREVIATIONS)

    def __post_init__(self) -> None:
        bad = [a for a in self.abbreviation_list if not a.endswith(".")]
        if bad:
            raise ValueError(f"abbreviations must end with '.': {bad}")


_LEADING = "\"'([{“‘<«"
_TRAILING = ".,;:!?)]}\"'”’>»…"

_SENT_END = re.compile(r"[.?!]+[\"'”’)\]]*(?=\s+[\"'“‘(\[]?[A-Z])")


def _is_abbrev(text: str, end: int, abbrevs: frozenset[str]) -> bool:
    """Does the chunk ending at ``end`` (exclusive) end in a known abbreviation?"""
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    chunk = text[start:end]
    lowered = {a.lower() for a in abbrevs}
    if chunk in abbrevs or chunk.lower() in lowered:
        return True
    # two-word abbreviations such as "et al."
    prev_end = start
    while prev_end > 0 and text[prev_end - 1].isspace():
        prev_end -= 1
    prev_start = prev_end
    while prev_start > 0 and not text[prev_start - 1].isspace():
        prev_start -= 1
    pair = f"{text[prev_start:prev_end]} {chunk}"
    return pair in abbrevs or pair.lower() in lowered


def split_sentences(text: str, config: IngestConfig | None = None) -> list[tuple[int, int]]:
    """Return char ranges of sentences in ``text`` (whitespace trimmed)."""
    config = config or IngestConfig()
    cuts = []
    for m in _SENT_END.finditer(text):
        if m.group().startswith(".") and _is_abbrev(text, m.start() + 1, config.abbreviation_list):
            continue
        cuts.append(m.end())
    for m in re.finditer(r"\n\s*\n", text):
        cuts.append(m.start())
    bounds = [0] + sorted(set(cuts)) + [len(text)]
    out = []
    for a, b in zip(bounds, bounds[1:]):
        while a < b and text[a].isspace():
            a += 1
        while b > a and text[b - 1].isspace():
            b -= 1
        if a < b:
            out.append((a, b))
    return out


def tokenize(text: str, abbrevs: frozenset[str] = DEFAULT_ABBREVIATIONS) -> list[tuple[int, int]]:
    """Whitespace tokenization with leading/trailing punctuation peeled off."""
    spans: list[tuple[int, int]] = []
    for m in re.finditer(r"\S+", text):
        a, b = m.span()
        head: list[tuple[int, int]] = []
        tail: list[tuple[int, int]] = []
        while a < b and text[a] in _LEADING and b - a > 1:
            head.append((a, a + 1))
            a += 1
        while b - a > 1 and text[b - 1] in _TRAILING:
            if text[b - 1] == "." and _is_abbrev(text, b, abbrevs):
                break
            c = b - 1
            if text[c] == ".":
                while c > a and text[c - 1] == ".":
                    c -= 1
                if c == a:
                    break
            tail.append((c, b))
            b = c
        spans.extend(head)
        spans.append((a, b))
        spans.extend(reversed(tail))
    return spans


# --- heuristic tagger ------------------------------------------------------

def _words(s: str) -> frozenset[str]:
    return frozenset(s.split())


LEXICON: dict[str, str] = {}
for _pos, _ws in (
    ("PRON", "i me my mine we us our ours you your yours he him his she her hers it its they them their theirs "
             "that which who whom whose what myself ourselves itself themselves one someone "
             "something anything nothing everything everyone there"),
    ("DET", "the a an this these those some any no every each all both either neither another such several many much few "
            "most more less fewer other"),
    ("AUX", "may might could can should would must will shall cannot be is are was were been being am "
            "has have had having do does did 's 're"),
    ("ADP", "of in on at by for with from to into onto about across over under between among through "
            "during against without within towards toward upon via per than despite"),
    ("CCONJ", "and or but nor yet plus"),
    ("SCONJ", "if whether because although though while whereas unless since once"),
    ("PART", "not n't 's"),
    ("ADV", "often also still however perhaps quite somewhat somehow very rather too thus therefore hence "
            "moreover furthermore nevertheless nonetheless indeed never always sometimes usually again "
            "already even just only here then now well almost so why how when where further"),
    ("ADJ", "possible probable likely unlikely unclear clear certain uncertain unknown controversial "
            "consistent inconsistent typical different good significant first new similar open sure "
            "true false conclusive inconclusive limited plausible able due direct indirect"),
    ("INTJ", "yes oh"),
):
    for _w in _ws.split():
        LEXICON.setdefault(_w, _pos)
LEXICON["that"] = "SCONJ"
LEXICON["to"] = "PART"
LEXICON["so"] = "ADV"

KNOWN_VERBS = _words(
    "predict project forecast anticipate expect assume hypothesize hypothesise postulate conjecture "
    "believe think suggest seem appear indicate show find confirm support fail rule demonstrate "
    "generalize generalise extrapolate link associate understand replicate determine contest "
    "argue perceive prevent influence remain provide enhance lead decrease increase reduce affect "
    "use belong care observe report estimate highlight test measure propose claim speculate imply "
    "interpret vary differ explain relate weaken know prove agree rain analyze analyse examine "
    "investigate identify include consider describe compare obtain detect reveal establish"
)

IRREGULAR_LEMMAS = {
    "is": "be", "are": "be", "was": "be", "were": "be", "been": "be", "being": "be", "am": "be",
    "has": "have", "had": "have", "having": "have", "does": "do", "did": "do", "done": "do",
    "found": "find", "shown": "show", "thought": "think", "led": "lead", "known": "know",
    "understood": "understand", "made": "make", "seen": "see", "saw": "see", "took": "take",
    "taken": "take", "gave": "give", "given": "give", "went": "go", "gone": "go", "proven": "prove",
    "hypotheses": "hypothesis", "analyses": "analysis", "meta-analyses": "meta-analysis",
    "theses": "thesis", "bases": "basis", "data": "data", "studies": "study", "children": "child",
    "people": "person", "women": "woman", "men": "man", "cannot": "can", "us": "we", "our": "we",
    "better": "good", "best": "good", "worse": "bad",
}

_NO_STRIP = _words(
    "this is was has his its us thus as always perhaps various previous unanimous during thing "
    "nothing something anything everything bring string morning king being red need indeed "
    "hundred seed speed bias less unless news species series analysis basis hypothesis"
)


def lemmatize(lower: str) -> str:
    """Fixed-rule lemmatizer: irregular table, then plural and -ed/-ing stripping."""
    if lower in IRREGULAR_LEMMAS:
        return IRREGULAR_LEMMAS[lower]
    if lower in _NO_STRIP or lower in LEXICON or not lower.isalpha() and "-" not in lower:
        return lower
    w = lower
    if w.endswith("ing") and len(w) >= 5:
        stem = w[:-3]
        for cand in (stem, stem + "e"):
            if cand in KNOWN_VERBS:
                return cand
        if len(stem) > 2 and stem[-1] == stem[-2]:
            return stem[:-1]
        return stem
    if w.endswith("ied") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith("ed") and len(w) > 4:
        for cand in (w[:-1], w[:-2]):
            if cand in KNOWN_VERBS:
                return cand
        stem = w[:-2]
        if len(stem) > 2 and stem[-1] == stem[-2] and stem[-1] not in "ls":
            return stem[:-1]
        return stem
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith(("sses", "xes", "ches", "shes", "zes")):
        return w[:-2]
    if w.endswith("s") and not w.endswith(("ss", "us", "is")) and len(w) > 3:
        if w[:-1] in KNOWN_VERBS or w[:-2] not in KNOWN_VERBS:
            return w[:-1]
        return w[:-2]
    return w


_NUM = re.compile(r"^[+-]?\d[\d,.]*%?$")
_PUNCT = re.compile(r"^[^\w\s]+$")


def tag(text: str, lower: str, lemma: str, sentence_initial: bool) -> str:
    if _PUNCT.match(text):
        return "PUNCT"
    if _NUM.match(text):
        return "NUM"
    if lower in LEXICON:
        return LEXICON[lower]
    if lemma in KNOWN_VERBS:
        return "VERB"
    if lower.endswith("ly") and len(lower) > 4:
        return "ADV"
    if lower.endswith(("tion", "sion", "ment", "ness", "ity", "ance", "ence", "ism", "ship")):
        return "NOUN"
    if lower.endswith(("ize", "ise")) and len(lower) > 5:
        return "VERB"
    if lower.endswith(("able", "ible", "ous", "ful", "less", "ive", "ical", "al")) and len(lower) > 5:
        return "ADJ"
    if text[:1].isupper() and not sentence_initial:
        return "PROPN"
    return "X"


def make_sentence(text: str, doc_index: int = 0, abbrevs: frozenset[str] = DEFAULT_ABBREVIATIONS) -> Sentence:
    """Tokenize and tag one sentence of raw text (no sentence splitting)."""
    spans = tokenize(text, abbrevs)
    offs = None if text.isascii() else _byte_offsets(text)
    tokens = []
    for i, (a, b) in enumerate(spans):
        surface = text[a:b]
        lower = surface.lower()
        lemma = lemmatize(lower)
        if offs is not None:
            a, b = offs[a], offs[b]
        tokens.append(
            Token(index=i, text=surface, lower=lower, lemma=lemma,
                  pos=tag(surface, lower, lemma, i == 0), char_start=a, char_end=b)
        )
    return Sentence(text=text, tokens=tuple(tokens), doc_index=doc_index)


def ingest_plain(text: str, config: IngestConfig | None = None, doc_id: str = "doc") -> Document:
    config = config or IngestConfig()
    sentences = [
        make_sentence(text[a:b], i, config.abbreviation_list)
        for i, (a, b) in enumerate(split_sentences(text, config))
    ]
    return Document(id=doc_id, sentences=tuple(sentences), source_format=SourceFormat.PLAIN)
