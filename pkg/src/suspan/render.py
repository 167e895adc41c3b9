"""Serialize annotations as JSON records, coloured terminal text or HTML."""
from __future__ import annotations

import html
import json
from typing import Any, Iterable

from .matcher import SpanMatch
from .model import SuGroup
from .pipeline import AnnotationReport, SentenceAnnotation

ANSI = {
    SuGroup.EXPLICIT_SU: "31", SuGroup.MODALITY: "32", SuGroup.CONDITIONAL_EXPRESSION: "33",
    SuGroup.HYPOTHESIS: "34", SuGroup.PREDICTION: "35", SuGroup.INTERROGATIVE_EXPRESSION: "36",
    SuGroup.NON_GENERALIZABLE_STATEMENT: "91", SuGroup.ADVERBIAL_SU: "92", SuGroup.NEGATION: "93",
    SuGroup.SUBJECTIVITY: "94", SuGroup.CONJECTURAL: "95", SuGroup.DISAGREEMENT: "96",
}
HTML_COLORS = {
    SuGroup.EXPLICIT_SU: "#f4a6a6", SuGroup.MODALITY: "#a6e3a1", SuGroup.CONDITIONAL_EXPRESSION: "#f9e2af",
    SuGroup.HYPOTHESIS: "#89b4fa", SuGroup.PREDICTION: "#f5c2e7", SuGroup.INTERROGATIVE_EXPRESSION: "#94e2d5",
    SuGroup.NON_GENERALIZABLE_STATEMENT: "#fab387", SuGroup.ADVERBIAL_SU: "#c6e6a8", SuGroup.NEGATION: "#e5c890",
    SuGroup.SUBJECTIVITY: "#b4befe", SuGroup.CONJECTURAL: "#cba6f7", SuGroup.DISAGREEMENT: "#89dceb",
}


def span_obj(sp: SpanMatch) -> dict[str, Any]:
    return {
        "group": sp.group.value,
        "pattern_id": sp.pattern_id,
        "char_start": sp.char_start,
        "char_end": sp.char_end,
        "text": sp.matched_text,
    }


def record(a: SentenceAnnotation) -> dict[str, Any]:
    return {
        "index": a.sentence_index,
        "text": a.text,
        "su_label": a.su_label,
        "spans": [span_obj(sp) for sp in a.final_spans],
        "cancelled": [{"span": span_obj(sp), "by": span_obj(by)} for sp, by in a.cancelled],
        "authorial": a.authorial.value if a.authorial is not None else None,
        "explanation": list(a.explanation),
    }


def to_jsonl(annotations: Iterable[SentenceAnnotation]) -> str:
    return "".join(json.dumps(record(a), ensure_ascii=False) + "\n" for a in annotations)


def to_json(report: AnnotationReport) -> str:
    obj = {
        "document_id": report.document_id,
        "ruleset_version": report.ruleset_version,
        "sentences": [record(a) for a in report.annotations],
        "summary": {
            "labels": report.label_counts,
            "groups": report.group_counts,
            "authorial": report.authorial_counts,
        },
    }
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _segments(a: SentenceAnnotation) -> list[tuple[str, list[SuGroup]]]:
    """Cut the sentence at every span boundary; each piece carries its groups."""
    data = a.text.encode("utf-8")
    cuts = {0, len(data)}
    for sp in a.final_spans:
        cuts.update((sp.char_start, sp.char_end))
    bounds = sorted(cuts)
    out = []
    for lo, hi in zip(bounds, bounds[1:]):
        groups = [sp.group for sp in a.final_spans if sp.char_start <= lo and hi <= sp.char_end]
        out.append((data[lo:hi].decode("utf-8"), groups))
    return out


def to_tty(annotations: Iterable[SentenceAnnotation], color: bool = True) -> str:
    lines = []
    for a in annotations:
        body = []
        for piece, groups in _segments(a):
            if groups and color:
                body.append(f"\x1b[1;{ANSI[groups[0]]}m{piece}\x1b[0m")
            elif groups:
                body.append(f"[{piece}]")
            else:
                body.append(piece)
        head = f"[{a.sentence_index}] {a.su_label}"
        if a.authorial is not None:
            head += f" ({a.authorial.value})"
        lines.append(f"{head}: {''.join(body)}")
        for ex in a.explanation:
            lines.append(f"    - {ex}")
    return "\n".join(lines) + ("\n" if lines else "")


def to_html(report: AnnotationReport) -> str:
    rows = []
    for a in report.annotations:
        body = []
        for piece, groups in _segments(a):
            text = html.escape(piece)
            for g in groups:
                text = (f'<mark class="su" style="background:{HTML_COLORS[g]}" '
                        f'title="{g.value}">{text}</mark>')
            body.append(text)
        label = a.su_label + (f" &middot; {a.authorial.value}" if a.authorial is not None else "")
        notes = "".join(f"<li>{html.escape(e)}</li>" for e in a.explanation)
        rows.append(
            f'<div class="sentence"><span class="label">{label}</span> '
            f'<p>{"".join(body)}</p><ul>{notes}</ul></div>'
        )
    legend = " ".join(
        f'<mark style="background:{HTML_COLORS[g]}">{g.value}</mark>' for g in SuGroup
    )
    return (
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
        f"<title>{html.escape(report.document_id)}</title>"
        "<style>body{font-family:sans-serif;max-width:60em;margin:auto}"
        ".label{font-weight:bold}.sentence{margin:1em 0}</style></head><body>\n"
        f"<p>{legend}</p>\n" + "\n".join(rows) + "\n</body></html>\n"
    )
