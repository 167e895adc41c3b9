"""Score predicted annotations against a gold JSONL corpus.

A gold record looks like::

    {"text": "...", "su": true, "groups": ["Modality"], "authorial": "authors",
     "spans": [{"start": 10, "end": 19, "group": "Modality"}]}

``spans`` is optional and uses byte offsets. Predictions may be gold-shaped
records or the per-sentence records written by ``suspan annotate``.

Degenerate counts follow one convention everywhere: precision is 1.0 when
nothing was predicted and nothing was missed, recall is 1.0 when there was
nothing to find and nothing spurious was predicted, and F1 is 0 when
precision + recall is 0.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Optional

from .model import AuthorialRef, SuGroup

AUTHORIAL_VALUES = {r.value for r in AuthorialRef}


class GoldFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class GoldRecord:
    text: str
    su: bool
    groups: tuple[str, ...] = ()
    authorial: Optional[str] = None
    spans: Optional[tuple[tuple[int, int, str], ...]] = None


def _group_name(name: Any, line: int | None) -> str:
    try:
        return SuGroup(name).value
    except ValueError:
        raise GoldFormatError(f"unknown group {name!r}", line) from None


def record_from_obj(obj: Any, line: int | None = None) -> GoldRecord:
    """Accept either a gold record or a ``suspan annotate`` output record."""
    if not isinstance(obj, dict):
        raise GoldFormatError("record must be a JSON object", line)
    if "su_label" in obj:
        spans = tuple(
            (int(sp["char_start"]), int(sp["char_end"]), _group_name(sp["group"], line))
            for sp in obj.get("spans", [])
        )
        groups = tuple(dict.fromkeys(g for _, _, g in spans))
        su = obj["su_label"] == "SU"
        return GoldRecord(obj.get("text", ""), su, groups, obj.get("authorial"), spans)
    if not isinstance(obj.get("text"), str) or not isinstance(obj.get("su"), bool):
        raise GoldFormatError("gold record needs string 'text' and boolean 'su'", line)
    groups = tuple(_group_name(g, line) for g in obj.get("groups", []) or [])
    authorial = obj.get("authorial")
    if authorial is not None and authorial not in AUTHORIAL_VALUES:
        raise GoldFormatError(f"authorial must be one of {sorted(AUTHORIAL_VALUES)} or null", line)
    if not obj["su"] and (groups or authorial is not None):
        raise GoldFormatError("su=false records must have no groups and null authorial", line)
    spans = None
    if obj.get("spans") is not None:
        size = len(obj["text"].encode("utf-8"))
        spans_l = []
        for sp in obj["spans"]:
            start, end = int(sp["start"]), int(sp["end"])
            if not 0 <= start < end <= size:
                raise GoldFormatError(f"span [{start}, {end}) outside text", line)
            spans_l.append((start, end, _group_name(sp["group"], line)))
        spans = tuple(spans_l)
    return GoldRecord(obj["text"], obj["su"], groups, authorial, spans)


def read_records(lines: Iterable[str]) -> list[GoldRecord]:
    out = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise GoldFormatError(f"invalid JSON: {exc.msg}", lineno) from None
        out.append(record_from_obj(obj, lineno))
    return out


@dataclass
class PRF:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def precision(self) -> float:
        if self.tp + self.fp == 0:
            return 1.0 if self.fn == 0 else 0.0
        return self.tp / (self.tp + self.fp)

    @property
    def recall(self) -> float:
        if self.tp + self.fn == 0:
            return 1.0 if self.fp == 0 else 0.0
        return self.tp / (self.tp + self.fn)

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 0.0 if p + r == 0 else 2 * p * r / (p + r)

    def as_dict(self) -> dict[str, float | int]:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1,
                "tp": self.tp, "fp": self.fp, "fn": self.fn}


@dataclass
class RelaxedPRF(PRF):
    """Overlap-based span scores: ``tp`` counts matched predictions,
    ``gold_tp`` counts gold spans hit by at least one prediction."""

    gold_tp: int = 0

    @property
    def recall(self) -> float:
        if self.gold_tp + self.fn == 0:
            return 1.0 if self.fp == 0 else 0.0
        return self.gold_tp / (self.gold_tp + self.fn)


@dataclass
class EvalReport:
    n: int
    su: PRF
    su_accuracy: float
    groups: dict[str, PRF]
    micro: PRF
    macro: dict[str, float]
    authorial_accuracy: float
    authorial_support: int
    spans: Optional[RelaxedPRF] = None
    span_support: int = 0

    def metrics(self) -> dict[str, float]:
        """Flat name -> value view of every score in [0, 1]."""
        out = {"su_precision": self.su.precision, "su_recall": self.su.recall, "su_f1": self.su.f1,
               "su_accuracy": self.su_accuracy, "micro_precision": self.micro.precision,
               "micro_recall": self.micro.recall, "micro_f1": self.micro.f1,
               "authorial_accuracy": self.authorial_accuracy}
        for k, v in self.macro.items():
            out[f"macro_{k}"] = v
        for g, prf in self.groups.items():
            out[f"{g}_precision"] = prf.precision
            out[f"{g}_recall"] = prf.recall
            out[f"{g}_f1"] = prf.f1
        if self.spans is not None:
            out["span_precision"] = self.spans.precision
            out["span_recall"] = self.spans.recall
            out["span_f1"] = self.spans.f1
        return out

    def as_dict(self) -> dict[str, Any]:
        return {
            "records": self.n,
            "su": self.su.as_dict(),
            "su_accuracy": self.su_accuracy,
            "groups": {g: prf.as_dict() for g, prf in self.groups.items()},
            "micro": self.micro.as_dict(),
            "macro": self.macro,
            "authorial": {"accuracy": self.authorial_accuracy, "support": self.authorial_support},
            "spans": None if self.spans is None else {**self.spans.as_dict(), "support": self.span_support},
        }

    def table(self) -> str:
        rows = [("metric", "P", "R", "F1")]
        rows.append(("SU sentence", *_fmt(self.su)))
        for g, prf in self.groups.items():
            rows.append((g, *_fmt(prf)))
        rows.append(("micro avg", *_fmt(self.micro)))
        rows.append(("macro avg", f"{self.macro['precision']:.3f}", f"{self.macro['recall']:.3f}",
                     f"{self.macro['f1']:.3f}"))
        if self.spans is not None:
            rows.append(("spans (relaxed)", *_fmt(self.spans)))
        width = max(len(r[0]) for r in rows)
        lines = [f"{r[0]:<{width}}  {r[1]:>6} {r[2]:>6} {r[3]:>6}" for r in rows]
        lines.append(f"SU accuracy: {self.su_accuracy:.3f} over {self.n} records")
        lines.append(f"authorial accuracy: {self.authorial_accuracy:.3f} over {self.authorial_support} gold-SU records")
        return "\n".join(lines) + "\n"


def _fmt(prf: PRF) -> tuple[str, str, str]:
    return f"{prf.precision:.3f}", f"{prf.recall:.3f}", f"{prf.f1:.3f}"


def evaluate(gold: list[GoldRecord], pred: list[GoldRecord]) -> EvalReport:
    if len(gold) != len(pred):
        raise GoldFormatError(f"record count mismatch: {len(gold)} gold vs {len(pred)} predicted")
    su = PRF()
    correct = 0
    groups = {g.value: PRF() for g in SuGroup}
    auth_ok = auth_n = 0
    spans = RelaxedPRF()
    span_support = 0
    have_spans = False
    for g, p in zip(gold, pred):
        if g.su and p.su:
            su.tp += 1
        elif p.su:
            su.fp += 1
        elif g.su:
            su.fn += 1
        correct += g.su == p.su
        gs, ps = set(g.groups), set(p.groups)
        for name, prf in groups.items():
            if name in gs and name in ps:
                prf.tp += 1
            elif name in ps:
                prf.fp += 1
            elif name in gs:
                prf.fn += 1
        if g.su:
            auth_n += 1
            auth_ok += g.authorial == p.authorial
        if g.spans is not None:
            have_spans = True
            pspans = p.spans or ()
            span_support += len(g.spans)
            for a, b, grp in pspans:
                if any(a < gb and ga < b and grp == gg for ga, gb, gg in g.spans):
                    spans.tp += 1
                else:
                    spans.fp += 1
            for ga, gb, gg in g.spans:
                if any(a < gb and ga < b and grp == gg for a, b, grp in pspans):
                    spans.gold_tp += 1
                else:
                    spans.fn += 1
    micro = PRF(sum(x.tp for x in groups.values()), sum(x.fp for x in groups.values()),
                sum(x.fn for x in groups.values()))
    k = len(groups)
    macro = {
        "precision": sum(x.precision for x in groups.values()) / k,
        "recall": sum(x.recall for x in groups.values()) / k,
        "f1": sum(x.f1 for x in groups.values()) / k,
    }
    return EvalReport(
        n=len(gold), su=su, su_accuracy=correct / len(gold) if gold else 1.0, groups=groups,
        micro=micro, macro=macro, authorial_accuracy=auth_ok / auth_n if auth_n else 1.0,
        authorial_support=auth_n, spans=spans if have_spans else None, span_support=span_support,
    )
