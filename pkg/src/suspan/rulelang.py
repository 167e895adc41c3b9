"""Declarative token-pattern language: parsing, validation and compilation.

A rule file is UTF-8 JSON::

    {
      "version": "...",
      "groups": [{"group": "Modality", "patterns": [
          {"id": "mod-001", "note": "...", "tokens": [{"LOWER": {"IN": ["may", "might"]}}, {"POS": "VERB"}]}
      ]}],
      "cancellations": [{"id": "cx-001", "kind": "rebuttal", "note": "...", "tokens": [...]}],
      "authorial": {"first_person": [], "present_study": [], "previous_study": [], "citation_regexes": []}
    }

Constraint keys are ``TEXT``, ``LOWER``, ``LEMMA``, ``POS`` (a string or
``{"IN": [...]}``), ``MORPH`` (list of ``Feat=Val``), ``REGEX`` (matched in
full against the lowercased form) and ``OP`` (``?``, ``*`` or ``+``).
Matching is greedy with full backtracking: for each start token the longest
satisfying span is reported.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Union

from .model import CancelKind, Sentence, SuGroup, Token

Label = Union[SuGroup, CancelKind]
StrSet = Union[str, tuple[str, ...], None]

OPS = ("?", "*", "+")
_CONSTRAINT_KEYS = {"TEXT", "LOWER", "LEMMA", "POS", "MORPH", "REGEX", "OP"}
_SET_ATTRS = (("TEXT", "text"), ("LOWER", "lower"), ("LEMMA", "lemma"), ("POS", "pos"))

# kernel opcodes; "+" compiles to ONE followed by STAR
ONE, OPT, STAR = 0, 1, 2


class RulesetError(ValueError):
    """Fatal rule-file problem. ``code`` is a stable diagnostic identifier."""

    def __init__(self, code: str, message: str, position: str | None = None):
        self.code = code
        self.position = position
        where = f" at {position}" if position else ""
        super().__init__(f"{code}{where}: {message}")


@dataclass(frozen=True)
class Diagnostic:
    level: str  # "error" | "warning"
    code: str
    message: str
    pattern_id: str | None = None

    def __str__(self) -> str:
        where = f" [{self.pattern_id}]" if self.pattern_id else ""
        return f"{self.level.upper()} {self.code}{where}: {self.message}"


@dataclass(frozen=True)
class TokenConstraint:
    text: StrSet = None
    lower: StrSet = None
    lemma: StrSet = None
    pos: StrSet = None
    morph: tuple[str, ...] = ()
    regex: str | None = None
    op: str | None = None

    def predicates(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for key, attr in _SET_ATTRS:
            val = getattr(self, attr)
            if val is not None:
                out[key] = val
        if self.morph:
            out["MORPH"] = self.morph
        if self.regex is not None:
            out["REGEX"] = self.regex
        return out

    @property
    def optional(self) -> bool:
        return self.op in ("?", "*")

    def value_set(self, attr: str) -> frozenset[str] | None:
        val = getattr(self, attr)
        if val is None:
            return None
        return frozenset((val,)) if isinstance(val, str) else frozenset(val)

    def matches(self, token: Token) -> bool:
        return _compile_test(self)(token)


@dataclass(frozen=True)
class Pattern:
    id: str
    label: Label
    constraints: tuple[TokenConstraint, ...]
    note: str = ""

    @property
    def is_cancellation(self) -> bool:
        return isinstance(self.label, CancelKind)


@dataclass(frozen=True)
class AuthorialLexicon:
    first_person: tuple[str, ...] = ()
    present_study: tuple[str, ...] = ()
    previous_study: tuple[str, ...] = ()
    citation_regexes: tuple[str, ...] = ()


@dataclass(frozen=True)
class RuleSet:
    version: str
    patterns: tuple[Pattern, ...] = ()
    cancellations: tuple[Pattern, ...] = ()
    authorial: AuthorialLexicon = field(default_factory=AuthorialLexicon)

    def all_patterns(self) -> tuple[Pattern, ...]:
        return self.patterns + self.cancellations


# ---------------------------------------------------------------------------
# parsing


def _expect(cond: bool, code: str, msg: str, pos: str) -> None:
    if not cond:
        raise RulesetError(code, msg, pos)


def _str_list(value: Any, pos: str) -> tuple[str, ...]:
    _expect(isinstance(value, list) and all(isinstance(v, str) for v in value),
            "SYNTAX", "expected a list of strings", pos)
    return tuple(value)


def _parse_constraint(obj: Any, pos: str) -> TokenConstraint:
    _expect(isinstance(obj, dict), "SYNTAX", "constraint must be an object", pos)
    unknown = set(obj) - _CONSTRAINT_KEYS
    _expect(not unknown, "UNKNOWN_KEY", f"unknown constraint key(s) {sorted(unknown)}", pos)
    kw: dict[str, Any] = {}
    for key, attr in _SET_ATTRS:
        if key not in obj:
            continue
        val = obj[key]
        if isinstance(val, str):
            kw[attr] = val
        elif isinstance(val, dict):
            _expect(set(val) == {"IN"}, "UNKNOWN_KEY", f"{key} object accepts only 'IN'", pos)
            kw[attr] = _str_list(val["IN"], f"{pos}.{key}.IN")
            _expect(len(kw[attr]) > 0, "SYNTAX", f"{key}.IN must be non-empty", pos)
        else:
            raise RulesetError("SYNTAX", f"{key} must be a string or {{'IN': [...]}}", pos)
    if "MORPH" in obj:
        feats = _str_list(obj["MORPH"], f"{pos}.MORPH")
        _expect(all("=" in f for f in feats), "SYNTAX", "MORPH entries must look like Feat=Val", pos)
        kw["morph"] = feats
    if "REGEX" in obj:
        _expect(isinstance(obj["REGEX"], str), "SYNTAX", "REGEX must be a string", pos)
        try:
            re.compile(obj["REGEX"])
        except re.error as exc:
            raise RulesetError("INVALID_REGEX", str(exc), pos) from None
        kw["regex"] = obj["REGEX"]
    if "OP" in obj:
        _expect(obj["OP"] in OPS, "BAD_OP", f"OP must be one of {OPS}", pos)
        kw["op"] = obj["OP"]
    c = TokenConstraint(**kw)
    _expect(bool(c.predicates()) or c.op is not None, "EMPTY_CONSTRAINT",
            "a predicate-free constraint needs an explicit OP", pos)
    return c


def _parse_pattern(obj: Any, label: Label, pos: str, extra_keys: set[str]) -> Pattern:
    _expect(isinstance(obj, dict), "SYNTAX", "pattern must be an object", pos)
    unknown = set(obj) - {"id", "note", "tokens"} - extra_keys
    _expect(not unknown, "UNKNOWN_KEY", f"unknown pattern key(s) {sorted(unknown)}", pos)
    pid = obj.get("id")
    _expect(isinstance(pid, str) and pid != "", "SYNTAX", "pattern id must be a non-empty string", pos)
    pos = f"{pos}({pid})"
    note = obj.get("note", "")
    _expect(isinstance(note, str), "SYNTAX", "note must be a string", pos)
    toks = obj.get("tokens")
    _expect(isinstance(toks, list) and len(toks) > 0, "EMPTY_PATTERN", "tokens must be a non-empty list", pos)
    constraints = tuple(_parse_constraint(t, f"{pos}.tokens[{i}]") for i, t in enumerate(toks))
    _expect(any(not c.optional for c in constraints), "NO_REQUIRED_TOKEN",
            "pattern needs at least one non-optional constraint", pos)
    return Pattern(id=pid, label=label, constraints=constraints, note=note)


def ruleset_from_obj(obj: Any) -> RuleSet:
    _expect(isinstance(obj, dict), "SYNTAX", "top level must be an object", "$")
    unknown = set(obj) - {"version", "groups", "cancellations", "authorial"}
    _expect(not unknown, "UNKNOWN_KEY", f"unknown top-level key(s) {sorted(unknown)}", "$")
    version = obj.get("version")
    _expect(isinstance(version, str) and version != "", "SYNTAX", "version must be a non-empty string", "$.version")

    patterns: list[Pattern] = []
    groups = obj.get("groups", [])
    _expect(isinstance(groups, list), "SYNTAX", "groups must be a list", "$.groups")
    for gi, g in enumerate(groups):
        gpos = f"$.groups[{gi}]"
        _expect(isinstance(g, dict), "SYNTAX", "group entry must be an object", gpos)
        unknown = set(g) - {"group", "patterns"}
        _expect(not unknown, "UNKNOWN_KEY", f"unknown group key(s) {sorted(unknown)}", gpos)
        try:
            label = SuGroup(g.get("group"))
        except ValueError:
            raise RulesetError("UNKNOWN_GROUP", f"unknown group {g.get('group')!r}", gpos) from None
        plist = g.get("patterns", [])
        _expect(isinstance(plist, list), "SYNTAX", "patterns must be a list", gpos)
        for pi, p in enumerate(plist):
            patterns.append(_parse_pattern(p, label, f"{gpos}.patterns[{pi}]", set()))

    cancellations: list[Pattern] = []
    cx = obj.get("cancellations", [])
    _expect(isinstance(cx, list), "SYNTAX", "cancellations must be a list", "$.cancellations")
    for ci, p in enumerate(cx):
        cpos = f"$.cancellations[{ci}]"
        _expect(isinstance(p, dict), "SYNTAX", "cancellation must be an object", cpos)
        try:
            kind = CancelKind(p.get("kind"))
        except ValueError:
            raise RulesetError("UNKNOWN_KIND", f"unknown cancellation kind {p.get('kind')!r}", cpos) from None
        cancellations.append(_parse_pattern(p, kind, cpos, {"kind"}))

    auth = obj.get("authorial", {})
    _expect(isinstance(auth, dict), "SYNTAX", "authorial must be an object", "$.authorial")
    akeys = {"first_person", "present_study", "previous_study", "citation_regexes"}
    unknown = set(auth) - akeys
    _expect(not unknown, "UNKNOWN_KEY", f"unknown authorial key(s) {sorted(unknown)}", "$.authorial")
    lex = {k: _str_list(auth.get(k, []), f"$.authorial.{k}") for k in akeys}
    for i, rx in enumerate(lex["citation_regexes"]):
        try:
            re.compile(rx)
        except re.error as exc:
            raise RulesetError("INVALID_REGEX", str(exc), f"$.authorial.citation_regexes[{i}]") from None

    seen: set[str] = set()
    for p in patterns + cancellations:
        _expect(p.id not in seen, "DUPLICATE_ID", f"duplicate pattern id {p.id!r}", p.id)
        seen.add(p.id)
    return RuleSet(version=version, patterns=tuple(patterns), cancellations=tuple(cancellations),
                   authorial=AuthorialLexicon(**lex))


def parse_ruleset(content: bytes | str) -> RuleSet:
    if isinstance(content, bytes):
        try:
            content = content.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise RulesetError("SYNTAX", f"not UTF-8: {exc}", f"byte {exc.start}") from None
    try:
        obj = json.loads(content)
    except json.JSONDecodeError as exc:
        raise RulesetError("SYNTAX", exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return ruleset_from_obj(obj)


# ---------------------------------------------------------------------------
# serialization


def _constraint_obj(c: TokenConstraint) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, val in c.predicates().items():
        if key == "MORPH":
            out[key] = list(val)
        elif isinstance(val, tuple):
            out[key] = {"IN": list(val)}
        else:
            out[key] = val
    if c.op is not None:
        out["OP"] = c.op
    return out


def _pattern_obj(p: Pattern) -> dict[str, Any]:
    out: dict[str, Any] = {"id": p.id}
    if p.is_cancellation:
        out["kind"] = p.label.value
    out["note"] = p.note
    out["tokens"] = [_constraint_obj(c) for c in p.constraints]
    return out


def ruleset_to_obj(rs: RuleSet) -> dict[str, Any]:
    groups: list[dict[str, Any]] = []
    for p in rs.patterns:
        # consecutive runs keep the original pattern order on re-parse
        if not groups or groups[-1]["group"] != p.label.value:
            groups.append({"group": p.label.value, "patterns": []})
        groups[-1]["patterns"].append(_pattern_obj(p))
    a = rs.authorial
    return {
        "version": rs.version,
        "groups": groups,
        "cancellations": [_pattern_obj(p) for p in rs.cancellations],
        "authorial": {
            "first_person": list(a.first_person),
            "present_study": list(a.present_study),
            "previous_study": list(a.previous_study),
            "citation_regexes": list(a.citation_regexes),
        },
    }


def serialize_ruleset(rs: RuleSet) -> str:
    return json.dumps(ruleset_to_obj(rs), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# validation


def _subsumes(general: TokenConstraint, specific: TokenConstraint) -> bool:
    """True when every token accepted by ``specific`` is accepted by ``general``."""
    for _, attr in _SET_ATTRS:
        g = general.value_set(attr)
        if g is None:
            continue
        s = specific.value_set(attr)
        if s is None or not s <= g:
            return False
    if not set(general.morph) <= set(specific.morph):
        return False
    if general.regex is not None and general.regex != specific.regex:
        return False
    return True


def _generalizes(a: Pattern, b: Pattern) -> bool:
    if len(a.constraints) != len(b.constraints):
        return False
    return all(ca.op == cb.op and _subsumes(ca, cb) for ca, cb in zip(a.constraints, b.constraints))


def validate_ruleset(rs: RuleSet) -> list[Diagnostic]:
    """Check a RuleSet; returns errors and warnings instead of raising."""
    diags: list[Diagnostic] = []
    if not rs.version:
        diags.append(Diagnostic("error", "EMPTY_VERSION", "version must be non-empty"))
    seen: set[str] = set()
    for p in rs.all_patterns():
        if p.id in seen:
            diags.append(Diagnostic("error", "DUPLICATE_ID", f"duplicate pattern id {p.id!r}", p.id))
        seen.add(p.id)
        if not p.constraints:
            diags.append(Diagnostic("error", "EMPTY_PATTERN", "pattern has no constraints", p.id))
        elif all(c.optional for c in p.constraints):
            diags.append(Diagnostic("error", "NO_REQUIRED_TOKEN", "pattern can match the empty sequence", p.id))
        for i, c in enumerate(p.constraints):
            if c.regex is not None:
                try:
                    re.compile(c.regex)
                except re.error as exc:
                    diags.append(Diagnostic("error", "INVALID_REGEX", f"token {i}: {exc}", p.id))
            if c.op is not None and c.op not in OPS:
                diags.append(Diagnostic("error", "BAD_OP", f"token {i}: unknown op {c.op!r}", p.id))
            if not c.predicates():
                if c.op is None:
                    diags.append(Diagnostic("warning", "WILDCARD_ONE",
                                            f"token {i}: predicate-free constraint matches any token", p.id))
    for i, rx in enumerate(rs.authorial.citation_regexes):
        try:
            re.compile(rx)
        except re.error as exc:
            diags.append(Diagnostic("error", "INVALID_REGEX", f"citation regex {i}: {exc}"))

    present = {p.label for p in rs.patterns}
    for g in SuGroup:
        if g not in present:
            diags.append(Diagnostic("warning", "EMPTY_GROUP", f"no patterns for group {g.value}"))

    by_label: dict[Label, list[Pattern]] = {}
    for p in rs.all_patterns():
        by_label.setdefault(p.label, []).append(p)
    for plist in by_label.values():
        for a in plist:
            for b in plist:
                if a is not b and _generalizes(a, b) and not (_generalizes(b, a) and a.id > b.id):
                    diags.append(Diagnostic("warning", "SHADOWED",
                                            f"pattern {b.id!r} is shadowed by {a.id!r}", b.id))
    return diags


# ---------------------------------------------------------------------------
# compilation


def _compile_test(c: TokenConstraint) -> Callable[[Token], bool]:
    checks: list[Callable[[Token], bool]] = []
    for _, attr in _SET_ATTRS:
        vals = c.value_set(attr)
        if vals is None:
            continue
        if len(vals) == 1:
            (v,) = vals
            checks.append(lambda t, a=attr, v=v: getattr(t, a) == v)
        else:
            checks.append(lambda t, a=attr, s=vals: getattr(t, a) in s)
    if c.morph:
        need = frozenset(c.morph)
        checks.append(lambda t: need <= t.morph)
    if c.regex is not None:
        rx = re.compile(c.regex)
        checks.append(lambda t: rx.fullmatch(t.lower) is not None)
    if not checks:
        return lambda t: True
    if len(checks) == 1:
        return checks[0]
    return lambda t: all(f(t) for f in checks)


@dataclass(frozen=True)
class CompiledPattern:
    id: str
    label: Label
    slots: tuple[int, ...]  # indexes into CompiledRuleSet.tests, one per kernel state
    ops: bytes
    anchors: frozenset[tuple[str, str]] | None  # None: always a candidate


def _anchor(p: Pattern) -> frozenset[tuple[str, str]] | None:
    """Pick the required constraint with the narrowest lexical key set."""
    best: frozenset[tuple[str, str]] | None = None
    for c in p.constraints:
        if c.optional:
            continue
        for attr in ("lower", "lemma", "text"):
            vals = c.value_set(attr)
            if vals is not None:
                keys = frozenset((attr, v) for v in vals)
                if best is None or len(keys) < len(best):
                    best = keys
    return best


class CompiledRuleSet:
    """Immutable matcher program for a validated RuleSet.

    Identical constraints are shared across patterns so each is evaluated at
    most once per sentence.
    """

    def __init__(self, rs: RuleSet):
        self.ruleset = rs
        self.version = rs.version
        self._constraints: list[TokenConstraint] = []
        index: dict[TokenConstraint, int] = {}
        patterns = []
        for p in rs.all_patterns():
            slots: list[int] = []
            ops = bytearray()
            for c in p.constraints:
                key = TokenConstraint(**{**c.__dict__, "op": None})
                if key not in index:
                    index[key] = len(self._constraints)
                    self._constraints.append(key)
                cid = index[key]
                if c.op == "+":
                    slots += [cid, cid]
                    ops += bytes((ONE, STAR))
                else:
                    slots.append(cid)
                    ops.append({None: ONE, "?": OPT, "*": STAR}[c.op])
            patterns.append(CompiledPattern(p.id, p.label, tuple(slots), bytes(ops), _anchor(p)))
        self.patterns: tuple[CompiledPattern, ...] = tuple(patterns)
        self.labels = {p.id: p.label for p in patterns}
        self.tests = tuple(_compile_test(c) for c in self._constraints)
        self._always = [i for i, p in enumerate(patterns) if p.anchors is None]
        self._anchor_index: dict[tuple[str, str], list[int]] = {}
        for i, p in enumerate(patterns):
            for key in p.anchors or ():
                self._anchor_index.setdefault(key, []).append(i)

    def __getstate__(self) -> dict[str, Any]:
        return {"rs": self.ruleset}

    def __setstate__(self, state: dict[str, Any]) -> None:
        self.__init__(state["rs"])

    def candidates(self, sentence: Sentence) -> list[CompiledPattern]:
        """Patterns whose lexical anchor occurs in the sentence, in ruleset order."""
        hits = set(self._always)
        index = self._anchor_index
        for t in sentence.tokens:
            for key in (("lower", t.lower), ("lemma", t.lemma), ("text", t.text)):
                found = index.get(key)
                if found:
                    hits.update(found)
        return [self.patterns[i] for i in sorted(hits)]


def compile_ruleset(rs: RuleSet) -> CompiledRuleSet:
    errors = [d for d in validate_ruleset(rs) if d.level == "error"]
    if errors:
        raise RulesetError(errors[0].code, errors[0].message, errors[0].pattern_id)
    return CompiledRuleSet(rs)
