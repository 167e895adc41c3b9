"""Brute-force pattern interpreter used as an independent oracle.

Works directly on the raw JSON constraint objects and enumerates every
assignment of quantifier repetitions; shares no code with the compiled
matcher.
"""
from __future__ import annotations

import re

from suspan.model import Token


def satisfies(c: dict, tok: Token) -> bool:
    for key, attr in (("TEXT", "text"), ("LOWER", "lower"), ("LEMMA", "lemma"), ("POS", "pos")):
        if key in c:
            v = c[key]
            allowed = [v] if isinstance(v, str) else v["IN"]
            if getattr(tok, attr) not in allowed:
                return False
    if "MORPH" in c and not all(f in tok.morph for f in c["MORPH"]):
        return False
    if "REGEX" in c and not re.fullmatch(c["REGEX"], tok.lower):
        return False
    return True


def _ends(cs: list[dict], toks: tuple[Token, ...], i: int, j: int) -> set[int]:
    if i == len(cs):
        return {j}
    c = cs[i]
    op = c.get("OP")
    lo = {None: 1, "?": 0, "*": 0, "+": 1}[op]
    hi = {None: 1, "?": 1, "*": len(toks), "+": len(toks)}[op]
    out: set[int] = set()
    for reps in range(lo, hi + 1):
        if j + reps > len(toks):
            break
        if reps and not satisfies(c, toks[j + reps - 1]):
            break
        out |= _ends(cs, toks, i + 1, j + reps)
    return out


def longest_matches(pattern: dict, toks: tuple[Token, ...]) -> list[tuple[int, int]]:
    """(start, end) of the longest non-empty match at each start position."""
    out = []
    for start in range(len(toks)):
        ends = [e for e in _ends(pattern["tokens"], toks, 0, start) if e > start]
        if ends:
            out.append((start, max(ends)))
    return out
