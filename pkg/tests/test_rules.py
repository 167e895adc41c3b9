import re

from suspan.model import SuGroup
from suspan.rulelang import validate_ruleset
from suspan.rules import BUILTIN_VERSION, GROUP_DESCRIPTIONS, builtin_bytes


def test_every_group_covered(builtin):
    assert {p.label for p in builtin.patterns} == set(SuGroup)


def test_builtin_validates_clean(builtin):
    assert validate_ruleset(builtin) == []


def test_version(builtin):
    assert builtin.version == BUILTIN_VERSION


def test_ids_namespaced(builtin):
    for p in builtin.patterns:
        assert re.fullmatch(r"[a-z]+-\d{3}", p.id) and not p.id.startswith("cx-")
    assert all(p.id.startswith("cx-") for p in builtin.cancellations)


def test_no_pattern_matches_empty_sequence(builtin):
    for p in builtin.all_patterns():
        assert any(not c.optional for c in p.constraints), p.id


def test_every_pattern_has_note(builtin):
    assert all(p.note for p in builtin.all_patterns())


def test_descriptions_for_each_group():
    assert set(GROUP_DESCRIPTIONS) == set(SuGroup)
    assert all(d.strip() for d in GROUP_DESCRIPTIONS.values())


def test_builtin_file_is_canonical(builtin):
    from suspan.rulelang import serialize_ruleset
    assert builtin_bytes().decode("utf-8") == serialize_ruleset(builtin)


def test_citation_regexes_name_kinds(builtin):
    from suspan.authorial import CitationKind
    names = set()
    for rx in builtin.authorial.citation_regexes:
        names |= set(re.compile(rx).groupindex)
    assert names == {k.value for k in CitationKind}
