"""The shipped ruleset: span patterns for all twelve uncertainty groups,
rebuttal/confirmation cancellations and the authorial lexicon.

The lexicons are a reconstruction seeded from canonical examples of each
group plus tense and British/American spelling variants. Extend them by
exporting the builtin file (``suspan rules export``) and editing a copy.
"""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .model import SuGroup
from .rulelang import CompiledRuleSet, RuleSet, compile_ruleset, parse_ruleset

BUILTIN_VERSION = "builtin-1"

GROUP_DESCRIPTIONS = {
    SuGroup.EXPLICIT_SU: "an overt uncertainty keyword states the doubt directly",
    SuGroup.MODALITY: "a modal verb frames the claim as possible rather than established",
    SuGroup.CONDITIONAL_EXPRESSION: "the claim holds only under a stated condition",
    SuGroup.HYPOTHESIS: "the claim is put forward as a hypothesis or assumption still to be tested",
    SuGroup.PREDICTION: "the claim is a forecast or projection whose outcome is open",
    SuGroup.INTERROGATIVE_EXPRESSION: "the sentence raises an open or embedded question",
    SuGroup.NON_GENERALIZABLE_STATEMENT: "the result is restricted in scope and may not transfer",
    SuGroup.ADVERBIAL_SU: "an adverb weakens or qualifies the strength of the claim",
    SuGroup.NEGATION: "a negated epistemic term denies that the matter is settled",
    SuGroup.SUBJECTIVITY: "the claim rests on the authors' belief or opinion",
    SuGroup.CONJECTURAL: "the claim is an inference or supposition without firm evidence",
    SuGroup.DISAGREEMENT: "the sentence reports conflicting findings or opposing positions",
}


def builtin_bytes() -> bytes:
    return resources.files("suspan").joinpath("data/builtin.json").read_bytes()


@lru_cache(maxsize=1)
def builtin_ruleset() -> RuleSet:
    return parse_ruleset(builtin_bytes())


@lru_cache(maxsize=1)
def builtin_compiled() -> CompiledRuleSet:
    return compile_ruleset(builtin_ruleset())
