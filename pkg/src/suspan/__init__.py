"""Rule-based detection of scientific uncertainty in sentences."""
from .ingest import IngestConfig, ingest_plain, make_sentence, parse_conllu, serialize_conllu
from .kernel import BACKEND
from .matcher import SpanMatch, match_sentence, resolve_overlaps
from .model import AuthorialRef, CancelKind, Document, Sentence, SuGroup, Token, clause_segments
from .pipeline import (
    AnnotationReport,
    SentenceAnnotation,
    annotate_document,
    annotate_sentence,
    apply_cancellation,
    classify_authorial,
)
from .rulelang import (
    CompiledRuleSet,
    RuleSet,
    RulesetError,
    compile_ruleset,
    parse_ruleset,
    serialize_ruleset,
    validate_ruleset,
)
from .rules import builtin_compiled, builtin_ruleset

__version__ = "0.1.0"

__all__ = [
    "AnnotationReport", "AuthorialRef", "BACKEND", "CancelKind", "CompiledRuleSet", "Document",
    "IngestConfig", "RuleSet", "RulesetError", "Sentence", "SentenceAnnotation", "SpanMatch", "SuGroup",
    "Token", "annotate_document", "annotate_sentence", "apply_cancellation", "builtin_compiled",
    "builtin_ruleset", "classify_authorial", "clause_segments", "compile_ruleset", "ingest_plain",
    "make_sentence", "match_sentence", "parse_conllu", "parse_ruleset", "resolve_overlaps",
    "serialize_conllu", "serialize_ruleset", "validate_ruleset",
]
