"""Command-line interface.

    suspan annotate --input paper.txt --output-format jsonl
    suspan eval gold.jsonl predictions.jsonl
    suspan eval gold.jsonl --annotate-with builtin
    suspan rules export > rules.json
    suspan rules validate rules.json
    suspan rules list

Exit codes: 0 ok, 2 bad flags, 3 input/parse errors, 4 ruleset validation errors.
The ``UNSCIENTIFY_RULESET`` environment variable names a default rule file.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, TextIO

from .evaluate import GoldFormatError, evaluate, read_records, record_from_obj
from .ingest import ConlluError, ingest_plain, make_sentence, parse_conllu
from .model import SuGroup
from .pipeline import annotate_document, annotate_sentences
from .render import record, to_html, to_json, to_jsonl, to_tty
from .rulelang import CompiledRuleSet, RuleSet, RulesetError, compile_ruleset, parse_ruleset, serialize_ruleset, validate_ruleset
from .rules import builtin_compiled, builtin_ruleset

RULESET_ENV = "UNSCIENTIFY_RULESET"

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INVALID = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _load_ruleset(path: Optional[str], invalid_code: int = EXIT_INPUT) -> RuleSet:
    path = path or os.environ.get(RULESET_ENV) or "builtin"
    if path == "builtin":
        return builtin_ruleset()
    try:
        content = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read ruleset {path}: {exc.strerror}") from None
    try:
        return parse_ruleset(content)
    except RulesetError as exc:
        code = EXIT_INPUT if exc.code == "SYNTAX" else invalid_code
        raise CliError(f"{path}: {exc}", code) from None


def _compiled(path: Optional[str]) -> CompiledRuleSet:
    if not (path or os.environ.get(RULESET_ENV)) or path == "builtin":
        return builtin_compiled()
    rs = _load_ruleset(path)
    try:
        return compile_ruleset(rs)
    except RulesetError as exc:
        raise CliError(f"invalid ruleset: {exc}", EXIT_INVALID) from None


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}") from None


def _open_output(path: Optional[str]) -> TextIO:
    if not path or path == "-":
        return sys.stdout
    try:
        return open(path, "w", encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from None


def cmd_annotate(args: argparse.Namespace) -> int:
    crs = _compiled(args.ruleset)
    content = _read_input(args.input)
    doc_id = "stdin" if args.input == "-" else Path(args.input).stem
    if args.input_format == "conllu":
        if not content.strip():
            doc = ingest_plain("", doc_id=doc_id)
        else:
            try:
                doc = parse_conllu(content, doc_id=doc_id)
            except ConlluError as exc:
                raise CliError(f"{args.input}: {exc}") from None
    else:
        doc = ingest_plain(content, doc_id=doc_id)
    report = annotate_document(crs, doc, workers=args.workers)
    fmt = args.output_format
    if fmt == "jsonl":
        out = to_jsonl(report.annotations)
    elif fmt == "json":
        out = to_json(report)
    elif fmt == "html":
        out = to_html(report)
    else:
        color = args.color == "always" or (args.color == "auto" and not args.output and sys.stdout.isatty())
        out = to_tty(report.annotations, color=color)
    stream = _open_output(args.output)
    try:
        stream.write(out)
    finally:
        if stream is not sys.stdout:
            stream.close()
    return EXIT_OK


def _read_records(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return read_records(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except GoldFormatError as exc:
        raise CliError(f"{path}: {exc}") from None


def cmd_eval(args: argparse.Namespace) -> int:
    gold = _read_records(args.gold)
    if args.predictions and args.annotate_with:
        raise CliError("give either a predictions file or --annotate-with, not both", EXIT_USAGE)
    if args.predictions:
        pred = _read_records(args.predictions)
    else:
        crs = _compiled(args.annotate_with)
        sentences = [make_sentence(g.text, i) for i, g in enumerate(gold)]
        pred = [record_from_obj(record(a)) for a in annotate_sentences(crs, sentences, args.workers)]
    try:
        report = evaluate(gold, pred)
    except GoldFormatError as exc:
        raise CliError(str(exc)) from None
    if args.json:
        stream = _open_output(args.json)
        try:
            stream.write(json.dumps(report.as_dict(), indent=2) + "\n")
        finally:
            if stream is not sys.stdout:
                stream.close()
    if args.json != "-":
        sys.stdout.write(report.table())
    return EXIT_OK


def cmd_rules(args: argparse.Namespace) -> int:
    if args.action == "export":
        stream = _open_output(args.output)
        try:
            stream.write(serialize_ruleset(builtin_ruleset()))
        finally:
            if stream is not sys.stdout:
                stream.close()
        return EXIT_OK
    # semantic errors caught while parsing count as validation failures here
    rs = _load_ruleset(args.path, EXIT_INVALID if args.action == "validate" else EXIT_INPUT)
    if args.action == "validate":
        diags = validate_ruleset(rs)
        for d in diags:
            print(d, file=sys.stderr if d.level == "error" else sys.stdout)
        errors = sum(d.level == "error" for d in diags)
        print(f"{rs.version}: {len(rs.patterns)} patterns, {len(rs.cancellations)} cancellations, "
              f"{errors} errors, {len(diags) - errors} warnings")
        return EXIT_INVALID if errors else EXIT_OK
    # list
    for g in SuGroup:
        pats = [p for p in rs.patterns if p.label is g]
        print(f"{g.value} ({len(pats)})")
        for p in pats:
            print(f"  {p.id:<10} {p.note}")
    print(f"cancellations ({len(rs.cancellations)})")
    for p in rs.cancellations:
        print(f"  {p.id:<10} {p.label.value:<12} {p.note}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="suspan", description="Detect scientific uncertainty in sentences.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("annotate", help="annotate text or CoNLL-U")
    p.add_argument("--input", required=True, help="input path, or - for stdin")
    p.add_argument("--input-format", choices=("conllu", "text"), default="text")
    p.add_argument("--ruleset", default=None, help="rule file (default: builtin, or $%s)" % RULESET_ENV)
    p.add_argument("--output-format", choices=("json", "jsonl", "tty", "html"), default="tty")
    p.add_argument("--output", default=None, help="output path (default: stdout)")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--color", choices=("auto", "always", "never"), default="auto")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("eval", help="score predictions against a gold JSONL file")
    p.add_argument("gold")
    p.add_argument("predictions", nargs="?")
    p.add_argument("--annotate-with", metavar="RULESET", help="annotate gold texts with this ruleset ('builtin' ok)")
    p.add_argument("--json", metavar="PATH", help="also write the report as JSON (- for stdout only)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("rules", help="inspect rule files")
    rsub = p.add_subparsers(dest="action", required=True)
    e = rsub.add_parser("export", help="write the builtin ruleset as a rule file")
    e.add_argument("--output", default=None)
    v = rsub.add_parser("validate", help="validate a rule file")
    v.add_argument("path")
    ls = rsub.add_parser("list", help="list patterns per group")
    ls.add_argument("path", nargs="?", default=None)
    p.set_defaults(func=cmd_rules)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "predictions", None) is None and args.command == "eval" and not args.annotate_with:
        parser.error("eval needs a predictions file or --annotate-with")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"suspan: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
