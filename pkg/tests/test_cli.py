import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from golden import SAMPLE_SENTENCES
from suspan.cli import RULESET_ENV, main
from suspan.model import SuGroup

TEXT = " ".join(t for t, _, _ in SAMPLE_SENTENCES)


@pytest.fixture
def sample(tmp_path):
    p = tmp_path / "sample.txt"
    p.write_text(TEXT, encoding="utf-8")
    return p


@pytest.fixture(autouse=True)
def no_env(monkeypatch):
    monkeypatch.delenv(RULESET_ENV, raising=False)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_annotate_jsonl_schema(capsys, sample):
    code, out, _ = run(capsys, "annotate", "--input", sample, "--output-format", "jsonl")
    assert code == 0
    schema = json.loads(resources.files("suspan").joinpath("data/output.schema.json").read_text())
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["su_label"] for r in rows] == ["SU", "NonSU", "SU", "SU"]
    assert [r["authorial"] for r in rows] == ["authors", None, "authors", "previous"]
    for r in rows:
        jsonschema.validate(r, schema)


def test_annotate_json_summary(capsys, sample, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "annotate", "--input", sample, "--output-format", "json", "--output", dest)
    assert code == 0 and out == ""
    obj = json.loads(dest.read_text())
    assert obj["summary"]["labels"] == {"SU": 3, "NonSU": 1}
    assert obj["document_id"] == "sample"


def test_annotate_tty_and_html(capsys, sample):
    code, out, _ = run(capsys, "annotate", "--input", sample, "--output-format", "tty", "--color", "never")
    assert code == 0 and out.startswith("[0] SU (authors): [It is possible that]")
    code, out, _ = run(capsys, "annotate", "--input", sample, "--output-format", "html")
    assert code == 0 and out.startswith("<!DOCTYPE html>") and "<mark" in out
    code, out, _ = run(capsys, "annotate", "--input", sample, "--color", "always")
    assert "\x1b[" in out


def test_annotate_conllu(capsys, tmp_path):
    p = tmp_path / "x.conllu"
    p.write_text("# text = It may vary.\n1\tIt\tit\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
                 "2\tmay\tmay\tAUX\t_\t_\t3\taux\t_\t_\n3\tvary\tvary\tVERB\t_\t_\t0\troot\t_\tSpaceAfter=No\n"
                 "4\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_\n\n", encoding="utf-8")
    code, out, _ = run(capsys, "annotate", "--input", p, "--input-format", "conllu", "--output-format", "jsonl")
    assert code == 0 and json.loads(out)["spans"][0]["text"] == "may vary"


def test_bad_conllu_exit_3(capsys, tmp_path):
    p = tmp_path / "bad.conllu"
    p.write_text("1\tIt\tit\n\n")
    code, _, err = run(capsys, "annotate", "--input", p, "--input-format", "conllu")
    assert code == 3 and "line 1" in err


def test_missing_input_exit_3(capsys, tmp_path):
    assert run(capsys, "annotate", "--input", tmp_path / "nope.txt")[0] == 3


def test_bad_flag_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["annotate", "--input", "-", "--output-format", "xml"])
    assert e.value.code == 2


def test_invalid_ruleset_exit_4(capsys, tmp_path, sample):
    p = tmp_path / "r.json"
    rs = {"version": "x", "groups": [{"group": "Modality", "patterns": [
        {"id": "a", "tokens": [{"LOWER": "may"}]}, {"id": "a", "tokens": [{"LOWER": "might"}]}]}],
        "cancellations": [], "authorial": {}}
    p.write_text(json.dumps(rs))
    code, _, err = run(capsys, "rules", "validate", p)
    assert code == 4 and "DUPLICATE_ID" in err
    assert run(capsys, "annotate", "--input", sample, "--ruleset", p)[0] == 3


def test_env_ruleset(capsys, tmp_path, sample, monkeypatch):
    p = tmp_path / "only-negation.json"
    p.write_text(json.dumps({"version": "neg-only", "groups": [
        {"group": "Negation", "patterns": [{"id": "n-1", "tokens": [{"LOWER": "no"}]}]}],
        "cancellations": [], "authorial": {}}))
    monkeypatch.setenv(RULESET_ENV, str(p))
    code, out, _ = run(capsys, "annotate", "--input", sample, "--output-format", "jsonl")
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["su_label"] for r in rows] == ["NonSU", "SU", "NonSU", "NonSU"]


def test_rules_export_validate_list(capsys, tmp_path):
    dest = tmp_path / "builtin.json"
    assert run(capsys, "rules", "export", "--output", dest)[0] == 0
    code, out, _ = run(capsys, "rules", "validate", dest)
    assert code == 0 and "0 errors, 0 warnings" in out
    code, out, _ = run(capsys, "rules", "list")
    headings = [line for line in out.splitlines() if not line.startswith(" ")]
    assert [h.split(" (")[0] for h in headings[:12]] == [g.value for g in SuGroup]
    assert headings[12].startswith("cancellations")


def test_rules_validate_warnings_only(capsys, tmp_path):
    p = tmp_path / "w.json"
    p.write_text(json.dumps({"version": "w", "groups": [
        {"group": "Modality", "patterns": [{"id": "m", "tokens": [{"LOWER": "may"}]}]}],
        "cancellations": [], "authorial": {}}))
    code, out, _ = run(capsys, "rules", "validate", p)
    assert code == 0 and "EMPTY_GROUP" in out


def test_rules_validate_syntax_exit_3(capsys, tmp_path):
    p = tmp_path / "s.json"
    p.write_text("{")
    assert run(capsys, "rules", "validate", p)[0] == 3


def test_eval_count_mismatch_exit_3(capsys, tmp_path):
    gold = _gold_file(tmp_path)
    short = tmp_path / "short.jsonl"
    short.write_text(gold.read_text().splitlines()[0] + "\n")
    assert run(capsys, "eval", gold, short)[0] == 3


def _gold_file(tmp_path):
    p = tmp_path / "gold.jsonl"
    p.write_text("".join(json.dumps({"text": t, "su": su, "groups": [], "authorial": a}) + "\n"
                         for t, su, a in SAMPLE_SENTENCES))
    return p


def test_eval_annotate_with_builtin(capsys, tmp_path):
    gold = _gold_file(tmp_path)
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "eval", gold, "--annotate-with", "builtin", "--json", report)
    assert code == 0 and "SU accuracy: 1.000 over 4 records" in out
    d = json.loads(report.read_text())
    assert d["su_accuracy"] == 1.0
    assert d["authorial"] == {"accuracy": 1.0, "support": 3}


def test_eval_self(capsys, tmp_path, sample):
    pred = tmp_path / "pred.jsonl"
    run(capsys, "annotate", "--input", sample, "--output-format", "jsonl", "--output", pred)
    code, out, _ = run(capsys, "eval", pred, pred, "--json", "-")
    d = json.loads(out)
    assert code == 0 and d["su"]["f1"] == 1.0 and d["micro"]["f1"] == 1.0


def test_eval_needs_predictions(capsys, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["eval", str(_gold_file(tmp_path))])
    assert e.value.code == 2


def test_eval_bad_gold_exit_3(capsys, tmp_path):
    p = tmp_path / "g.jsonl"
    p.write_text("{oops\n")
    code, _, err = run(capsys, "eval", p, p)
    assert code == 3 and "line 1" in err


def test_module_entry_point_stdin():
    proc = subprocess.run([sys.executable, "-m", "suspan", "annotate", "--input", "-", "--output-format", "jsonl"],
                          input="There may also be behavioral effects.", capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["spans"][0]["group"] == "Modality"


def test_empty_stdin():
    proc = subprocess.run([sys.executable, "-m", "suspan", "annotate", "--input", "-", "--output-format", "jsonl"],
                          input="", capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == ""
