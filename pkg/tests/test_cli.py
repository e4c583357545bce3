import json
from importlib import resources
import subprocess
import sys

import pytest

from impmodels.cli import main

DATA_SEEDS = str(resources.files("impmodels").joinpath("data/seeds-b2.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_exit_codes(capsys, tmp_path):
    assert run(capsys, "validate", "--algebra", "b2.alg")[0] == 0
    code, out, _ = run(capsys, "validate", "--algebra", "bad-separator.alg")
    assert code == 1 and "separator-contains-K: ('1',)" in out
    bad = tmp_path / "bad.alg"
    bad.write_text("{")
    code, _, err = run(capsys, "validate", "--algebra", str(bad))
    assert code == 2 and "AlgebraFormatError" in err


def test_eval_reports_value_and_scope(capsys):
    code, out, _ = run(capsys, "eval", "forall x. x = x")
    assert code == 0
    assert "value: 1 (top)" in out and "valid (relative to U, |U| = 3" in out
    code, out, _ = run(capsys, "eval", "bot")
    assert code == 1 and "not valid" in out


def test_eval_uses_free_variables_as_context(capsys):
    code, out, _ = run(capsys, "eval", "--format", "machine", "y in x | x = y")
    doc = json.loads(out)
    assert doc["result"]["ctx"] == ["x", "y"]
    code, out, _ = run(capsys, "eval", "--ctx", "y,x", "--format", "machine", "x = y")
    assert json.loads(out)["result"]["ctx"] == ["y", "x"]


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "--variant", "krivine", "--algebra", "h3", "forall x. x = x")
    assert code == 1 and "NotClassical" in err
    code, _, err = run(capsys, "eval", "forall x. x =")
    assert code == 2 and "FormulaSyntaxError" in err
    code, _, err = run(capsys, "eval", "--ctx", "x", "x in y")
    assert code == 2 and "ScopeError" in err
    code, _, err = run(capsys, "universe", "stats", "--depth", "4", "--cap", "1000")
    assert code == 2 and "UniverseTooLarge" in err
    code, _, err = run(capsys, "universe", "stats", "--cap", "0")
    assert code == 2


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["nosuch"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["eval", "--variant", "other", "bot"])
    assert info.value.code == 2


def test_variants_through_cli(capsys):
    code, out, _ = run(capsys, "eval", "--variant", "krivine", "--depth", "3",
                       "forall x. exists y. x in y | ~x in y")
    assert code == 0
    code, out, _ = run(capsys, "compare", "--variant", "join", "--algebra", "h3")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "compare", "--algebra", "bool4")
    assert code == 0 and "involutive_krivine" in out


def test_compare_with_corpus_file(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps(["x in y", "forall x. x sub x"]))
    code, out, _ = run(capsys, "compare", "--variant", "join", "--algebra", "pca-b2",
                       "--corpus", str(p), "--format", "machine")
    doc = json.loads(out)
    assert code == 0 and len(doc["result"]["reports"][0]["formulas"]) == 2


def test_realizers_and_axioms(capsys):
    code, out, _ = run(capsys, "realizers", "--algebra", "h3")
    assert code == 0 and out.count("ok   ") >= 6
    code, out, _ = run(capsys, "axioms")
    assert code == 0 and "component checks only" in out


def test_universe_stats(capsys):
    code, out, _ = run(capsys, "universe", "stats", "--depth", "3")
    assert code == 0 and out.startswith("size: 27")


def test_curated_universe_from_seed_file(capsys):
    code, out, _ = run(capsys, "universe", "stats", "--seeds", DATA_SEEDS, "--format", "machine")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["provenance"]["kind"] == "curated"
    assert doc["universe"]["size"] == 13


def test_machine_output_embeds_digest_and_provenance(capsys):
    code, out, _ = run(capsys, "axioms", "--format", "machine")
    doc = json.loads(out)
    assert len(doc["config_digest"]) == 64
    assert doc["universe"]["provenance"] == {"algebra": "B2", "depth": 2, "kind": "exhaustive"}
    assert doc["scope"] == "relative to U"
    _, other, _ = run(capsys, "axioms", "--format", "machine", "--algebra", "h3")
    assert json.loads(other)["config_digest"] != doc["config_digest"]


def test_machine_output_is_identical_in_process(capsys):
    outs = [run(capsys, "axioms", "--format", "machine")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_console_script_runs_as_module():
    r = subprocess.run([sys.executable, "-m", "impmodels.cli", "validate"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("B2: valid")
