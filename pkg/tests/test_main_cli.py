"""CLI tests for incremental_grammar.main_cli.

These lock in the output layout and the exit codes of each command: 0 accept/equivalent,
1 reject/different, 2 usage or input errors, 3 an exceeded depth bound. Every test runs
in a temporary working directory so no stray incgram.toml is picked up.
"""

import json

import pytest
from typer.testing import CliRunner

from incremental_grammar import core, grammar
from incremental_grammar.main_cli import EXIT_BOUND, EXIT_REJECT, EXIT_USAGE, app

runner = CliRunner(mix_stderr=False)

CORPUS = str(core.GRAMMAR_DIR / "complex_houses.corpus.json")


@pytest.fixture(autouse=True)
def _in_tmp_path(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def _lines(result) -> list[str]:
    return result.stdout.splitlines()


# --- parse ------------------------------------------------------------------


def test_parse_accepts_with_the_parsing_weight():
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "parse", "Alice loves Bob"])
    assert result.exit_code == 0
    assert _lines(result) == ["0\tAlice<n> loves<n^r s n^l> Bob<n> | 0-1 3-4 => s\t1", "weight\t1"]


def test_parse_rejects_with_exit_1():
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "parse", "loves Alice"])
    assert result.exit_code == EXIT_REJECT
    assert isinstance(result.exception, SystemExit)
    assert _lines(result) == ["weight\t0"]


def test_parse_unknown_word_exits_2():
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "parse", "Alice loves Carol"])
    assert result.exit_code == EXIT_USAGE
    assert isinstance(result.exception, SystemExit)  # UnknownWordError was caught and converted


def test_parse_missing_grammar_exits_2(tmp_path):
    result = runner.invoke(app, ["--grammar", str(tmp_path / "absent.grammar"), "parse", "a"])
    assert result.exit_code == EXIT_USAGE


def test_zero_depth_bound_is_a_usage_error():
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "--depth-bound", "0", "parse", "Alice loves Bob"])
    assert result.exit_code == EXIT_USAGE


def test_parse_without_a_grammar_exits_2():
    result = runner.invoke(app, ["parse", "Alice loves Bob"])
    assert result.exit_code == EXIT_USAGE


def test_parse_json():
    result = runner.invoke(app, ["--grammar", "complex_houses", "--format", "json", "parse", "Complex houses students"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["sentence"] == ["Complex", "houses", "students"]
    assert data["parsings"] == [{"state": "s(np(Complex) vp(tv(houses) np(students)))", "weight": "1"}]
    assert data["accepted"] is True


def test_parse_dot():
    result = runner.invoke(app, ["--grammar", "complex_houses", "--format", "dot", "parse", "Complex houses students"])
    assert result.exit_code == 0
    assert result.stdout.startswith("digraph parse0 {")


def test_depth_bound_exceeded_exits_3(tmp_path, cyclic_text):
    path = tmp_path / "cyclic.grammar"
    path.write_text(cyclic_text, encoding="utf-8")
    result = runner.invoke(app, ["--grammar", str(path), "--depth-bound", "3", "parse", "a"])
    assert result.exit_code == EXIT_BOUND
    assert isinstance(result.exception, SystemExit)


def test_parse_runtime_error_exits_2(monkeypatch):
    def explode(*args, **kwargs):
        raise RuntimeError("closure blew up")

    monkeypatch.setattr(grammar, "enumerate_parsings", explode)
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "parse", "Alice loves Bob"])
    assert result.exit_code == EXIT_USAGE
    assert isinstance(result.exception, SystemExit)


# --- step -------------------------------------------------------------------


def test_step_prints_each_frontier():
    result = runner.invoke(app, ["--grammar", "complex_houses", "step", "Complex houses"])
    assert result.exit_code == 0
    lines = _lines(result)
    assert lines[0] == "start: 1 state(s)"
    assert "after 'Complex': 3 state(s)" in lines
    assert "  np(Complex)\t1" in lines
    assert lines[-1] == "acceptance\t0"


def test_step_json():
    result = runner.invoke(app, ["--grammar", "complex_houses", "--format", "json", "step", "students"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert [frontier["word"] for frontier in data["frontiers"]] == ["", "students"]
    assert data["steps"][0][0]["word"] == "students"


def test_step_has_no_dot_output():
    result = runner.invoke(app, ["--grammar", "complex_houses", "--format", "dot", "step", "Complex"])
    assert result.exit_code == EXIT_USAGE


# --- language ---------------------------------------------------------------


def test_language_lists_short_sentences():
    result = runner.invoke(app, ["--grammar", "complex_houses", "--max-len", "2", "language"])
    assert result.exit_code == 0
    assert _lines(result) == [
        "Complex houses",
        "Complex disappoint",
        "houses houses",
        "houses disappoint",
        "students houses",
        "students disappoint",
    ]


def test_language_json():
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "--max-len", "3", "--format", "json", "language"])
    assert result.exit_code == 0
    assert ["Alice", "loves", "Bob"] in json.loads(result.stdout)


# --- equiv ------------------------------------------------------------------


def test_grammar_is_equivalent_to_itself():
    result = runner.invoke(app, ["--grammar", "complex_houses", "--max-len", "3", "equiv", "complex_houses"])
    assert result.exit_code == 0
    assert _lines(result) == ["language_equivalent\ttrue", "equivalent\ttrue"]


def test_extra_rule_is_reported_with_a_counterexample(tmp_path, extra_rule_text):
    path = tmp_path / "extra.grammar"
    path.write_text(extra_rule_text, encoding="utf-8")
    result = runner.invoke(app, ["--grammar", "complex_houses", "--max-len", "3", "equiv", str(path)])
    assert result.exit_code == EXIT_REJECT
    assert "counterexample\tdisappoint houses\t0 vs 1" in _lines(result)
    assert "equivalent\tfalse" in _lines(result)


def test_merging_morphism_is_a_boolean_homomorphism(tmp_path, split_text):
    path = tmp_path / "split.grammar"
    path.write_text(split_text, encoding="utf-8")
    morphism_file = tmp_path / "merge.toml"
    morphism_file.write_text('[objects]\niv = "itv"\n', encoding="utf-8")
    args = ["--grammar", str(path), "--semiring", "bool", "--max-len", "3", "--format", "json"]
    args += ["equiv", "complex_houses", "--morphism", str(morphism_file), "--word-depth", "2"]
    result = runner.invoke(app, args)
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["weight_preserving"] is True
    assert report["homomorphism"] is True
    assert report["bisimilar"] is True
    assert report["equivalent"] is True


def test_equiv_with_a_missing_morphism_file_exits_2(tmp_path):
    args = ["--grammar", "complex_houses", "equiv", "complex_houses", "--morphism", str(tmp_path / "absent.toml")]
    assert runner.invoke(app, args).exit_code == EXIT_USAGE


# --- fit --------------------------------------------------------------------


def test_fit_the_bundled_corpus(tmp_path):
    output = tmp_path / "fitted.json"
    result = runner.invoke(app, ["--grammar", "complex_houses", "fit", CORPUS, "--output", str(output)])
    assert result.exit_code == 0
    lines = _lines(result)
    assert lines[0] == "rows_used\t6"
    assert lines[2] == "rank_deficient\ttrue"
    weights = json.loads(output.read_text(encoding="utf-8"))
    assert weights["itv -> houses"] == 1.0
    assert len(weights) == 11


def test_fit_json_without_output_prints_the_weights(tmp_path):
    output = tmp_path / "fitted.json"
    to_file = runner.invoke(app, ["--grammar", "complex_houses", "fit", CORPUS, "--output", str(output)])
    assert to_file.exit_code == 0
    result = runner.invoke(app, ["--grammar", "complex_houses", "--format", "json", "fit", CORPUS])
    assert result.exit_code == 0
    assert result.stdout == output.read_text(encoding="utf-8")
    assert json.loads(result.stdout)["itv -> houses"] == 1.0


def test_fit_json_with_output_prints_the_report(tmp_path):
    output = tmp_path / "fitted.json"
    args = ["--grammar", "complex_houses", "--format", "json", "fit", CORPUS, "--output", str(output)]
    result = runner.invoke(app, args)
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["rows_used"] == 6
    assert report["weights"] == json.loads(output.read_text(encoding="utf-8"))


def test_fit_missing_corpus_exits_2(tmp_path):
    result = runner.invoke(app, ["--grammar", "complex_houses", "fit", str(tmp_path / "absent.json")])
    assert result.exit_code == EXIT_USAGE


# --- render and automaton -----------------------------------------------------


def test_render_a_parsing():
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "render", "Alice loves Bob"])
    assert result.exit_code == 0
    assert result.stdout.startswith("digraph parse {")


def test_render_index_out_of_range_exits_2():
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "render", "Alice loves Bob", "--index", "5"])
    assert result.exit_code == EXIT_USAGE


def test_automaton_text():
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "automaton", "--word-depth", "1"])
    assert result.exit_code == 0
    states = [line for line in _lines(result) if line.startswith("q") and "\t" in line]
    assert len(states) == 7
    assert states[0] == "q0\tε\t0"


def test_automaton_dot():
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "--format", "dot", "automaton"])
    assert result.exit_code == 0
    assert result.stdout.startswith("digraph automaton {")


# --- weights ----------------------------------------------------------------


def test_weights_export():
    result = runner.invoke(app, ["--grammar", "complex_houses", "weights", "export"])
    assert result.exit_code == 0
    assert len(json.loads(result.stdout)) == 11


def test_weights_import_rewrites_the_grammar(tmp_path):
    weights_file = tmp_path / "weights.json"
    weights_file.write_text(json.dumps({"Alice : n": 0.5}), encoding="utf-8")
    output = tmp_path / "halved.grammar"
    result = runner.invoke(
        app, ["--grammar", "alice_loves_bob", "weights", "import", str(weights_file), "--output", str(output)]
    )
    assert result.exit_code == 0
    text = output.read_text(encoding="utf-8")
    assert "word: Alice : n @ 0.5" in text
    assert "word: Bob : n @ 1" in text


def test_weights_import_unknown_generator_exits_2(tmp_path):
    weights_file = tmp_path / "weights.json"
    weights_file.write_text(json.dumps({"Carol : n": 0.5}), encoding="utf-8")
    result = runner.invoke(app, ["--grammar", "alice_loves_bob", "weights", "import", str(weights_file)])
    assert result.exit_code == EXIT_USAGE


def test_weights_flag_reweighs_parsings(tmp_path):
    weights_file = tmp_path / "weights.json"
    weights_file.write_text(json.dumps({"Alice : n": 0.5, "Bob : n": 0.5}), encoding="utf-8")
    args = ["--grammar", "alice_loves_bob", "--weights", str(weights_file), "parse", "Alice loves Bob"]
    result = runner.invoke(app, args)
    assert result.exit_code == 0
    assert _lines(result)[-1] == "weight\t0.25"


# --- configuration ----------------------------------------------------------


def test_init_config_creates_the_file(tmp_path):
    result = runner.invoke(app, ["init-config"])
    assert result.exit_code == 0
    assert (tmp_path / core.DEFAULT_CONFIG_FILE).is_file()


def test_init_config_existing_file_without_force_exits_2(tmp_path):
    assert runner.invoke(app, ["init-config"]).exit_code == 0
    result = runner.invoke(app, ["init-config"])
    assert result.exit_code == EXIT_USAGE
    assert isinstance(result.exception, SystemExit)
    assert runner.invoke(app, ["init-config", "--force"]).exit_code == 0


def test_config_file_supplies_the_grammar(tmp_path):
    (tmp_path / core.DEFAULT_CONFIG_FILE).write_text('grammar = "alice_loves_bob"\n', encoding="utf-8")
    result = runner.invoke(app, ["parse", "Alice loves Bob"])
    assert result.exit_code == 0


def test_flags_override_the_config_file(tmp_path):
    config = tmp_path / "other.toml"
    config.write_text('grammar = "fishing"\nmax_len = 1\n', encoding="utf-8")
    result = runner.invoke(app, ["--config", str(config), "--grammar", "complex_houses", "--max-len", "2", "language"])
    assert result.exit_code == 0
    assert len(_lines(result)) == 6


def test_bad_config_value_exits_2(tmp_path):
    config = tmp_path / "bad.toml"
    config.write_text('max_len = "four"\n', encoding="utf-8")
    result = runner.invoke(app, ["--config", str(config), "--grammar", "complex_houses", "language"])
    assert result.exit_code == EXIT_USAGE
    assert isinstance(result.exception, SystemExit)


def test_malformed_config_exits_2(tmp_path):
    config = tmp_path / "bad.toml"
    config.write_text("max_len = \n", encoding="utf-8")
    result = runner.invoke(app, ["--config", str(config), "language"])
    assert result.exit_code == EXIT_USAGE


# --- determinism ------------------------------------------------------------


@pytest.mark.parametrize(
    "args",
    [
        ["--grammar", "fishing", "parse", "people fish fish with people"],
        ["--grammar", "fishing", "--format", "json", "step", "people fish"],
        ["--grammar", "fishing", "--max-len", "3", "language"],
        ["--grammar", "complex_houses", "--max-len", "2", "equiv", "complex_houses"],
        ["--grammar", "complex_houses", "--format", "json", "fit", CORPUS],
        ["--grammar", "alice_loves_bob", "render", "Alice loves Bob"],
        ["--grammar", "alice_loves_bob", "--format", "dot", "automaton"],
        ["--grammar", "fishing", "weights", "export"],
    ],
)
def test_repeated_runs_are_byte_identical(args):
    first = runner.invoke(app, args)
    second = runner.invoke(app, args)
    assert first.exit_code == 0
    assert first.stdout == second.stdout
