import json
import logging
import os

import pytest

from src.cli import main

CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "corpus")


def corpus(name):
    return os.path.join(CORPUS, name)


@pytest.fixture(autouse=True)
def restore_logging(monkeypatch):
    for k in ("SYLLOGOS_MAX_UNIVERSE", "SYLLOGOS_MAX_TOTAL", "SYLLOGOS_EPSILON", "SYLLOGOS_QUANTIFIERS", "SYLLOGOS_LOG_DIR"):
        monkeypatch.delenv(k, raising=False)
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for h in root.handlers:
        if h not in handlers:
            h.close()
    root.handlers = handlers
    root.setLevel(level)


def test_parse_prints_canonical_statements(capsys):
    assert main(["parse", corpus("interval.syl")]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == [
        "[0.3,0.5] single people are young",
        "[0.7,0.9] single people are students",
        "[0,0.5] single people are young and students",
    ]


def test_parse_json(capsys):
    assert main(["parse", corpus("exceptive.syl"), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload[0]["statement"]["q"] == {"kind": "all_but", "k": 0}
    assert payload[-1]["text"] == "All but 81 young people are tall"


def test_check_valid_and_counter(capsys):
    assert main(["check", corpus("barbara.syl")]) == 0
    assert "valid (bound 6)" in capsys.readouterr().out
    assert main(["check", corpus("barbari.syl")]) == 1
    out = capsys.readouterr().out
    assert "countermodel" in out and "nt" in out
    assert main(["check", corpus("barbari.syl"), "--import", "explicit"]) == 0


def test_check_json_counter_model(capsys):
    assert main(["check", corpus("import_detective.syl"), "--json"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "counter"
    assert payload["counter_model"]["extensions"]["consulting detective"] == []


def test_check_rejects_other_engines(capsys):
    assert main(["check", corpus("barbara.syl"), "--engine", "interval"]) == 2
    assert "error:" in capsys.readouterr().err


def test_conclude_interval(capsys):
    assert main(["conclude", corpus("interval.syl"), "--engine", "interval"]) == 0
    assert capsys.readouterr().out.strip() == "[0,0.5] single people are young and students"


def test_conclude_fuzzy_table(capsys):
    assert main(["conclude", corpus("fuzzy.syl"), "--engine", "fuzzy", "--alpha", "0.5,1"]) == 0
    out = capsys.readouterr().out
    assert "students are young and single" in out
    assert "alpha" in out and "0.36" in out and "0.81" in out


def test_conclude_exceptive_both_modes(capsys):
    args = ["conclude", corpus("exceptive.syl"), "--engine", "exceptive", "--card", "students=100"]
    assert main(args) == 0
    out = capsys.readouterr().out
    assert "all but 81 young people are tall" in out
    assert "[0,19]" in out
    assert "outside the sound range" in out


def test_conclude_exceptive_needs_a_card(capsys):
    assert main(["conclude", corpus("exceptive.syl"), "--engine", "exceptive"]) == 2
    assert "--card" in capsys.readouterr().err


def test_conclude_conditional_trace(capsys):
    assert main(["conclude", corpus("conditional.syl"), "--engine", "conditional"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "Some young people are tall"
    assert lines[1].startswith("min-heuristic:")
    assert lines[2].startswith("attachment-heuristic:")


def test_compare_agreement(capsys):
    assert main(["compare", corpus("barbara.syl")]) == 0
    out = capsys.readouterr().out
    assert "All Greeks are mortal" in out and "diverge" not in out
    assert main(["compare", corpus("singular.syl"), "--json"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["set"]["verdict"] == "valid"
    assert "error" in payload["conditional"]
    assert payload["agree"] is False


def test_enumerate_json(capsys):
    assert main(["enumerate", "--json", "--max-universe", "5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["valid"] == 15
    assert len(payload["rows"]) == 256


def test_parse_error_reports_a_byte_position(tmp_path, capsys):
    bad = tmp_path / "bad.syl"
    bad.write_text("All a are b\n---\ndouble a are b\n", encoding="utf-8")
    assert main(["check", str(bad)]) == 2
    err = capsys.readouterr().err
    offset = len("All a are b\n---\n")
    assert "parse error" in err and f"byte {offset}" in err


def test_missing_file_and_bad_card(capsys):
    assert main(["parse", "/nonexistent/file.syl"]) == 2
    assert main(["conclude", corpus("exceptive.syl"), "--engine", "exceptive", "--card", "students"]) == 2


def test_log_file(tmp_path, monkeypatch):
    monkeypatch.setenv("SYLLOGOS_LOG_DIR", str(tmp_path / "logs"))
    assert main(["check", corpus("barbara.syl")]) == 0
    path = tmp_path / "logs" / "syllogos.log"
    assert path.exists()
    assert "INFO" in path.read_text(encoding="utf-8")


def test_epsilon_changes_the_conditional_bands(tmp_path, capsys):
    syl = tmp_path / "most.syl"
    syl.write_text("Most students are tall\nAll young people are students\n", encoding="utf-8")
    assert main(["conclude", str(syl), "--engine", "conditional", "--epsilon", "1/20"]) == 0
    narrow = capsys.readouterr().out
    assert "band: Most students are tall: 0.95 ≤ P(tall|students) < 1" in narrow
    assert "band: All young people are students: P(students|young people) = 1" in narrow
    assert main(["conclude", str(syl), "--engine", "conditional", "--epsilon", "2/5"]) == 0
    wide = capsys.readouterr().out
    assert "0.6 ≤ P(tall|students) < 1" in wide
    assert narrow != wide


def test_conclude_conditional_json_bands(tmp_path, capsys):
    syl = tmp_path / "most.syl"
    syl.write_text("Most students are tall\nAll young people are students\n", encoding="utf-8")
    assert main(["conclude", str(syl), "--engine", "conditional", "--epsilon", "2/5", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["epsilon"] == "0.4"
    assert [b["kind"] for b in payload["bands"]][:2] == ["most_band", "eq1"]
    assert payload["bands"][0]["band"] == "0.6 ≤ P(tall|students) < 1"
    assert len(payload["bands"]) == 3


def test_compare_reports_bands(tmp_path, capsys):
    syl = tmp_path / "most.syl"
    syl.write_text("Most students are tall\nAll young people are students\n---\nMost young people are tall\n", encoding="utf-8")
    main(["compare", str(syl), "--epsilon", "1/20", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert payload["epsilon"] == "0.05"
    bands = {b["text"]: b["band"] for b in payload["conditional"]["bands"]}
    assert bands["Most students are tall"] == "0.95 ≤ P(tall|students) < 1"
    main(["compare", str(syl), "--epsilon", "1/20"])
    assert "band: Most students are tall" in capsys.readouterr().out


def test_compare_barbari_diverges_on_the_stronger_conclusion(capsys):
    assert main(["compare", corpus("barbari.syl"), "--json"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["conditional"]["conclusion"]["q"] == "all"
    assert payload["agree"] is False


def test_conclude_interval_kersup(tmp_path, capsys):
    syl = tmp_path / "most.syl"
    syl.write_text("Most students are young\nMost students are single\n", encoding="utf-8")
    assert main(["conclude", str(syl), "--engine", "interval", "--ker-sup"]) == 0
    out = capsys.readouterr().out
    assert "[0,0.2,0.9,1] students are" in out
    assert "(kernel [0.2,0.9], support [0,1])" in out
    assert main(["conclude", str(syl), "--engine", "interval", "--ker-sup", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kernel"]["method"] == "frechet"
    assert payload["conclusion"]["q"]["kind"] == "trapezoid"
