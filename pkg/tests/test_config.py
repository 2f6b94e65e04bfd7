import json
from fractions import Fraction

import pytest

from src.config import RunConfig, build_run_config, parse_card
from src.core_model import SOME, ImportPolicy, Quantifier, QuantifierKind
from src.errors import InvariantViolation, Unsupported
from src.quantifier_config import (
    QuantifierTable,
    SetSemantics,
    load_quantifier_config,
    parse_quantifier_config,
)

ENV_KEYS = ("SYLLOGOS_MAX_UNIVERSE", "SYLLOGOS_MAX_TOTAL", "SYLLOGOS_EPSILON", "SYLLOGOS_QUANTIFIERS")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for k in ENV_KEYS:
        monkeypatch.delenv(k, raising=False)


def test_defaults():
    cfg = build_run_config()
    assert cfg.engine == "set"
    assert cfg.import_policy == ImportPolicy.NO_IMPORT
    assert cfg.max_universe == 6 and cfg.max_total == 40
    assert cfg.epsilon == Fraction(1, 10)
    assert cfg.order().order[0] == QuantifierKind.ALL


def test_env_then_overrides(monkeypatch):
    monkeypatch.setenv("SYLLOGOS_MAX_UNIVERSE", "4")
    monkeypatch.setenv("SYLLOGOS_EPSILON", "0.05")
    cfg = build_run_config()
    assert cfg.max_universe == 4
    assert cfg.prob_config().epsilon == Fraction(1, 20)
    assert build_run_config(max_universe=3, epsilon=None).max_universe == 3


def test_bad_env_value_falls_back(monkeypatch, caplog):
    monkeypatch.setenv("SYLLOGOS_MAX_UNIVERSE", "lots")
    with caplog.at_level("WARNING"):
        cfg = build_run_config()
    assert cfg.max_universe == 6
    assert "SYLLOGOS_MAX_UNIVERSE" in caplog.text


@pytest.mark.parametrize(
    "overrides",
    [
        {"epsilon": "0.6"},
        {"max_universe": 0},
        {"alpha_levels": "0,0.5"},
        {"cards": {"students": -1}},
        {"informativeness": "all>often"},
        {"engine": "modal"},
    ],
)
def test_invalid_settings(overrides):
    with pytest.raises(InvariantViolation) as e:
        build_run_config(**overrides)
    assert "invalid setting" in str(e.value)


def test_alpha_levels_are_sorted_and_unique():
    cfg = RunConfig(alpha_levels="1, 0.5, 1/2")
    assert cfg.alpha_levels == (Fraction(1, 2), Fraction(1))


def test_parse_card():
    assert parse_card("Young  People=100") == ("young people", 100)
    with pytest.raises(InvariantViolation):
        parse_card("students")
    with pytest.raises(InvariantViolation):
        parse_card("students=many")


def test_bundled_quantifier_config():
    table = load_quantifier_config()
    assert table.lookup("most").kernel == (Fraction(3, 5), Fraction(9, 10))
    assert table.semantics == SetSemantics()


def test_quantifier_config_from_env(tmp_path, monkeypatch):
    path = tmp_path / "q.json"
    path.write_text(
        json.dumps(
            {
                "_comment": "ignored",
                "thresholds": {"few": "1/4"},
                "most": {"kind": "interval", "lo": "0.5", "hi": 1},
            }
        ),
        encoding="utf-8",
    )
    monkeypatch.setenv("SYLLOGOS_QUANTIFIERS", str(path))
    table = build_run_config().quantifier_table()
    assert table.semantics.few == Fraction(1, 4)
    assert table.lookup("most").kind == QuantifierKind.INTERVAL
    assert table.as_trapezoid(table.lookup("most")).kernel == (Fraction(1, 2), Fraction(1))
    assert table.lookup("few").kind == QuantifierKind.TRAPEZOID


def test_bad_quantifier_configs(tmp_path):
    with pytest.raises(InvariantViolation):
        parse_quantifier_config({"few": {"kind": "trapezoid", "a": 0, "c": "0.8", "d": "0.12", "b": "0.2"}})
    with pytest.raises(InvariantViolation):
        parse_quantifier_config({"few": {"kind": "interval", "lo": 0}})
    with pytest.raises(InvariantViolation):
        load_quantifier_config(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(InvariantViolation):
        load_quantifier_config(str(broken))


def test_table_readings():
    table = QuantifierTable()
    assert table.as_interval(Quantifier.of("most")) == Quantifier.interval("0.5", 1)
    assert table.as_trapezoid(Quantifier.of("all")).kernel == (1, 1)
    with pytest.raises(Unsupported):
        table.as_trapezoid(SOME)
    with pytest.raises(Unsupported):
        table.as_interval(Quantifier.all_but(2))


def test_interval_readings_from_config():
    table = load_quantifier_config()
    assert table.as_interval(Quantifier.of("few")) == Quantifier.interval(0, "0.15")
    assert table.as_interval(Quantifier.of("almost_all")) == Quantifier.interval("0.95", 1)
    custom = parse_quantifier_config({"intervals": {"few": {"lo": 0, "hi": "0.1"}}})
    assert custom.as_interval(Quantifier.of("few")) == Quantifier.interval(0, "0.1")
    assert custom.as_interval(Quantifier.of("almost_all")) == Quantifier.interval("0.95", 1)
    with pytest.raises(InvariantViolation):
        parse_quantifier_config({"intervals": ["few"]})
