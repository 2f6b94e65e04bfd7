# -*- coding: utf-8 -*-
"""
运行配置 RunConfig（pydantic）：命令行参数 > 环境变量（支持 .env）> 默认值。

.env / 环境变量（均可选）：
- SYLLOGOS_MAX_UNIVERSE=6     集合引擎穷举的论域上限
- SYLLOGOS_MAX_TOTAL=40       区间引擎区域向量的总数上限
- SYLLOGOS_EPSILON=1/10       条件解释中 most / few 的 ε
- SYLLOGOS_QUANTIFIERS=...    具名量词 JSON 路径
- SYLLOGOS_LOG_DIR=logs       设置后额外写 logs/syllogos.log
"""
from __future__ import annotations

import logging
import os
from fractions import Fraction
from typing import Any, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.conditional_engine import Informativeness
from src.core_model import ImportPolicy, ImportScope, ProbQuantifierConfig, as_fraction
from src.errors import InvariantViolation
from src.numeric_engine import DEFAULT_ALPHA_LEVELS
from src.quantifier_config import QuantifierTable, load_quantifier_config

logger = logging.getLogger("config")

Engine = Literal["set", "interval", "fuzzy", "exceptive", "conditional"]
DEFAULT_ORDER_TEXT = "all>most>few>some>no>some_not"


class RunConfig(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    engine: Engine = "set"
    import_policy: ImportPolicy = ImportPolicy.NO_IMPORT
    import_scope: ImportScope = ImportScope.SUBJECTS_ONLY
    max_universe: int = Field(6, ge=1)
    max_total: int = Field(40, ge=1)
    epsilon: Fraction = Fraction(1, 10)
    quantifiers: Optional[str] = None
    output: Literal["text", "json"] = "text"
    cards: dict[str, int] = Field(default_factory=dict)
    alpha_levels: tuple[Fraction, ...] = DEFAULT_ALPHA_LEVELS
    progress: bool = False
    ker_sup: bool = False
    informativeness: str = DEFAULT_ORDER_TEXT

    @field_validator("epsilon", mode="before")
    @classmethod
    def _epsilon(cls, v: Any) -> Fraction:
        eps = as_fraction(v)
        if not (Fraction(0) < eps < Fraction(1, 2)):
            raise ValueError(f"epsilon must lie in (0, 1/2), got {eps}")
        return eps

    @field_validator("alpha_levels", mode="before")
    @classmethod
    def _alphas(cls, v: Any) -> tuple[Fraction, ...]:
        if isinstance(v, str):
            v = [x for x in v.split(",") if x.strip()]
        alphas = tuple(as_fraction(x) for x in v)
        if not alphas or any(not (Fraction(0) < a <= Fraction(1)) for a in alphas):
            raise ValueError("alpha levels must be non-empty and lie in (0,1]")
        return tuple(sorted(set(alphas)))

    @field_validator("cards")
    @classmethod
    def _cards(cls, v: dict[str, int]) -> dict[str, int]:
        for term, n in v.items():
            if n < 0:
                raise ValueError(f"cardinality of {term!r} must be >= 0")
        return v

    @field_validator("informativeness")
    @classmethod
    def _order(cls, v: str) -> str:
        Informativeness.parse(v)
        return v

    def prob_config(self) -> ProbQuantifierConfig:
        return ProbQuantifierConfig(self.epsilon)

    def order(self) -> Informativeness:
        return Informativeness.parse(self.informativeness)

    def quantifier_table(self) -> QuantifierTable:
        return load_quantifier_config(self.quantifiers)


def parse_card(text: str) -> tuple[str, int]:
    """'students=100' -> ('students', 100)"""
    term, sep, value = text.rpartition("=")
    if not sep or not term.strip():
        raise InvariantViolation(f"--card expects TERM=N, got {text!r}")
    try:
        n = int(value)
    except ValueError:
        raise InvariantViolation(f"--card expects an integer cardinality, got {value!r}") from None
    return " ".join(term.split()).lower(), n


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"环境变量 {name}={raw!r} 不是整数，使用默认值")
        return None


def _env_fraction(name: str) -> Optional[Fraction]:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return None
    try:
        return as_fraction(raw)
    except InvariantViolation:
        logger.warning(f"环境变量 {name}={raw!r} 不是有理数，使用默认值")
        return None


def build_run_config(**overrides: Any) -> RunConfig:
    """合并默认值、环境变量与显式参数（值为 None 的参数视为未给出）。"""
    load_dotenv()
    values: dict[str, Any] = {}
    env_values = {
        "max_universe": _env_int("SYLLOGOS_MAX_UNIVERSE"),
        "max_total": _env_int("SYLLOGOS_MAX_TOTAL"),
        "epsilon": _env_fraction("SYLLOGOS_EPSILON"),
        "quantifiers": os.getenv("SYLLOGOS_QUANTIFIERS") or None,
    }
    values.update({k: v for k, v in env_values.items() if v is not None})
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig(**values)
    except ValidationError as e:
        err = e.errors()[0]
        field = ".".join(str(x) for x in err.get("loc", ()))
        raise InvariantViolation(f"invalid setting {field}: {err.get('msg')}") from e
