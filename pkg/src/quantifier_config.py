# -*- coding: utf-8 -*-
"""
具名量词配置（模糊 / 区间引擎使用）与集合语义阈值：
- JSON 文件：名称 -> {"kind":"trapezoid","a","c","d","b"} 或 {"kind":"interval","lo","hi"}
- 保留键 "thresholds"：{"few","almost_all","many"} 覆盖 SetSemantics 默认阈值
- 保留键 "intervals"：名称 -> {"lo","hi"}，区间三段论的具名区间读法（few [0,0.15]、almost all [0.95,1]），
  未列出的量词取模糊读法的支撑集
- 以 "_" 开头的键视为注释
- 路径优先级：显式参数 > 环境变量 SYLLOGOS_QUANTIFIERS > config/quantifiers.json > 内置默认

数值可写成 0.3 / "3/10" / {"num":3,"den":10}。
"""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal, Mapping, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from src.core_model import (
    Quantifier,
    QuantifierKind,
    as_fraction,
    normalize_name,
)
from src.errors import InvariantViolation, Unsupported

logger = logging.getLogger("quantifier_config")

ENV_QUANTIFIERS = "SYLLOGOS_QUANTIFIERS"

# 模糊数 "few" 的原始写法 [0,0.8,0.12,0.2] 不满足 a<=c<=d<=b，这里取 [0,0.08,0.12,0.2]
DEFAULT_NAMED: dict[str, Quantifier] = {
    "almost all": Quantifier.trapezoid("0.95", "0.97", "0.98", "1"),
    "few": Quantifier.trapezoid("0", "0.08", "0.12", "0.2"),
    "most": Quantifier.trapezoid("0.5", "0.6", "0.9", "1"),
    "many": Quantifier.trapezoid("0.4", "0.5", "0.8", "1"),
}

# 区间三段论的具名读法
DEFAULT_INTERVALS: dict[str, Quantifier] = {
    "almost all": Quantifier.interval("0.95", "1"),
    "few": Quantifier.interval("0", "0.15"),
}

_KIND_NAMES = {
    QuantifierKind.ALMOST_ALL: "almost all",
    QuantifierKind.FEW: "few",
    QuantifierKind.MOST: "most",
    QuantifierKind.MANY: "many",
}


def _project_root() -> str:
    return os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))


def default_config_path() -> str:
    return os.path.join(_project_root(), "config", "quantifiers.json")


@dataclass(frozen=True)
class SetSemantics:
    """集合解释下中间量词的阈值（解释性默认值，可配置）。

    few:        |s∩p| <= few·|s|
    almost_all: |s−p| <= almost_all·|s|
    many:       |s∩p| >  many·|s|      （默认与 most 相同）
    """

    few: Fraction = Fraction(1, 5)
    almost_all: Fraction = Fraction(1, 20)
    many: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        for name in ("few", "almost_all", "many"):
            v = as_fraction(getattr(self, name))
            if not (Fraction(0) <= v <= Fraction(1)):
                raise InvariantViolation(f"threshold {name} outside [0,1]: {v}")
            object.__setattr__(self, name, v)


class _RationalModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, extra="forbid")


class NamedQuantifierSpec(_RationalModel):
    kind: Literal["trapezoid", "interval"]
    a: Optional[Fraction] = None
    c: Optional[Fraction] = None
    d: Optional[Fraction] = None
    b: Optional[Fraction] = None
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None

    @field_validator("a", "c", "d", "b", "lo", "hi", mode="before")
    @classmethod
    def _rational(cls, v: Any) -> Optional[Fraction]:
        return None if v is None else as_fraction(v)

    @model_validator(mode="after")
    def _complete(self) -> "NamedQuantifierSpec":
        needed = ("a", "c", "d", "b") if self.kind == "trapezoid" else ("lo", "hi")
        missing = [n for n in needed if getattr(self, n) is None]
        if missing:
            raise ValueError(f"{self.kind} is missing {', '.join(missing)}")
        self.to_quantifier()
        return self

    def to_quantifier(self) -> Quantifier:
        if self.kind == "trapezoid":
            return Quantifier.trapezoid(self.a, self.c, self.d, self.b)
        return Quantifier.interval(self.lo, self.hi)


class IntervalSpec(_RationalModel):
    lo: Fraction
    hi: Fraction

    @field_validator("lo", "hi", mode="before")
    @classmethod
    def _rational(cls, v: Any) -> Fraction:
        return as_fraction(v)

    def to_quantifier(self) -> Quantifier:
        return Quantifier.interval(self.lo, self.hi)


class ThresholdSpec(_RationalModel):
    few: Fraction = Fraction(1, 5)
    almost_all: Fraction = Fraction(1, 20)
    many: Fraction = Fraction(1, 2)

    @field_validator("few", "almost_all", "many", mode="before")
    @classmethod
    def _rational(cls, v: Any) -> Fraction:
        return as_fraction(v)


@dataclass(frozen=True)
class QuantifierTable:
    named: Mapping[str, Quantifier] = field(default_factory=lambda: dict(DEFAULT_NAMED))
    intervals: Mapping[str, Quantifier] = field(default_factory=lambda: dict(DEFAULT_INTERVALS))
    semantics: SetSemantics = field(default_factory=SetSemantics)
    source: str = "<defaults>"

    def lookup(self, name: str) -> Quantifier:
        key = normalize_name(name)
        if key not in self.named:
            raise InvariantViolation(f"unknown named quantifier {name!r} (known: {', '.join(sorted(self.named))})")
        return self.named[key]

    def as_trapezoid(self, q: Quantifier) -> Quantifier:
        """把语句中的量词解析为梯形模糊数（区间视作退化梯形）。"""
        if q.kind == QuantifierKind.TRAPEZOID:
            return q
        if q.kind == QuantifierKind.INTERVAL:
            return Quantifier.trapezoid(q.lo, q.lo, q.hi, q.hi)
        if q.kind == QuantifierKind.ALL:
            return Quantifier.trapezoid(1, 1, 1, 1)
        if q.kind == QuantifierKind.NO:
            return Quantifier.trapezoid(0, 0, 0, 0)
        name = _KIND_NAMES.get(q.kind)
        if name is None:
            raise Unsupported("fuzzy", f"quantifier {q.label()} has no fuzzy reading")
        resolved = self.lookup(name)
        if resolved.kind == QuantifierKind.INTERVAL:
            return Quantifier.trapezoid(resolved.lo, resolved.lo, resolved.hi, resolved.hi)
        return resolved

    def as_interval(self, q: Quantifier) -> Quantifier:
        """区间读法：先查具名区间表，否则取模糊读法的支撑集 Sup_Q；All=[1,1]，No=[0,0]。"""
        if q.kind == QuantifierKind.INTERVAL:
            return q
        name = _KIND_NAMES.get(q.kind)
        if name is not None and name in self.intervals:
            return self.intervals[name]
        try:
            t = self.as_trapezoid(q)
        except Unsupported:
            raise Unsupported("interval", f"quantifier {q.label()} has no interval reading")
        return Quantifier.interval(t.lo, t.hi)


def parse_quantifier_config(data: Mapping[str, Any], source: str = "<memory>") -> QuantifierTable:
    if not isinstance(data, Mapping):
        raise InvariantViolation(f"quantifier config {source}: top level must be an object")
    named = dict(DEFAULT_NAMED)
    semantics = SetSemantics()
    intervals = dict(DEFAULT_INTERVALS)
    try:
        for raw_name, entry in data.items():
            if str(raw_name).startswith("_"):
                continue
            if raw_name == "thresholds":
                t = ThresholdSpec.model_validate(entry)
                semantics = SetSemantics(t.few, t.almost_all, t.many)
                continue
            if raw_name == "intervals":
                if not isinstance(entry, Mapping):
                    raise InvariantViolation(f"quantifier config {source}: intervals must be an object")
                for name, spec in entry.items():
                    intervals[normalize_name(name)] = IntervalSpec.model_validate(spec).to_quantifier()
                continue
            named[normalize_name(raw_name)] = NamedQuantifierSpec.model_validate(entry).to_quantifier()
    except ValidationError as e:
        raise InvariantViolation(f"quantifier config {source}: {e.errors()[0].get('msg', e)}") from e
    return QuantifierTable(named=named, intervals=intervals, semantics=semantics, source=source)


def load_quantifier_config(path: Optional[str] = None) -> QuantifierTable:
    path = path or os.getenv(ENV_QUANTIFIERS) or None
    if path is None:
        bundled = default_config_path()
        if not os.path.exists(bundled):
            return QuantifierTable()
        path = bundled
    if not os.path.exists(path):
        raise InvariantViolation(f"quantifier config not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvariantViolation(f"quantifier config {path}: invalid JSON ({e.msg} at line {e.lineno})") from e
    table = parse_quantifier_config(data, source=path)
    logger.info(f"已加载具名量词配置: {path} ({len(table.named)} 个)")
    return table
