# -*- coding: utf-8 -*-
"""
条件解释引擎：量词读作条件概率 P(P|S) 的约束，结论由启发式生成（不做概率有效性证明）。
- prob_interpret：All=1, No=0, Some>0 且 S 非空, Some-not<1 且 S 非空, Most∈[1−ε,1), Few∈(0,ε]
- heuristic_conclude：min-heuristic 选信息量最小前提的量词，attachment-heuristic 选结论主项
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Optional, Sequence

from src.core_model import (
    ProbQuantifierConfig,
    QuantifierKind,
    Statement,
    Term,
    as_fraction,
    format_rational,
)
from src.errors import InvariantViolation, NoSharedMiddle, Unsupported

logger = logging.getLogger("conditional_engine")


class ConstraintKind(str, Enum):
    EQ1 = "eq1"
    EQ0 = "eq0"
    GT_ZERO_WITH_EXISTENCE = "gt_zero_with_existence"
    LT_ONE_WITH_EXISTENCE = "lt_one_with_existence"
    MOST_BAND = "most_band"
    FEW_BAND = "few_band"


@dataclass(frozen=True)
class ProbConstraint:
    kind: ConstraintKind
    epsilon: Fraction

    @property
    def requires_existence(self) -> bool:
        return self.kind in (ConstraintKind.GT_ZERO_WITH_EXISTENCE, ConstraintKind.LT_ONE_WITH_EXISTENCE)

    def band(self) -> tuple[Fraction, Fraction, bool, bool]:
        """(lo, hi, lo 是否闭, hi 是否闭)"""
        eps = self.epsilon
        one, zero = Fraction(1), Fraction(0)
        return {
            ConstraintKind.EQ1: (one, one, True, True),
            ConstraintKind.EQ0: (zero, zero, True, True),
            ConstraintKind.GT_ZERO_WITH_EXISTENCE: (zero, one, False, True),
            ConstraintKind.LT_ONE_WITH_EXISTENCE: (zero, one, True, False),
            ConstraintKind.MOST_BAND: (one - eps, one, True, False),
            ConstraintKind.FEW_BAND: (zero, eps, False, True),
        }[self.kind]

    def holds(self, p: Any, nonempty: bool = True) -> bool:
        """P(P|S) = p 时约束是否成立；S 为空时条件概率无定义，只有 =1 与 =0 两个约束按空真处理。"""
        if not nonempty:
            return self.kind in (ConstraintKind.EQ1, ConstraintKind.EQ0)
        p = as_fraction(p)
        lo, hi, lo_closed, hi_closed = self.band()
        above = p >= lo if lo_closed else p > lo
        below = p <= hi if hi_closed else p < hi
        return above and below

    def describe(self, subject: str = "S", predicate: str = "P") -> str:
        lo, hi, lo_closed, hi_closed = self.band()
        prob = f"P({predicate}|{subject})"
        if lo == hi:
            text = f"{prob} = {format_rational(lo)}"
        else:
            left = f"{format_rational(lo)} {'≤' if lo_closed else '<'}"
            right = f"{'≤' if hi_closed else '<'} {format_rational(hi)}"
            text = f"{left} {prob} {right}"
        if self.requires_existence:
            text += f" and {subject} is not empty"
        return text


_KIND_CONSTRAINT = {
    QuantifierKind.ALL: ConstraintKind.EQ1,
    QuantifierKind.NO: ConstraintKind.EQ0,
    QuantifierKind.SOME: ConstraintKind.GT_ZERO_WITH_EXISTENCE,
    QuantifierKind.SOME_NOT: ConstraintKind.LT_ONE_WITH_EXISTENCE,
    QuantifierKind.MOST: ConstraintKind.MOST_BAND,
    QuantifierKind.FEW: ConstraintKind.FEW_BAND,
}


def _reject_singular(stmt: Statement) -> None:
    if stmt.singular or stmt.subject.singleton:
        raise Unsupported(
            "conditional",
            f"singular statement about {stmt.subject.label!r}: no quantifier gives the strength of its link",
        )
    if stmt.existence:
        raise Unsupported("conditional", "existence premises have no conditional reading")


def prob_interpret(stmt: Statement, cfg: Optional[ProbQuantifierConfig] = None) -> ProbConstraint:
    cfg = cfg or ProbQuantifierConfig()
    _reject_singular(stmt)
    kind = _KIND_CONSTRAINT.get(stmt.quantifier.kind)
    if kind is None:
        raise Unsupported("conditional", f"quantifier {stmt.quantifier.label()} has no probabilistic reading")
    if stmt.predicate_negated:
        raise Unsupported("conditional", f"negated predicate with {stmt.quantifier.label()}")
    return ProbConstraint(kind, cfg.epsilon)


# ---------------- informativeness / heuristics ----------------

DEFAULT_ORDER: tuple[QuantifierKind, ...] = (
    QuantifierKind.ALL,
    QuantifierKind.MOST,
    QuantifierKind.FEW,
    QuantifierKind.SOME,
    QuantifierKind.NO,
    QuantifierKind.SOME_NOT,
)


@dataclass(frozen=True)
class Informativeness:
    """从最有信息量到最少信息量的严格全序。"""

    order: tuple[QuantifierKind, ...] = DEFAULT_ORDER

    def __post_init__(self) -> None:
        order = tuple(QuantifierKind(k) for k in self.order)
        if len(set(order)) != len(order):
            raise InvariantViolation("informativeness order repeats a quantifier")
        object.__setattr__(self, "order", order)

    @classmethod
    def parse(cls, text: str) -> "Informativeness":
        """'all>most>few>some>no>some_not'"""
        names = [x.strip().lower().replace("-", "_").replace(" ", "_") for x in text.split(">") if x.strip()]
        try:
            return cls(tuple(QuantifierKind(n) for n in names))
        except ValueError as e:
            raise InvariantViolation(f"bad informativeness order {text!r}: {e}") from e

    def rank(self, kind: QuantifierKind) -> int:
        """越小越有信息量。"""
        if kind not in self.order:
            raise Unsupported("conditional", f"quantifier {kind.value} is not in the informativeness order")
        return self.order.index(kind)

    def more_informative(self, a: QuantifierKind, b: QuantifierKind) -> bool:
        return self.rank(a) < self.rank(b)


@dataclass(frozen=True)
class HeuristicConclusion:
    statement: Statement
    max_premise: Statement
    min_premise: Statement
    trace: tuple[str, ...] = field(default=())
    # 两条前提与结论各自的概率约束带（随 ε 变化）
    bands: tuple[tuple[Statement, ProbConstraint], ...] = field(default=())


def _middle_and_ends(p1: Statement, p2: Statement) -> tuple[Term, Term, Term]:
    t1, t2 = set(p1.terms), set(p2.terms)
    shared = t1 & t2
    if len(shared) != 1 or len(t1) != 2 or len(t2) != 2:
        raise NoSharedMiddle(
            f"premises must share exactly one term: {sorted(t.name for t in t1)} / {sorted(t.name for t in t2)}"
        )
    m = next(iter(shared))
    (e1,) = t1 - {m}
    (e2,) = t2 - {m}
    return m, e1, e2


def heuristic_conclude(
    premises: Sequence[Statement],
    order: Optional[Informativeness] = None,
    cfg: Optional[ProbQuantifierConfig] = None,
) -> HeuristicConclusion:
    """两前提的启发式结论。

    1. 按信息量分出 max / min 前提（相同时第一条前提为 max）
    2. 结论量词取 min 前提的量词
    3. 结论主项：min 前提主项若为端项则取之，否则 max 前提主项，否则 min 前提中的端项
    """
    order = order or Informativeness()
    if len(premises) != 2:
        raise NoSharedMiddle(f"heuristics take exactly two premises, got {len(premises)}")
    p1, p2 = premises
    for p in (p1, p2):
        _reject_singular(p)
        if p.predicate_negated:
            raise Unsupported("conditional", f"negated predicate with {p.quantifier.label()}")
        order.rank(p.quantifier.kind)
    m, e1, e2 = _middle_and_ends(p1, p2)

    if order.more_informative(p2.quantifier.kind, p1.quantifier.kind):
        max_p, min_p, min_end = p2, p1, e1
    else:
        max_p, min_p, min_end = p1, p2, e2
    q = min_p.quantifier

    if min_p.subject != m:
        subject, source = min_p.subject, "min-premise subject"
    elif max_p.subject != m:
        subject, source = max_p.subject, "max-premise subject"
    else:
        subject, source = min_end, "end term of the min-premise"
    predicate = e2 if subject == e1 else e1

    conclusion = Statement(q, subject, predicate)
    trace = (
        f"min-heuristic: conclusion quantifier {q.label()} from the least informative premise",
        f"attachment-heuristic: conclusion subject {subject.display()!r} ({source})",
    )
    logger.debug(" | ".join(trace))
    cfg = cfg or ProbQuantifierConfig()
    bands = tuple((st, prob_interpret(st, cfg)) for st in (p1, p2, conclusion))
    return HeuristicConclusion(conclusion, max_p, min_p, trace, bands)
