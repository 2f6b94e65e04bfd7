# -*- coding: utf-8 -*-
"""
计量型集合解释：
- 区间三段论：interval_conclude 在区域向量上穷举求结论比例的 [min, max]，
  Fréchet 闭式 [max(0,a1+a2-1), min(b1,b2)] 作为共享分母 + 合取目标时的快速路径
  interval_conclude_kersup 对每条前提的核与支撑集各传播一次，拼出梯形结论
- 模糊三段论：α-截集上的区间乘法 ⊗（QEP），fuzzy_conclude_statements 检查
  "Q1 A are B; Q2 (A and B) are C ⊢ Q1⊗Q2 A are B and C" 模式
- 例外三段论：exceptive_conclude，literal 模式保留 card - x2 的算术，sound 模式给出例外数的可能区间

比例一律用整数交叉相乘比较，端点以 Fraction 给出。
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence

import numpy as np

from src.core_model import (
    FiniteModel,
    Quantifier,
    QuantifierKind,
    Statement,
    Term,
    as_fraction,
    conjoin,
    format_rational,
    fraction_to_json,
)
from src.errors import (
    CardinalityRequired,
    EmptyDenominator,
    Inconsistent,
    InvariantViolation,
    NoSharedMiddle,
    SearchTooLarge,
    UndefinedProportion,
    Unsupported,
)
from src.quantifier_config import QuantifierTable
from src.set_engine import (
    count_region_vectors,
    evaluate_vectors,
    region_membership,
    region_vectors,
    term_mask,
)
from src.transforms import desugar_singular

logger = logging.getLogger("numeric_engine")

MAX_INTERVAL_VECTORS = 5_000_000
DEFAULT_ALPHA_LEVELS: tuple[Fraction, ...] = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
# 例外三段论：小于等于该规模时用穷举求 sound 区间
EXCEPTIVE_ORACLE_LIMIT = 12


# ---------------- interval syllogistics ----------------

Literal = tuple[Term, bool]


def _literal_mask(lit: Literal, membership: Mapping[str, np.ndarray]) -> np.ndarray:
    term, positive = lit
    mask = term_mask(term, membership)
    return mask if positive else ~mask


@dataclass(frozen=True)
class ProportionGoal:
    """|denominator ∩ numerator| / |denominator|，numerator 为文字（项, 是否肯定）的合取。"""

    numerator: tuple[Literal, ...]
    denominator: Term

    def __post_init__(self) -> None:
        if not self.numerator:
            raise InvariantViolation("proportion needs at least one numerator literal")

    def atom_keys(self) -> list[str]:
        out: list[str] = []
        for t in (self.denominator, *(lit[0] for lit in self.numerator)):
            for k in t.atom_keys:
                if k not in out:
                    out.append(k)
        return out

    def describe(self) -> str:
        lits = " ∩ ".join(t.display() if pos else f"¬{t.display()}" for t, pos in self.numerator)
        return f"|{self.denominator.display()} ∩ {lits}| / |{self.denominator.display()}|"


@dataclass(frozen=True)
class ProportionConstraint:
    goal: ProportionGoal
    bounds: Quantifier

    def __post_init__(self) -> None:
        if self.bounds.kind != QuantifierKind.INTERVAL:
            raise InvariantViolation("proportion bounds must be an interval")
        if all(t.same_atoms(self.goal.denominator) and pos for t, pos in self.goal.numerator):
            raise InvariantViolation("denominator region is trivial: numerator equals denominator")

    @property
    def lo(self) -> Fraction:
        return self.bounds.lo

    @property
    def hi(self) -> Fraction:
        return self.bounds.hi

    @classmethod
    def from_statement(cls, stmt: Statement, table: Optional[QuantifierTable] = None) -> "ProportionConstraint":
        table = table or QuantifierTable()
        if stmt.existence or stmt.quantifier.kind in (
            QuantifierKind.ALL_BUT,
            QuantifierKind.EXACTLY,
            QuantifierKind.AT_LEAST,
        ):
            raise Unsupported("interval", f"{stmt.quantifier.label()} is not a proportion")
        stmt = desugar_singular(stmt)
        q = stmt.quantifier
        if q.kind == QuantifierKind.SOME_NOT:
            raise Unsupported("interval", "some-not has no proportion bounds")
        if q.kind == QuantifierKind.SOME:
            raise Unsupported("interval", "some has no proportion bounds")
        bounds = table.as_interval(q)
        goal = ProportionGoal(((stmt.predicate, not stmt.predicate_negated),), stmt.subject)
        return cls(goal, bounds)


def frechet_bounds(b1: Quantifier, b2: Quantifier) -> Quantifier:
    """共享基集上两个比例区间的合取比例界。"""
    lo = max(Fraction(0), b1.lo + b2.lo - 1)
    hi = min(b1.hi, b2.hi)
    if lo > hi:
        raise Inconsistent(f"Fréchet bounds are empty: [{lo}, {hi}]")
    return Quantifier.interval(lo, hi)


@dataclass(frozen=True)
class IntervalResult:
    interval: Quantifier
    method: str
    regions: tuple[str, ...] = ()
    witness_min: Optional[tuple[int, ...]] = None
    witness_max: Optional[tuple[int, ...]] = None

    def label(self) -> str:
        return self.interval.label()

    def to_json(self) -> dict:
        return {
            "interval": {"lo": fraction_to_json(self.interval.lo), "hi": fraction_to_json(self.interval.hi)},
            "witness_min": list(self.witness_min) if self.witness_min is not None else None,
            "witness_max": list(self.witness_max) if self.witness_max is not None else None,
            "method": self.method,
            "regions": list(self.regions),
        }


def _frechet_applies(premises: Sequence[ProportionConstraint], goal: ProportionGoal) -> bool:
    if len(premises) != 2:
        return False
    if any(p.goal.denominator != goal.denominator for p in premises):
        return False
    if any(len(p.goal.numerator) != 1 or not p.goal.numerator[0][1] for p in premises):
        return False
    lits = [p.goal.numerator[0] for p in premises]
    if lits[0][0].same_atoms(lits[1][0]):
        return False
    wanted = {k for t, _ in lits for k in t.atom_keys}
    got = {k for t, pos in goal.numerator if pos for k in t.atom_keys}
    return all(pos for _, pos in goal.numerator) and wanted == got


def _exhaustive(premises: Sequence[ProportionConstraint], goal: ProportionGoal, max_total: int) -> IntervalResult:
    keys: list[str] = []
    for g in [p.goal for p in premises] + [goal]:
        for k in g.atom_keys():
            if k not in keys:
                keys.append(k)
    membership = region_membership(keys)
    num_regions = 1 << len(keys)

    # 只有落在某个分母内的区域影响比例
    inside = np.zeros(num_regions, dtype=bool)
    for g in [p.goal for p in premises] + [goal]:
        inside |= term_mask(g.denominator, membership)
    relevant = np.flatnonzero(inside)
    sub_membership = {k: v[relevant] for k, v in membership.items()}
    r = len(relevant)
    space = count_region_vectors(r + 1, max_total) - 1
    if space > MAX_INTERVAL_VECTORS:
        raise SearchTooLarge(f"{space} region vectors over {r} regions up to total {max_total}")
    logger.info(f"区间穷举: {len(keys)} 个原子项, {r} 个相关区域, {space} 个区域向量 (total<={max_total})")

    def counts(g: ProportionGoal, vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        den_mask = term_mask(g.denominator, sub_membership)
        num_mask = den_mask.copy()
        for lit in g.numerator:
            num_mask &= _literal_mask(lit, sub_membership)
        return vectors @ num_mask.astype(np.int64), vectors @ den_mask.astype(np.int64)

    best_lo: Optional[tuple[Fraction, np.ndarray]] = None
    best_hi: Optional[tuple[Fraction, np.ndarray]] = None
    any_satisfied = False
    for n in range(1, max_total + 1):
        vectors = region_vectors(r, n)
        ok = np.ones(vectors.shape[0], dtype=bool)
        for p in premises:
            num, den = counts(p.goal, vectors)
            lo, hi = p.lo, p.hi
            ok &= (den > 0) & (num * lo.denominator >= lo.numerator * den) & (num * hi.denominator <= hi.numerator * den)
        if not ok.any():
            continue
        any_satisfied = True
        num, den = counts(goal, vectors)
        ok &= den > 0
        idx = np.flatnonzero(ok)
        if idx.size == 0:
            continue
        ratio = num[idx] / den[idx]
        i_min, i_max = idx[np.argmin(ratio)], idx[np.argmax(ratio)]
        f_min = Fraction(int(num[i_min]), int(den[i_min]))
        f_max = Fraction(int(num[i_max]), int(den[i_max]))
        if best_lo is None or f_min < best_lo[0]:
            best_lo = (f_min, vectors[i_min])
        if best_hi is None or f_max > best_hi[0]:
            best_hi = (f_max, vectors[i_max])

    if not any_satisfied:
        raise Inconsistent(f"no region vector with total <= {max_total} satisfies the premises")
    if best_lo is None or best_hi is None:
        raise EmptyDenominator(f"every satisfying region vector leaves {goal.denominator.display()!r} empty")

    def full(vec: np.ndarray) -> tuple[int, ...]:
        out = np.zeros(num_regions, dtype=np.int64)
        out[relevant] = vec
        return tuple(int(x) for x in out)

    logger.debug(f"区间端点见证: min={full(best_lo[1])} max={full(best_hi[1])}")
    return IntervalResult(
        Quantifier.interval(best_lo[0], best_hi[0]),
        "exhaustive",
        tuple(keys),
        full(best_lo[1]),
        full(best_hi[1]),
    )


def interval_conclude(
    premises: Sequence[ProportionConstraint],
    goal: ProportionGoal,
    max_total: int = 40,
    method: str = "auto",
) -> IntervalResult:
    """结论比例在所有满足前提的区域向量（总数 <= max_total）上的 [min, max]。

    method: auto（可用时走 Fréchet 闭式）| frechet | exhaustive
    """
    if max_total < 1:
        raise InvariantViolation(f"max_total must be >= 1, got {max_total}")
    if not premises:
        raise InvariantViolation("interval_conclude needs at least one premise")
    if method not in ("auto", "frechet", "exhaustive"):
        raise InvariantViolation(f"unknown method {method!r}")
    if method in ("auto", "frechet") and _frechet_applies(premises, goal):
        interval = frechet_bounds(premises[0].bounds, premises[1].bounds)
        return IntervalResult(interval, "frechet", tuple(goal.atom_keys()))
    if method == "frechet":
        raise Unsupported("interval", "Fréchet bounds need two premises over one shared denominator and a conjunction goal")
    return _exhaustive(premises, goal, max_total)


@dataclass(frozen=True)
class IntervalConclusion:
    statement: Statement
    result: IntervalResult


def _chain_ends(premises: Sequence[Statement]) -> tuple[Term, Term]:
    """两前提共享中项时返回 (结论主项, 结论谓项)：优先取谓项为中项的那条前提的主项。"""
    t1, t2 = set(premises[0].terms), set(premises[1].terms)
    shared = t1 & t2
    if len(shared) != 1:
        raise NoSharedMiddle("premises must share exactly one middle term")
    m = next(iter(shared))
    ends = [t for p in premises for t in p.terms if t != m]
    for p in premises:
        if p.predicate == m:
            s = p.subject
            break
    else:
        s = premises[1].subject if premises[1].subject != m else ends[1]
    other = [t for t in ends if t != s]
    if len(other) != 1:
        raise NoSharedMiddle("premises do not form a chain over three terms")
    return s, other[0]


def interval_conclude_statements(
    premises: Sequence[Statement],
    table: Optional[QuantifierTable] = None,
    max_total: int = 40,
    method: str = "auto",
) -> IntervalConclusion:
    """从前提语句推出区间结论语句。

    - 所有前提主项相同：结论为 "[lo,hi] S are P1 and P2 ..."
    - 两前提共享中项：结论为 "[lo,hi] S are P"
    """
    premises = [desugar_singular(p) for p in premises]
    constraints = [ProportionConstraint.from_statement(p, table) for p in premises]
    subjects = {p.subject for p in premises}
    if len(subjects) == 1 and len(premises) >= 2:
        if any(p.predicate_negated for p in premises):
            raise Unsupported("interval", "negated predicates cannot be conjoined into one term")
        subject = premises[0].subject
        predicate = conjoin(*(p.predicate for p in premises))
        goal = ProportionGoal(tuple((t, True) for t in predicate.conjuncts), subject)
    elif len(premises) == 2:
        subject, predicate = _chain_ends(premises)
        goal = ProportionGoal(((predicate, True),), subject)
    else:
        raise Unsupported("interval", "premises must share a subject or form a two-premise chain")
    result = interval_conclude(constraints, goal, max_total, method)
    return IntervalConclusion(Statement(result.interval, subject, predicate), result)


@dataclass(frozen=True)
class KerSupConclusion:
    """核与支撑集分别传播后拼成的梯形结论 [a', c', d', b']。"""

    statement: Statement
    kernel: IntervalResult
    support: IntervalResult

    def to_json(self) -> dict:
        return {"kernel": self.kernel.to_json(), "support": self.support.to_json()}


def _with_bounds(stmt: Statement, lo: Fraction, hi: Fraction) -> Statement:
    return Statement(Quantifier.interval(lo, hi), stmt.subject, stmt.predicate, stmt.predicate_negated)


def interval_conclude_kersup(
    premises: Sequence[Statement],
    table: Optional[QuantifierTable] = None,
    max_total: int = 40,
    method: str = "auto",
) -> KerSupConclusion:
    """每条前提读作梯形 [a,c,d,b]，核 [c,d] 与支撑集 [a,b] 各跑一次 interval_conclude。

    核约束更窄，其结论区间落在支撑集结论之内；核不相容时抛 Inconsistent。
    """
    table = table or QuantifierTable()
    premises = [desugar_singular(p) for p in premises]
    kernels: list[Statement] = []
    supports: list[Statement] = []
    for p in premises:
        try:
            trap = table.as_trapezoid(p.quantifier)
        except Unsupported:
            raise Unsupported("interval", f"quantifier {p.quantifier.label()} has no kernel/support reading")
        kernels.append(_with_bounds(p, *trap.kernel))
        supports.append(_with_bounds(p, *trap.support))

    support = interval_conclude_statements(supports, table, max_total, method)
    try:
        kernel = interval_conclude_statements(kernels, table, max_total, method)
    except Inconsistent as e:
        raise Inconsistent(f"premise kernels are jointly unsatisfiable: {e}") from e
    (a, b), (c, d) = support.result.interval.support, kernel.result.interval.support
    logger.info(f"Ker-Sup: 支撑集 [{format_rational(a)},{format_rational(b)}], 核 [{format_rational(c)},{format_rational(d)}]")
    st = support.statement
    conclusion = Statement(Quantifier.trapezoid(a, c, d, b), st.subject, st.predicate, st.predicate_negated)
    return KerSupConclusion(conclusion, kernel.result, support.result)


# ---------------- fuzzy syllogistics ----------------

class FuzzySchema(str, Enum):
    INTERSECTION_PRODUCT = "intersection_product"


def _check_trapezoid(q: Quantifier) -> Quantifier:
    if q.kind == QuantifierKind.INTERVAL:
        return Quantifier.trapezoid(q.lo, q.lo, q.hi, q.hi)
    if q.kind != QuantifierKind.TRAPEZOID:
        raise InvariantViolation(f"expected a trapezoid, got {q.label()}")
    return q


def alpha_cut(q: Quantifier, alpha: Any) -> tuple[Fraction, Fraction]:
    """[a + α(c−a), b − α(b−d)]"""
    a, c, d, b = _check_trapezoid(q).params
    alpha = as_fraction(alpha)
    if not (Fraction(0) <= alpha <= Fraction(1)):
        raise InvariantViolation(f"alpha outside [0,1]: {alpha}")
    return a + alpha * (c - a), b - alpha * (b - d)


def trapezoid_membership(q: Quantifier, x: Any) -> Fraction:
    a, c, d, b = _check_trapezoid(q).params
    x = as_fraction(x)
    if x < a or x > b:
        return Fraction(0)
    if c <= x <= d:
        return Fraction(1)
    if x < c:
        return (x - a) / (c - a)
    return (b - x) / (b - d)


def fuzzy_truth(
    model: FiniteModel,
    stmt: Statement,
    table: Optional[QuantifierTable] = None,
) -> Fraction:
    """|s ∩ p'| / |s| 对量词模糊数的隶属度。"""
    table = table or QuantifierTable()
    stmt = desugar_singular(stmt)
    q = table.as_trapezoid(stmt.quantifier)
    s = model.extension(stmt.subject)
    p = model.extension(stmt.predicate)
    if stmt.predicate_negated:
        p = model.universe - p
    if not s:
        raise UndefinedProportion(f"empty subject {stmt.subject.display()!r}")
    return trapezoid_membership(q, Fraction(len(s & p), len(s)))


@dataclass(frozen=True)
class FuzzyConclusion:
    cuts: tuple[tuple[Fraction, Fraction, Fraction], ...]  # (α, lo, hi)
    support: tuple[Fraction, Fraction]
    kernel: tuple[Fraction, Fraction]

    def cut(self, alpha: Any) -> tuple[Fraction, Fraction]:
        alpha = as_fraction(alpha)
        for a, lo, hi in self.cuts:
            if a == alpha:
                return lo, hi
        raise InvariantViolation(f"no cut computed at alpha={alpha}")

    def as_trapezoid(self) -> Quantifier:
        """以支撑集与核近似结果（乘积的 α-截集端点是 α 的二次函数）。"""
        return Quantifier.trapezoid(self.support[0], self.kernel[0], self.kernel[1], self.support[1])

    def to_json(self) -> dict:
        return {
            "cuts": [
                {"alpha": fraction_to_json(a), "lo": fraction_to_json(lo), "hi": fraction_to_json(hi)}
                for a, lo, hi in self.cuts
            ],
            "support": [fraction_to_json(x) for x in self.support],
            "kernel": [fraction_to_json(x) for x in self.kernel],
        }

    def describe(self) -> str:
        return "; ".join(
            f"α={format_rational(a)}: [{format_rational(lo)},{format_rational(hi)}]" for a, lo, hi in self.cuts
        )


def _multiply(cuts: Sequence[tuple[Fraction, Fraction]]) -> tuple[Fraction, Fraction]:
    # [0,1] 内非负区间，端点相乘即可
    return math.prod((c[0] for c in cuts), start=Fraction(1)), math.prod((c[1] for c in cuts), start=Fraction(1))


def fuzzy_conclude_qep(
    premises: Sequence[Quantifier],
    schema: FuzzySchema = FuzzySchema.INTERSECTION_PRODUCT,
    alpha_levels: Sequence[Any] = DEFAULT_ALPHA_LEVELS,
) -> FuzzyConclusion:
    if FuzzySchema(schema) != FuzzySchema.INTERSECTION_PRODUCT:
        raise Unsupported("fuzzy", f"schema {schema}")
    if not premises:
        raise InvariantViolation("fuzzy_conclude_qep needs at least one premise quantifier")
    traps = [_check_trapezoid(q) for q in premises]
    alphas = [as_fraction(a) for a in alpha_levels]
    if not alphas:
        raise InvariantViolation("alpha_levels is empty")
    if any(not (Fraction(0) < a <= Fraction(1)) for a in alphas):
        raise InvariantViolation("alpha levels must lie in (0,1]")
    if any(x >= y for x, y in zip(alphas, alphas[1:])):
        raise InvariantViolation("alpha levels must be strictly ascending")
    cuts = tuple((a, *_multiply([alpha_cut(t, a) for t in traps])) for a in alphas)
    support = _multiply([alpha_cut(t, 0) for t in traps])
    kernel = _multiply([alpha_cut(t, 1) for t in traps])
    return FuzzyConclusion(cuts, support, kernel)


def fuzzy_conclude_statements(
    premises: Sequence[Statement],
    table: Optional[QuantifierTable] = None,
    alpha_levels: Sequence[Any] = DEFAULT_ALPHA_LEVELS,
) -> tuple[Statement, FuzzyConclusion]:
    """Q1 A are B; Q2 (A and B) are C ⊢ Q1⊗Q2 A are B and C"""
    table = table or QuantifierTable()
    if len(premises) != 2:
        raise Unsupported("fuzzy", "the product schema takes exactly two premises")
    for first, second in (premises, tuple(reversed(premises))):
        if first.predicate_negated or second.predicate_negated:
            continue
        if first.singular or second.singular or first.existence or second.existence:
            continue
        if second.subject.same_atoms(conjoin(first.subject, first.predicate)):
            result = fuzzy_conclude_qep(
                [table.as_trapezoid(first.quantifier), table.as_trapezoid(second.quantifier)],
                FuzzySchema.INTERSECTION_PRODUCT,
                alpha_levels,
            )
            conclusion = Statement(result.as_trapezoid(), first.subject, conjoin(first.predicate, second.predicate))
            return conclusion, result
    raise Unsupported("fuzzy", "premises do not match 'Q1 A are B; Q2 A and B are C'")


# ---------------- exceptive syllogistics ----------------

class ExceptiveMode(str, Enum):
    LITERAL = "literal"
    SOUND_BOUND = "sound"


@dataclass(frozen=True)
class ExceptiveConclusion:
    mode: ExceptiveMode
    subject: Term
    predicate: Term
    exception_lo: int
    exception_hi: int
    card_term: Term
    card: int
    method: str

    @property
    def exact(self) -> bool:
        return self.exception_lo == self.exception_hi

    def statement(self) -> Optional[Statement]:
        if not self.exact:
            return None
        return Statement(Quantifier.all_but(self.exception_lo), self.subject, self.predicate)

    def describe(self) -> str:
        if self.exact:
            return f"all but {self.exception_lo} {self.subject.display()} are {self.predicate.display()}"
        return (
            f"all but x {self.subject.display()} are {self.predicate.display()}, "
            f"x ∈ [{self.exception_lo},{self.exception_hi}]"
        )

    def to_json(self) -> dict:
        return {
            "mode": self.mode.value,
            "subject": self.subject.key,
            "predicate": self.predicate.key,
            "exception": [self.exception_lo, self.exception_hi],
            "card": {self.card_term.key: self.card},
            "method": self.method,
        }


def _exceptive_chain(p1: Statement, p2: Statement) -> tuple[Statement, Statement]:
    """返回 (M→P, S→M)。"""
    for st in (p1, p2):
        if st.quantifier.kind != QuantifierKind.ALL_BUT or st.predicate_negated or st.singular:
            raise Unsupported("exceptive", f"expected 'all but k' premises, got {st.quantifier.label()}")
    if p2.predicate == p1.subject and p2.subject != p1.predicate:
        return p1, p2
    if p1.predicate == p2.subject and p1.subject != p2.predicate:
        return p2, p1
    raise NoSharedMiddle("exceptive premises must chain S→M and M→P")


def _card_lookup(cards: Mapping[Any, int], term: Term) -> Optional[int]:
    for k, v in cards.items():
        key = k if isinstance(k, Term) else Term(str(k))
        if key == term:
            if int(v) < 0:
                raise InvariantViolation(f"cardinality of {term.display()!r} is negative")
            return int(v)
    return None


def exceptive_oracle_range(
    p_mp: Statement,
    p_sm: Statement,
    card_m: Optional[int] = None,
    card_s: Optional[int] = None,
) -> tuple[int, int]:
    """穷举 S∪M 内的区域向量，返回 |S − P| 的 [min, max]。"""
    s, m, p = p_sm.subject, p_mp.subject, p_mp.predicate
    x1, x2 = p_mp.quantifier.k, p_sm.quantifier.k
    if card_m is None and card_s is None:
        raise CardinalityRequired("the oracle needs |M| or |S|")
    # S∪M 之外的个体无关；M − S 中只有不在 P 的那部分会影响约束
    bound = (card_m + x2) if card_m is not None else (card_s + x1)  # type: ignore[operator]
    keys = [s.key, m.key, p.key]
    membership = region_membership(keys)
    relevant = np.flatnonzero(membership[s.key] | membership[m.key])
    sub = {k: v[relevant] for k, v in membership.items()}
    s_mask = sub[s.key]
    m_mask = sub[m.key]
    sp_missing = s_mask & ~sub[p.key]
    found: list[int] = []
    for n in range(0, bound + 1):
        vectors = region_vectors(len(relevant), n)
        ok = np.ones(vectors.shape[0], dtype=bool)
        for st in (p_mp, p_sm):
            truth, defined = evaluate_vectors(st, vectors, sub)
            ok &= truth & defined
        if card_m is not None:
            ok &= (vectors @ m_mask.astype(np.int64)) == card_m
        if card_s is not None:
            ok &= (vectors @ s_mask.astype(np.int64)) == card_s
        if ok.any():
            e = vectors[ok] @ sp_missing.astype(np.int64)
            found.extend((int(e.min()), int(e.max())))
    if not found:
        raise Inconsistent("no model satisfies the exceptive premises with the given cardinality")
    return min(found), max(found)


def _sound_closed_form(x1: int, x2: int, card_m: Optional[int], card_s: Optional[int]) -> tuple[int, int]:
    if card_m is not None and x1 > card_m:
        raise Inconsistent(f"|M| = {card_m} cannot have {x1} exceptions")
    if card_s is not None and x2 > card_s:
        raise Inconsistent(f"|S| = {card_s} cannot have {x2} members outside M")
    if card_s is None:
        return 0, x1 + x2
    inner = card_s - x2  # |S ∩ M|
    if card_m is None:
        return 0, min(x1, inner) + x2
    if inner > card_m:
        raise Inconsistent(f"|S ∩ M| = {inner} exceeds |M| = {card_m}")
    # |S ∩ M − P| 的范围；S − M 的 x2 个个体可以全在 P 内，也可以全不在
    lo = max(0, inner - (card_m - x1))
    hi = min(x1, inner)
    if lo > hi:
        raise Inconsistent("cardinalities leave no room for the exceptions")
    return lo, hi + x2


def exceptive_conclude(
    premise1: Statement,
    premise2: Statement,
    cards: Mapping[Any, int],
    mode: ExceptiveMode = ExceptiveMode.LITERAL,
) -> ExceptiveConclusion:
    """all but x1 M are P; all but x2 S are M ⊢ all but ? S are P

    literal: 例外数 = card − x2（card 取 |M|，没有时取 |S|）
    sound:   例外数 |S − P| 的可能区间（小规模穷举，否则闭式）
    """
    p_mp, p_sm = _exceptive_chain(premise1, premise2)
    s, m, p = p_sm.subject, p_mp.subject, p_mp.predicate
    x1, x2 = int(p_mp.quantifier.k), int(p_sm.quantifier.k)  # type: ignore[arg-type]
    card_m = _card_lookup(cards, m)
    card_s = _card_lookup(cards, s)
    if card_m is None and card_s is None:
        raise CardinalityRequired(
            f"assume a cardinality for {m.display()!r} or {s.display()!r} (e.g. --card {m.name}=100)"
        )
    card_term, card = (m, card_m) if card_m is not None else (s, card_s)
    assert card is not None
    mode = ExceptiveMode(mode)

    if mode == ExceptiveMode.LITERAL:
        if card < max(x1, x2):
            raise Inconsistent(f"assumed cardinality {card} is smaller than an exception size ({x1}, {x2})")
        e = card - x2
        return ExceptiveConclusion(mode, s, p, e, e, card_term, card, "formula")

    size = (card_m if card_m is not None else card_s) + x1 + x2  # type: ignore[operator]
    if size <= EXCEPTIVE_ORACLE_LIMIT:
        lo, hi = exceptive_oracle_range(p_mp, p_sm, card_m, card_s)
        method = "oracle"
    else:
        lo, hi = _sound_closed_form(x1, x2, card_m, card_s)
        method = "closed-form"
    logger.info(f"例外三段论 sound 区间 [{lo},{hi}] ({method})")
    return ExceptiveConclusion(mode, s, p, lo, hi, card_term, card, method)
