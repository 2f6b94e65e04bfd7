# -*- coding: utf-8 -*-
"""
集合解释引擎：
- evaluate_statement：有限模型上的真值（经典 / 中间 / 绝对 / 例外 / 区间量词）
- check_validity：穷举小模型找反模型（模型 = 2^t 个 Venn 区域的基数向量，按论域大小、再按字典序）
- enumerate_classical_moods：4 格 x 64 式的经典三段论普查
- lso_relation：对当方阵（经典 / 无存在含义的现代方阵），关系表可替换

真值只依赖 n_s = |s| 与 n_sp = |s ∩ p'|（p' 为谓项，否定时取补），
同一个 _truth 既用于单个模型（int）也用于 numpy 向量批量求值。
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.core_model import (
    ALL,
    NO,
    SOME,
    SOME_NOT,
    Figure,
    FiniteModel,
    ImportPolicy,
    ImportScope,
    Quantifier,
    QuantifierKind,
    Statement,
    Syllogism,
    Term,
    Verdict,
)
from src.errors import InvariantViolation, SearchTooLarge, TermMismatch, UndefinedProportion
from src.quantifier_config import SetSemantics
from src.transforms import add_import_premises, desugar_singular, desugar_syllogism

logger = logging.getLogger("set_engine")

# 单个论域大小下允许生成的区域向量上限
MAX_VECTORS_PER_TOTAL = 2_000_000

UNIVERSAL_KINDS = frozenset({QuantifierKind.ALL, QuantifierKind.NO, QuantifierKind.ALL_BUT})


# ---------------- region vectors ----------------

def count_region_vectors(num_regions: int, total: int) -> int:
    return math.comb(total + num_regions - 1, num_regions - 1)


@lru_cache(maxsize=256)
def region_vectors(num_regions: int, total: int) -> np.ndarray:
    """和为 total 的全部 num_regions 维非负整数向量（字典序，第一维先增长）。结果只读。"""
    if num_regions < 1 or total < 0:
        raise InvariantViolation(f"bad region space: {num_regions} regions, total {total}")
    size = count_region_vectors(num_regions, total)
    if size > MAX_VECTORS_PER_TOTAL:
        raise SearchTooLarge(
            f"{size} region vectors for {num_regions} regions at total {total} (limit {MAX_VECTORS_PER_TOTAL})"
        )
    if num_regions == 1:
        out = np.array([[total]], dtype=np.int64)
    else:
        slots = total + num_regions - 1
        bars = np.fromiter(
            itertools.chain.from_iterable(itertools.combinations(range(slots), num_regions - 1)),
            dtype=np.int64,
            count=size * (num_regions - 1),
        ).reshape(size, num_regions - 1)
        edges = np.hstack([np.full((size, 1), -1, dtype=np.int64), bars, np.full((size, 1), slots, dtype=np.int64)])
        out = np.diff(edges, axis=1) - 1
    out.setflags(write=False)
    return out


def region_membership(keys: Sequence[str]) -> dict[str, np.ndarray]:
    """区域 r 属于第 i 个原子项当且仅当 r 的第 i 位为 1。"""
    idx = np.arange(1 << len(keys))
    return {k: ((idx >> i) & 1).astype(bool) for i, k in enumerate(keys)}


def term_mask(term: Term, membership: Mapping[str, np.ndarray]) -> np.ndarray:
    size = len(next(iter(membership.values())))
    mask = np.ones(size, dtype=bool)
    for k in term.atom_keys:
        if k not in membership:
            raise InvariantViolation(f"term {k!r} is not part of the region space")
        mask &= membership[k]
    return mask


def statement_masks(stmt: Statement, membership: Mapping[str, np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """返回 (s 的区域掩码, s ∩ p' 的区域掩码)。"""
    s = term_mask(stmt.subject, membership)
    p = term_mask(stmt.predicate, membership)
    if stmt.predicate_negated:
        p = ~p
    return s, s & p


# ---------------- truth ----------------

def _truth(q: Quantifier, n_s: Any, n_sp: Any, sem: SetSemantics) -> tuple[Any, Any]:
    """返回 (真值, 是否有定义)。n_s / n_sp 可以是 int 或 numpy 数组。"""
    kind = q.kind
    defined: Any = True
    if kind == QuantifierKind.ALL:
        truth = n_sp == n_s
    elif kind == QuantifierKind.NO:
        truth = n_sp == 0
    elif kind == QuantifierKind.SOME:
        truth = n_sp > 0
    elif kind == QuantifierKind.SOME_NOT:
        truth = (n_s - n_sp) > 0
    elif kind == QuantifierKind.ALL_BUT:
        truth = (n_s - n_sp) == q.k
    elif kind == QuantifierKind.EXACTLY:
        truth = n_sp == q.k
    elif kind == QuantifierKind.AT_LEAST:
        truth = n_sp >= q.k
    else:
        defined = n_s > 0
        if kind == QuantifierKind.MOST:
            truth = 2 * n_sp > n_s
        elif kind == QuantifierKind.MANY:
            th = sem.many
            truth = n_sp * th.denominator > th.numerator * n_s
        elif kind == QuantifierKind.FEW:
            th = sem.few
            truth = n_sp * th.denominator <= th.numerator * n_s
        elif kind == QuantifierKind.ALMOST_ALL:
            th = sem.almost_all
            truth = (n_s - n_sp) * th.denominator <= th.numerator * n_s
        elif kind in (QuantifierKind.INTERVAL, QuantifierKind.TRAPEZOID):
            # 梯形的清晰真值取其支撑集
            lo, hi = q.support
            truth = (n_sp * lo.denominator >= lo.numerator * n_s) & (n_sp * hi.denominator <= hi.numerator * n_s)
        else:
            raise InvariantViolation(f"no set semantics for {kind.value}")
    return truth, defined


def evaluate_statement(model: FiniteModel, stmt: Statement, semantics: Optional[SetSemantics] = None) -> bool:
    sem = semantics or SetSemantics()
    stmt = desugar_singular(stmt)
    s = model.extension(stmt.subject)
    p = model.extension(stmt.predicate)
    if stmt.predicate_negated:
        p = model.universe - p
    n_s, n_sp = len(s), len(s & p)
    truth, defined = _truth(stmt.quantifier, n_s, n_sp, sem)
    if not defined:
        raise UndefinedProportion(f"{stmt.quantifier.label()} evaluated on empty subject {stmt.subject.display()!r}")
    return bool(truth)


def evaluate_vectors(
    stmt: Statement,
    vectors: np.ndarray,
    membership: Mapping[str, np.ndarray],
    semantics: Optional[SetSemantics] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """批量求值：返回 (真值, 有定义) 两个布尔数组，每行一个区域向量。"""
    sem = semantics or SetSemantics()
    s_mask, sp_mask = statement_masks(stmt, membership)
    n_s = vectors @ s_mask.astype(np.int64)
    n_sp = vectors @ sp_mask.astype(np.int64)
    truth, defined = _truth(stmt.quantifier, n_s, n_sp, sem)
    rows = vectors.shape[0]
    return np.broadcast_to(truth, (rows,)), np.broadcast_to(defined, (rows,))


def model_from_vector(keys: Sequence[str], counts: Iterable[int]) -> FiniteModel:
    """按区域顺序依次分配个体编号，构造具体模型。"""
    ext: dict[str, set[int]] = {k: set() for k in keys}
    nxt = 0
    for r, c in enumerate(counts):
        members = range(nxt, nxt + int(c))
        nxt += int(c)
        for i, k in enumerate(keys):
            if (r >> i) & 1:
                ext[k].update(members)
    return FiniteModel.from_mapping(range(nxt), ext)


# ---------------- validity ----------------

def _prepare(syl: Syllogism, policy: ImportPolicy, scope: ImportScope) -> Syllogism:
    syl = desugar_syllogism(syl)
    if ImportPolicy(policy) == ImportPolicy.EXPLICIT_PREMISE:
        syl = add_import_premises(syl, ImportScope(scope))
    return syl


def _premise_mask(
    stmt: Statement,
    vectors: np.ndarray,
    membership: Mapping[str, np.ndarray],
    policy: ImportPolicy,
    sem: SetSemantics,
) -> np.ndarray:
    truth, defined = evaluate_vectors(stmt, vectors, membership, sem)
    ok = truth & defined
    if policy == ImportPolicy.UNIVERSAL_IMPORT and stmt.quantifier.kind in UNIVERSAL_KINDS and not stmt.existence:
        ok = ok & (vectors @ term_mask(stmt.subject, membership).astype(np.int64) > 0)
    return ok


def _singleton_filter(keys: Sequence[str], vectors: np.ndarray, membership: Mapping[str, np.ndarray]) -> np.ndarray:
    ok = np.ones(vectors.shape[0], dtype=bool)
    for k in keys:
        if k.startswith("{"):
            ok &= (vectors @ membership[k].astype(np.int64)) == 1
    return ok


def check_validity(
    syl: Syllogism,
    policy: ImportPolicy = ImportPolicy.NO_IMPORT,
    max_universe: int = 6,
    scope: ImportScope = ImportScope.SUBJECTS_ONLY,
    semantics: Optional[SetSemantics] = None,
) -> Verdict:
    """在 |U| <= max_universe 的所有模型中找第一个反模型。

    - 前提上的比例未定义视为前提不成立；结论未定义视为结论不成立
    - 没有任何模型满足前提时返回 Undetermined
    """
    if max_universe < 1:
        raise InvariantViolation(f"max_universe must be >= 1, got {max_universe}")
    policy = ImportPolicy(policy)
    sem = semantics or SetSemantics()
    prepared = _prepare(syl, policy, scope)
    keys = prepared.atom_keys()
    membership = region_membership(keys)
    num_regions = 1 << len(keys)
    logger.info(
        f"检查有效性: {len(keys)} 个原子项, {num_regions} 个区域, "
        f"{count_region_vectors(num_regions + 1, max_universe) - 1} 个候选模型 (|U|<={max_universe})"
    )

    any_satisfied = False
    for n in range(1, max_universe + 1):
        vectors = region_vectors(num_regions, n)
        ok = _singleton_filter(keys, vectors, membership)
        for p in prepared.premises:
            ok &= _premise_mask(p, vectors, membership, policy, sem)
        if not ok.any():
            continue
        any_satisfied = True
        truth, defined = evaluate_vectors(prepared.conclusion, vectors, membership, sem)
        counter = ok & ~(truth & defined)
        hits = np.flatnonzero(counter)
        if hits.size:
            model = model_from_vector(keys, vectors[hits[0]])
            logger.debug(f"反模型 |U|={n}: {model.as_dict()}")
            return Verdict.counter(model, max_universe)
    if not any_satisfied:
        logger.info("前提在界内不可满足")
        return Verdict.undetermined(max_universe)
    return Verdict.valid(max_universe)


def verify_countermodel(
    syl: Syllogism,
    model: FiniteModel,
    policy: ImportPolicy = ImportPolicy.NO_IMPORT,
    scope: ImportScope = ImportScope.SUBJECTS_ONLY,
    semantics: Optional[SetSemantics] = None,
) -> bool:
    """用 evaluate_statement 逐条复核反模型（与 check_validity 相同的未定义规则）。"""
    policy = ImportPolicy(policy)
    prepared = _prepare(syl, policy, scope)
    for k in prepared.atom_keys():
        if k.startswith("{") and len(model.as_dict().get(k, ())) != 1:
            return False
    for p in prepared.premises:
        try:
            if not evaluate_statement(model, p, semantics):
                return False
        except UndefinedProportion:
            return False
        if policy == ImportPolicy.UNIVERSAL_IMPORT and p.quantifier.kind in UNIVERSAL_KINDS and not p.existence:
            if not model.extension(p.subject):
                return False
    try:
        return not evaluate_statement(model, prepared.conclusion, semantics)
    except UndefinedProportion:
        return True


# ---------------- mood census ----------------

_LETTER_QUANTIFIER = {"A": ALL, "E": NO, "I": SOME, "O": SOME_NOT}
# 各格中 (大前提, 小前提) 的 (主项, 谓项)
_FIGURE_LAYOUT = {
    Figure.I: (("M", "P"), ("S", "M")),
    Figure.II: (("P", "M"), ("S", "M")),
    Figure.III: (("M", "P"), ("M", "S")),
    Figure.IV: (("P", "M"), ("M", "S")),
}


@dataclass(frozen=True)
class MoodResult:
    figure: Figure
    mood: str
    verdict: Verdict
    syllogism: Syllogism


def classical_syllogism(figure: Figure, mood: str) -> Syllogism:
    if len(mood) != 3 or any(ch not in _LETTER_QUANTIFIER for ch in mood.upper()):
        raise InvariantViolation(f"mood must be three of A/E/I/O, got {mood!r}")
    mood = mood.upper()
    (maj_s, maj_p), (min_s, min_p) = _FIGURE_LAYOUT[Figure(figure)]
    major = Statement(_LETTER_QUANTIFIER[mood[0]], Term(maj_s), Term(maj_p))
    minor = Statement(_LETTER_QUANTIFIER[mood[1]], Term(min_s), Term(min_p))
    conclusion = Statement(_LETTER_QUANTIFIER[mood[2]], Term("S"), Term("P"))
    return Syllogism((major, minor), conclusion)


def enumerate_classical_moods(
    policy: ImportPolicy = ImportPolicy.NO_IMPORT,
    max_universe: int = 5,
    scope: ImportScope = ImportScope.ALL_TERMS,
    semantics: Optional[SetSemantics] = None,
    progress: bool = False,
) -> list[MoodResult]:
    combos = [(f, "".join(m)) for f in Figure for m in itertools.product("AEIO", repeat=3)]
    results: list[MoodResult] = []
    for figure, mood in tqdm(combos, desc="moods", disable=not progress):
        syl = classical_syllogism(figure, mood)
        verdict = check_validity(syl, policy, max_universe, scope=scope, semantics=semantics)
        results.append(MoodResult(figure, mood, verdict, syl))
    logger.info(f"普查完成: {sum(r.verdict.is_valid for r in results)}/{len(results)} 有效")
    return results


def census_frame(results: Sequence[MoodResult]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {"figure": r.figure.value, "mood": r.mood, "verdict": r.verdict.kind.value, "valid": r.verdict.is_valid}
            for r in results
        ],
        columns=["figure", "mood", "verdict", "valid"],
    )


def census_summary(df: pd.DataFrame) -> pd.DataFrame:
    """每格有效式数目与名单。"""
    valid = df[df["valid"]]
    summary = (
        valid.groupby("figure", sort=False)["mood"]
        .agg(count="count", moods=lambda s: ",".join(s))
        .reindex([f.value for f in Figure], fill_value=0)
    )
    summary["moods"] = summary["moods"].replace(0, "")
    return summary.reset_index()


# ---------------- square of opposition ----------------

class LsoRelation(str, Enum):
    CONTRADICTORY = "contradictory"
    CONTRARY = "contrary"
    SUBCONTRARY = "subcontrary"
    SUBALTERN = "subaltern"


class Square(str, Enum):
    CLASSICAL = "classical"
    MODERN = "modern"


def _pair(a: QuantifierKind, b: QuantifierKind) -> frozenset[QuantifierKind]:
    return frozenset({a, b})


_K = QuantifierKind
LSO_TABLES: dict[Square, dict[frozenset[QuantifierKind], LsoRelation]] = {
    Square.CLASSICAL: {
        _pair(_K.ALL, _K.SOME_NOT): LsoRelation.CONTRADICTORY,
        _pair(_K.NO, _K.SOME): LsoRelation.CONTRADICTORY,
        _pair(_K.ALL, _K.NO): LsoRelation.CONTRARY,
        _pair(_K.SOME, _K.SOME_NOT): LsoRelation.SUBCONTRARY,
        _pair(_K.ALL, _K.SOME): LsoRelation.SUBALTERN,
        _pair(_K.NO, _K.SOME_NOT): LsoRelation.SUBALTERN,
    },
    # 无存在含义时只保留矛盾关系
    Square.MODERN: {
        _pair(_K.ALL, _K.SOME_NOT): LsoRelation.CONTRADICTORY,
        _pair(_K.NO, _K.SOME): LsoRelation.CONTRADICTORY,
    },
}


def lso_relation(
    s1: Statement,
    s2: Statement,
    square: Square = Square.CLASSICAL,
    tables: Optional[Mapping[Square, Mapping[frozenset[QuantifierKind], LsoRelation]]] = None,
) -> Optional[LsoRelation]:
    """两条经典陈述在对当方阵中的关系；非经典量词返回 None。"""
    if not (s1.quantifier.is_classical and s2.quantifier.is_classical):
        return None
    if (s1.subject, s1.predicate) != (s2.subject, s2.predicate):
        raise TermMismatch(
            f"square relations need the same subject and predicate: "
            f"({s1.subject.name}, {s1.predicate.name}) vs ({s2.subject.name}, {s2.predicate.name})"
        )
    table = (tables or LSO_TABLES)[Square(square)]
    return table.get(_pair(s1.quantifier.kind, s2.quantifier.kind))
