# -*- coding: utf-8 -*-
"""
陈述级改写（两种引擎共用）：
- desugar_singular：单称陈述 "Socrates is P" -> All({Socrates}, P)，单元素项在枚举时 |外延| = 1
- add_import_premises：为作用域内每个项追加存在前提 "there is at least one T"
"""
from __future__ import annotations

from src.core_model import (
    ImportScope,
    Statement,
    Syllogism,
    Term,
    existence_statement,
)


def _singleton_of(term: Term) -> Term:
    return Term(term.name, singleton=True, label=term.label)


def desugar_singular(stmt: Statement) -> Statement:
    if not stmt.singular:
        return stmt
    return Statement(stmt.quantifier, _singleton_of(stmt.subject), stmt.predicate, stmt.predicate_negated)


def desugar_syllogism(syl: Syllogism) -> Syllogism:
    return Syllogism(tuple(desugar_singular(p) for p in syl.premises), desugar_singular(syl.conclusion))


def _scope_terms(syl: Syllogism, scope: ImportScope) -> list[Term]:
    out: list[Term] = []
    if scope == ImportScope.SUBJECTS_ONLY:
        candidates = [p.subject for p in syl.content_premises]
    else:
        candidates = [t for st in syl.statements if not st.existence for t in st.terms]
    for t in candidates:
        # 单元素项本身已蕴含非空
        if t.singleton or t.proper or t in out:
            continue
        out.append(t)
    return out


def add_import_premises(syl: Syllogism, scope: ImportScope = ImportScope.SUBJECTS_ONLY) -> Syllogism:
    premises = list(syl.premises)
    for t in _scope_terms(syl, scope):
        ex = existence_statement(t)
        if ex not in premises:
            premises.append(ex)
    return Syllogism(tuple(premises), syl.conclusion)
