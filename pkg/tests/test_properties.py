"""随机化性质测试（hypothesis，每组 1000 例）。"""
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from src.conditional_engine import Informativeness, heuristic_conclude, prob_interpret
from src.core_model import (
    ALL,
    FEW,
    MOST,
    NO,
    SOME,
    SOME_NOT,
    Figure,
    FiniteModel,
    ImportPolicy,
    ImportScope,
    ProbQuantifierConfig,
    Quantifier,
    Statement,
    Syllogism,
    Term,
    VerdictKind,
)
from src.numeric_engine import (
    ProportionConstraint,
    ProportionGoal,
    alpha_cut,
    fuzzy_conclude_qep,
    interval_conclude,
)
from src.set_engine import (
    LsoRelation,
    check_validity,
    classical_syllogism,
    evaluate_statement,
    lso_relation,
    verify_countermodel,
)
from src.transforms import add_import_premises

PROPERTY = settings(max_examples=1000, deadline=None)

S, P = Term("s"), Term("p")


@st.composite
def models(draw, max_size=4):
    n = draw(st.integers(1, max_size))
    elems = st.frozensets(st.integers(0, n - 1))
    return FiniteModel.from_mapping(range(n), {"s": draw(elems), "p": draw(elems)})


def _holds(model, q, negated=False):
    return evaluate_statement(model, Statement(q, S, P, negated))


# ---------------- set engine ----------------

QUANTIFIERS = [ALL, NO, SOME, SOME_NOT, MOST, FEW, Quantifier.all_but(1), Quantifier.at_least(2)]


@st.composite
def syllogisms(draw):
    base = classical_syllogism(draw(st.sampled_from(list(Figure))), "AAA")
    q1, q2, q3 = (draw(st.sampled_from(QUANTIFIERS)) for _ in range(3))
    major, minor = base.premises
    return Syllogism(
        (Statement(q1, major.subject, major.predicate), Statement(q2, minor.subject, minor.predicate)),
        Statement(q3, base.conclusion.subject, base.conclusion.predicate),
    )


@PROPERTY
@given(syllogisms(), st.sampled_from(list(ImportPolicy)), st.sampled_from(list(ImportScope)))
def test_every_countermodel_reverifies(syl, policy, scope):
    v = check_validity(syl, policy, 3, scope)
    if v.kind == VerdictKind.COUNTER:
        assert verify_countermodel(syl, v.counter_model, policy, scope)


@PROPERTY
@given(syllogisms(), st.sampled_from(list(ImportScope)))
def test_import_premises_keep_validity(syl, scope):
    imported = add_import_premises(syl, scope)
    assert imported.conclusion == syl.conclusion
    assert set(syl.premises) <= set(imported.premises)
    if check_validity(syl, ImportPolicy.NO_IMPORT, 3).is_valid:
        assert check_validity(imported, ImportPolicy.NO_IMPORT, 3).is_valid


@PROPERTY
@given(models())
def test_contradictory_pairs_disagree(model):
    for a, b in ((ALL, SOME_NOT), (NO, SOME)):
        assert lso_relation(Statement(a, S, P), Statement(b, S, P)) == LsoRelation.CONTRADICTORY
        assert _holds(model, a) != _holds(model, b)


@PROPERTY
@given(models())
def test_all_implies_some_exactly_on_nonempty_subjects(model):
    nonempty = bool(model.extension(S))
    if _holds(model, ALL):
        assert _holds(model, SOME) == nonempty


@PROPERTY
@given(models(max_size=6).filter(lambda m: bool(m.extension(S))))
def test_most_is_more_than_half(model):
    s, p = model.extension(S), model.extension(P)
    assert _holds(model, MOST) == (len(s & p) > len(s - p))


@PROPERTY
@given(models())
def test_all_but_zero_is_all(model):
    assert _holds(model, Quantifier.all_but(0)) == _holds(model, ALL)


# ---------------- interval / fuzzy ----------------

GRID = st.integers(0, 4).map(lambda k: Fraction(k, 4))
SINGLE, YOUNG, STUDENTS = Term("single"), Term("young"), Term("students")
GOAL = ProportionGoal(((YOUNG, True), (STUDENTS, True)), SINGLE)


@st.composite
def widened_interval(draw):
    lo, hi = sorted((draw(GRID), draw(GRID)))
    wlo = lo - draw(st.integers(0, 4).map(lambda k: Fraction(k, 4)))
    whi = hi + draw(st.integers(0, 4).map(lambda k: Fraction(k, 4)))
    return Quantifier.interval(lo, hi), Quantifier.interval(max(wlo, Fraction(0)), min(whi, Fraction(1)))


def _constraints(b_young, b_students):
    return [
        ProportionConstraint(ProportionGoal(((YOUNG, True),), SINGLE), b_young),
        ProportionConstraint(ProportionGoal(((STUDENTS, True),), SINGLE), b_students),
    ]


@PROPERTY
@given(widened_interval(), widened_interval(), st.sampled_from(["auto", "exhaustive"]))
def test_interval_conclusion_is_monotone_under_widening(young, students, method):
    narrow = interval_conclude(_constraints(young[0], students[0]), GOAL, 8, method).interval
    wide = interval_conclude(_constraints(young[1], students[1]), GOAL, 8, method).interval
    assert wide.lo <= narrow.lo and narrow.hi <= wide.hi


@st.composite
def trapezoids(draw):
    a, c, d, b = sorted(draw(st.fractions(min_value=0, max_value=1, max_denominator=20)) for _ in range(4))
    return Quantifier.trapezoid(a, c, d, b)


@PROPERTY
@given(st.lists(trapezoids(), min_size=1, max_size=3))
def test_qep_alpha_cuts_are_nested(traps):
    res = fuzzy_conclude_qep(traps, alpha_levels=["0.1", "0.3", "0.5", "0.7", "1"])
    cuts = [(lo, hi) for _, lo, hi in res.cuts]
    for (lo1, hi1), (lo2, hi2) in zip(cuts, cuts[1:]):
        assert lo1 <= lo2 <= hi2 <= hi1
    assert res.support[0] <= cuts[0][0] and cuts[0][1] <= res.support[1]
    if len(traps) == 1:
        assert res.cut("0.5") == alpha_cut(traps[0], "0.5")


# ---------------- conditional engine ----------------


@PROPERTY
@given(models(max_size=5).filter(lambda m: bool(m.extension(S))), st.sampled_from([ALL, NO, SOME, SOME_NOT]))
def test_conditional_reading_agrees_with_frequencies(model, q):
    s, p = model.extension(S), model.extension(P)
    stmt = Statement(q, S, P)
    assert prob_interpret(stmt).holds(Fraction(len(s & p), len(s))) == evaluate_statement(model, stmt)


TERMS = [Term("a"), Term("b"), Term("c")]


@st.composite
def chained_premises(draw):
    m, e1, e2 = draw(st.permutations(TERMS))
    kinds = [ALL, MOST, FEW, SOME, NO, SOME_NOT]
    p1 = Statement(draw(st.sampled_from(kinds)), *(draw(st.sampled_from([(m, e1), (e1, m)]))))
    p2 = Statement(draw(st.sampled_from(kinds)), *(draw(st.sampled_from([(m, e2), (e2, m)]))))
    return p1, p2


@PROPERTY
@given(chained_premises())
def test_heuristic_quantifier_is_never_more_informative(premises):
    order = Informativeness()
    res = heuristic_conclude(premises, order)
    q = res.statement.quantifier.kind
    for p in premises:
        assert not order.more_informative(q, p.quantifier.kind)
    assert res.statement.subject != res.statement.predicate


@PROPERTY
@given(st.fractions(min_value=0, max_value=Fraction(1, 2), max_denominator=1000).filter(lambda e: 0 < e < Fraction(1, 2)))
def test_most_and_few_bands_are_disjoint(eps):
    cfg = ProbQuantifierConfig(eps)
    most = prob_interpret(Statement(MOST, S, P), cfg)
    few = prob_interpret(Statement(FEW, S, P), cfg)
    for p in (eps, 1 - eps, Fraction(1, 2)):
        assert not (most.holds(p) and few.holds(p))
