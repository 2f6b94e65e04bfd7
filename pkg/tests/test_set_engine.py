from fractions import Fraction

import numpy as np
import pytest

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
    Quantifier,
    Statement,
    Syllogism,
    Term,
    VerdictKind,
)
from src.errors import TermMismatch, UndefinedProportion
from src.parser import parse_statement, parse_syllogism_file
from src.quantifier_config import SetSemantics
from src.set_engine import (
    LsoRelation,
    Square,
    census_frame,
    census_summary,
    check_validity,
    classical_syllogism,
    enumerate_classical_moods,
    evaluate_statement,
    lso_relation,
    model_from_vector,
    region_vectors,
    verify_countermodel,
)


def _model(s, p, universe=None):
    universe = universe if universe is not None else set(s) | set(p) | {99}
    return FiniteModel.from_mapping(universe, {"s": s, "p": p})


def _st(q, neg=False):
    return Statement(q, Term("s"), Term("p"), neg)


def test_all_with_empty_subject_is_true():
    assert evaluate_statement(_model([], [1, 2]), _st(ALL))
    assert not evaluate_statement(_model([], [1, 2]), _st(SOME))


def test_most_is_more_than_half():
    assert evaluate_statement(_model([1, 2, 3], [1, 2]), _st(MOST))
    assert not evaluate_statement(_model([1, 2], [1]), _st(MOST))


def test_most_on_empty_subject_is_undefined():
    with pytest.raises(UndefinedProportion):
        evaluate_statement(_model([], [1]), _st(MOST))


def test_all_but_counts_exceptions():
    m = _model([1, 2, 3, 4, 5], [1, 2])
    assert evaluate_statement(m, _st(Quantifier.all_but(3)))
    assert not evaluate_statement(m, _st(Quantifier.all_but(2)))


def test_all_but_zero_is_all():
    assert evaluate_statement(_model([1, 2], [1, 2, 3]), _st(Quantifier.all_but(0)))
    assert not evaluate_statement(_model([1, 2], [1]), _st(Quantifier.all_but(0)))


def test_negated_predicate_uses_complement():
    m = _model([1, 2, 3], [1], universe={1, 2, 3, 4})
    assert evaluate_statement(m, _st(MOST, neg=True))
    assert not evaluate_statement(m, _st(MOST))


def test_some_not_and_counted():
    m = _model([1, 2, 3], [1, 2])
    assert evaluate_statement(m, _st(SOME_NOT))
    assert evaluate_statement(m, _st(Quantifier.exactly(2)))
    assert evaluate_statement(m, _st(Quantifier.at_least(2)))
    assert not evaluate_statement(m, _st(Quantifier.at_least(3)))


def test_thresholds_for_few_and_almost_all():
    m = _model([1, 2, 3, 4, 5], [1])
    assert evaluate_statement(m, _st(FEW))
    assert not evaluate_statement(_model([1, 2, 3, 4, 5], [1, 2]), _st(FEW))
    assert evaluate_statement(_model([1, 2, 3, 4, 5], [1, 2]), _st(FEW), SetSemantics(few=Fraction(2, 5)))
    many_world = _model(list(range(20)), list(range(19)))
    assert evaluate_statement(many_world, _st(Quantifier.of("almost_all")))


def test_interval_and_trapezoid_truth():
    m = _model([1, 2, 3, 4], [1])
    assert evaluate_statement(m, _st(Quantifier.interval("0.2", "0.3")))
    assert not evaluate_statement(m, _st(Quantifier.interval("0.3", "0.5")))
    assert evaluate_statement(m, _st(Quantifier.trapezoid("0.2", "0.3", "0.4", "0.5")))


def test_region_vectors_lexicographic():
    v = region_vectors(3, 2)
    assert v.shape == (6, 3)
    assert (v.sum(axis=1) == 2).all()
    assert v[0].tolist() == [0, 0, 2]
    assert v[-1].tolist() == [2, 0, 0]
    assert not v.flags.writeable


def test_model_from_vector():
    m = model_from_vector(["a", "b"], np.array([1, 0, 0, 2]))
    assert m.universe == frozenset({0, 1, 2})
    assert m.as_dict() == {"a": frozenset({1, 2}), "b": frozenset({1, 2})}


BARBARA = "All human beings are mortal\nAll Greeks are human beings\n---\nAll Greeks are mortal\n"
BARBARI = "All DT are MT\nAll NT are DT\n---\nSome NT are MT\n"
INTERMEDIATE = "All students are tall\nMost young people are students\n---\nMost young people are tall\n"
SINGULAR = "All human beings are mortal\nSocrates is one of the human beings\n---\nSocrates is mortal\n"


@pytest.mark.parametrize("policy", list(ImportPolicy))
def test_barbara_valid_under_every_policy(policy):
    v = check_validity(parse_syllogism_file(BARBARA), policy, 6)
    assert v.kind == VerdictKind.VALID and v.bound == 6


def test_barbari_needs_import():
    syl = parse_syllogism_file(BARBARI)
    v = check_validity(syl, ImportPolicy.NO_IMPORT, 6)
    assert v.kind == VerdictKind.COUNTER
    assert v.counter_model.as_dict()["nt"] == frozenset()
    assert len(v.counter_model.universe) == 1
    assert verify_countermodel(syl, v.counter_model)
    assert check_validity(syl, ImportPolicy.EXPLICIT_PREMISE, 6).is_valid
    assert check_validity(syl, ImportPolicy.UNIVERSAL_IMPORT, 6).is_valid


def test_intermediate_crisp_most_valid_to_seven():
    v = check_validity(parse_syllogism_file(INTERMEDIATE), ImportPolicy.NO_IMPORT, 7)
    assert v.is_valid and v.bound == 7


def test_most_does_not_chain():
    syl = parse_syllogism_file("Most students are tall\nMost young people are students\n---\nMost young people are tall\n")
    v = check_validity(syl, ImportPolicy.NO_IMPORT, 6)
    assert v.kind == VerdictKind.COUNTER
    assert verify_countermodel(syl, v.counter_model)


def test_singular_syllogism_is_valid():
    v = check_validity(parse_syllogism_file(SINGULAR), ImportPolicy.NO_IMPORT, 6)
    assert v.is_valid


def test_singleton_has_exactly_one_member_in_countermodels():
    syl = parse_syllogism_file("Some human beings are mortal\nSocrates is one of the human beings\n---\nSocrates is mortal\n")
    v = check_validity(syl, ImportPolicy.NO_IMPORT, 6)
    assert v.kind == VerdictKind.COUNTER
    assert len(v.counter_model.as_dict()["{socrates}"]) == 1


def test_unsatisfiable_premises_are_undetermined():
    syl = Syllogism(
        (
            Statement(Quantifier.exactly(2), Term("a"), Term("b")),
            Statement(NO, Term("a"), Term("b")),
        ),
        Statement(SOME, Term("b"), Term("c")),
    )
    v = check_validity(syl, ImportPolicy.NO_IMPORT, 4)
    assert v.kind == VerdictKind.UNDETERMINED and v.bound == 4


def test_undefined_conclusion_counts_as_countermodel():
    syl = Syllogism((Statement(ALL, Term("a"), Term("b")),), Statement(MOST, Term("a"), Term("b")))
    v = check_validity(syl, ImportPolicy.NO_IMPORT, 3)
    assert v.kind == VerdictKind.COUNTER
    assert v.counter_model.as_dict()["a"] == frozenset()


def test_classical_syllogism_layout():
    syl = classical_syllogism(Figure.IV, "AAI")
    assert syl.figure() == Figure.IV
    assert syl.mood() == "AAI"


def test_census_counts():
    plain = enumerate_classical_moods(ImportPolicy.NO_IMPORT, 5)
    imported = enumerate_classical_moods(ImportPolicy.EXPLICIT_PREMISE, 5, ImportScope.ALL_TERMS)
    assert len(plain) == 256
    assert sum(r.verdict.is_valid for r in plain) == 15
    assert sum(r.verdict.is_valid for r in imported) == 24
    for results in (plain, imported):
        aaa1 = next(r for r in results if r.figure == Figure.I and r.mood == "AAA")
        assert aaa1.verdict.is_valid


def test_census_frame_summary():
    df = census_frame(enumerate_classical_moods(ImportPolicy.NO_IMPORT, 4))
    summary = census_summary(df)
    assert list(summary["figure"]) == ["I", "II", "III", "IV"]
    assert int(summary["count"].sum()) == 15
    assert "AAA" in summary.loc[summary["figure"] == "I", "moods"].iloc[0]


def test_lso_classical_square():
    a = parse_statement("All S are P")
    o = parse_statement("Some S are not P")
    i = parse_statement("Some S are P")
    e = parse_statement("No S are P")
    assert lso_relation(a, o) == LsoRelation.CONTRADICTORY
    assert lso_relation(e, i) == LsoRelation.CONTRADICTORY
    assert lso_relation(a, e) == LsoRelation.CONTRARY
    assert lso_relation(i, o) == LsoRelation.SUBCONTRARY
    assert lso_relation(a, i) == LsoRelation.SUBALTERN
    assert lso_relation(e, o) == LsoRelation.SUBALTERN
    assert lso_relation(a, a) is None


def test_lso_modern_square_drops_subalternation():
    a = parse_statement("All S are P")
    assert lso_relation(a, parse_statement("Some S are P"), Square.MODERN) is None
    assert lso_relation(a, parse_statement("Some S are not P"), Square.MODERN) == LsoRelation.CONTRADICTORY


def test_lso_term_mismatch_and_intermediate():
    with pytest.raises(TermMismatch):
        lso_relation(parse_statement("All S are P"), parse_statement("Some S are Q"))
    assert lso_relation(parse_statement("Most S are P"), parse_statement("Few S are P")) is None


def test_lso_tables_can_be_swapped():
    custom = {Square.CLASSICAL: {frozenset({ALL.kind, SOME.kind}): LsoRelation.CONTRARY}}
    assert lso_relation(parse_statement("All S are P"), parse_statement("Some S are P"), tables=custom) == LsoRelation.CONTRARY
