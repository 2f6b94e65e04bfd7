# -*- coding: utf-8 -*-
"""
核心领域类型（两种解释引擎共享，不含推理逻辑）：
- Term：项（大小写/空白规范化；X and Y 表示合取项；专名与单元素集合单独标记）
- Quantifier：量词标签变体（经典 / 中间 / 绝对 / 例外 / 区间 / 梯形模糊数）
- Statement：量化陈述 Q S are (not) P，构造时即规范化（some+not -> some_not 等）
- Syllogism：前提序列 + 结论，可判定经典格（Figure I-IV）与式（AAA 等）
- FiniteModel：有限论域 + 每个原子项的外延
- ImportPolicy / ImportScope / Verdict / ProbQuantifierConfig
- JSON 序列化：陈述 {"q","s","p","neg"}，有理数 {"num","den"}

所有比例与概率均用 fractions.Fraction 表示，保证与论文数值精确比较。
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional

from src.errors import InvariantViolation, StructureError


# ---------------- rationals ----------------

def as_fraction(x: Any) -> Fraction:
    """把 int / str("0.3" 或 "3/10") / float / {"num","den"} 转成 Fraction。float 经 str 转换，避免二进制误差。"""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvariantViolation(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InvariantViolation(f"not a rational: {x!r}") from e
    if isinstance(x, Mapping) and "num" in x and "den" in x:
        if int(x["den"]) == 0:
            raise InvariantViolation("rational with zero denominator")
        return Fraction(int(x["num"]), int(x["den"]))
    raise InvariantViolation(f"not a rational: {x!r}")


def format_rational(f: Fraction) -> str:
    """有限小数输出十进制（3/10 -> 0.3），否则输出 p/q。"""
    den = f.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        return f"{f.numerator}/{f.denominator}"
    with localcontext() as ctx:
        ctx.prec = 50
        d = Decimal(f.numerator) / Decimal(f.denominator)
    s = format(d.normalize(), "f")
    return s


def fraction_to_json(f: Fraction) -> dict:
    return {"num": f.numerator, "den": f.denominator}


def _in_unit(x: Fraction) -> bool:
    return Fraction(0) <= x <= Fraction(1)


# ---------------- terms ----------------

def normalize_name(name: str) -> str:
    return " ".join(str(name).split()).lower()


@dataclass(frozen=True)
class Term:
    name: str
    singleton: bool = False
    proper: bool = False
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        raw = " ".join(str(self.name).split())
        if raw.startswith("{") and raw.endswith("}"):
            raw = raw[1:-1].strip()
            object.__setattr__(self, "singleton", True)
        norm = raw.lower()
        if not norm:
            raise InvariantViolation("term name is empty")
        if self.singleton and self.proper:
            raise InvariantViolation(f"term {raw!r} cannot be both proper name and singleton")
        object.__setattr__(self, "name", norm)
        if not self.label:
            object.__setattr__(self, "label", raw)

    @property
    def key(self) -> str:
        """模型外延的键。单元素项加命名空间 {name}，避免与同名普通名词冲突。"""
        return "{" + self.name + "}" if self.singleton else self.name

    @property
    def is_conjunction(self) -> bool:
        return not self.singleton and not self.proper and " and " in self.name

    @property
    def conjuncts(self) -> tuple["Term", ...]:
        if not self.is_conjunction:
            return (self,)
        names = self.name.split(" and ")
        labels = self.label.split(" and ")
        if len(labels) != len(names):
            labels = names
        return tuple(Term(p, label=lab) for p, lab in zip(names, labels))

    @property
    def atom_keys(self) -> tuple[str, ...]:
        return tuple(t.key for t in self.conjuncts)

    def same_atoms(self, other: "Term") -> bool:
        return set(self.atom_keys) == set(other.atom_keys)

    def display(self) -> str:
        if self.singleton:
            return "{" + self.label + "}"
        return self.label


def conjoin(*terms: Term) -> Term:
    names: list[str] = []
    labels: list[str] = []
    for t in terms:
        for c in t.conjuncts:
            if c.name not in names:
                names.append(c.name)
                labels.append(c.label)
    return Term(" and ".join(names), label=" and ".join(labels))


def as_term(x: Term | str) -> Term:
    return x if isinstance(x, Term) else Term(x)


# ---------------- quantifiers ----------------

class QuantifierKind(str, Enum):
    ALL = "all"
    NO = "no"
    SOME = "some"
    SOME_NOT = "some_not"
    MOST = "most"
    MANY = "many"
    FEW = "few"
    ALMOST_ALL = "almost_all"
    ALL_BUT = "all_but"
    EXACTLY = "exactly"
    AT_LEAST = "at_least"
    INTERVAL = "interval"
    TRAPEZOID = "trapezoid"


CLASSICAL_KINDS = frozenset({QuantifierKind.ALL, QuantifierKind.NO, QuantifierKind.SOME, QuantifierKind.SOME_NOT})
INTERMEDIATE_KINDS = frozenset({QuantifierKind.MOST, QuantifierKind.MANY, QuantifierKind.FEW, QuantifierKind.ALMOST_ALL})
COUNTED_KINDS = frozenset({QuantifierKind.ALL_BUT, QuantifierKind.EXACTLY, QuantifierKind.AT_LEAST})
PROPORTIONAL_KINDS = INTERMEDIATE_KINDS | {QuantifierKind.INTERVAL, QuantifierKind.TRAPEZOID}

MOOD_LETTERS = {
    QuantifierKind.ALL: "A",
    QuantifierKind.NO: "E",
    QuantifierKind.SOME: "I",
    QuantifierKind.SOME_NOT: "O",
}


@dataclass(frozen=True)
class Quantifier:
    kind: QuantifierKind
    k: Optional[int] = None
    params: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        kind = QuantifierKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind in COUNTED_KINDS:
            if self.k is None or isinstance(self.k, bool) or int(self.k) != self.k or self.k < 0:
                raise InvariantViolation(f"{kind.value} needs a non-negative integer, got {self.k!r}")
            object.__setattr__(self, "k", int(self.k))
        elif self.k is not None:
            raise InvariantViolation(f"{kind.value} takes no integer argument")

        params = tuple(as_fraction(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if kind == QuantifierKind.INTERVAL:
            if len(params) != 2:
                raise InvariantViolation("interval needs [lo, hi]")
            lo, hi = params
            if not (_in_unit(lo) and _in_unit(hi)):
                raise InvariantViolation(f"interval bounds outside [0,1]: [{lo}, {hi}]")
            if lo > hi:
                raise InvariantViolation(f"interval lo > hi: [{lo}, {hi}]")
        elif kind == QuantifierKind.TRAPEZOID:
            if len(params) != 4:
                raise InvariantViolation("trapezoid needs [a, c, d, b]")
            if not all(_in_unit(p) for p in params):
                raise InvariantViolation(f"trapezoid outside [0,1]: {list(map(str, params))}")
            a, c, d, b = params
            if not (a <= c <= d <= b):
                raise InvariantViolation(f"trapezoid ordering a<=c<=d<=b violated: {[str(p) for p in params]}")
        elif params:
            raise InvariantViolation(f"{kind.value} takes no rational parameters")

    # --- constructors ---
    @classmethod
    def of(cls, kind: QuantifierKind | str) -> "Quantifier":
        return cls(QuantifierKind(kind))

    @classmethod
    def all_but(cls, k: int) -> "Quantifier":
        return cls(QuantifierKind.ALL_BUT, k=k)

    @classmethod
    def exactly(cls, k: int) -> "Quantifier":
        return cls(QuantifierKind.EXACTLY, k=k)

    @classmethod
    def at_least(cls, k: int) -> "Quantifier":
        return cls(QuantifierKind.AT_LEAST, k=k)

    @classmethod
    def interval(cls, lo: Any, hi: Any) -> "Quantifier":
        return cls(QuantifierKind.INTERVAL, params=(as_fraction(lo), as_fraction(hi)))

    @classmethod
    def trapezoid(cls, a: Any, c: Any, d: Any, b: Any) -> "Quantifier":
        return cls(QuantifierKind.TRAPEZOID, params=tuple(as_fraction(x) for x in (a, c, d, b)))

    # --- views ---
    @property
    def lo(self) -> Fraction:
        if self.kind == QuantifierKind.INTERVAL:
            return self.params[0]
        if self.kind == QuantifierKind.TRAPEZOID:
            return self.params[0]
        raise InvariantViolation(f"{self.kind.value} has no interval bounds")

    @property
    def hi(self) -> Fraction:
        if self.kind == QuantifierKind.INTERVAL:
            return self.params[1]
        if self.kind == QuantifierKind.TRAPEZOID:
            return self.params[3]
        raise InvariantViolation(f"{self.kind.value} has no interval bounds")

    @property
    def kernel(self) -> tuple[Fraction, Fraction]:
        if self.kind != QuantifierKind.TRAPEZOID:
            raise InvariantViolation("kernel is only defined for trapezoids")
        return self.params[1], self.params[2]

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    @property
    def is_classical(self) -> bool:
        return self.kind in CLASSICAL_KINDS

    @property
    def is_proportional(self) -> bool:
        return self.kind in PROPORTIONAL_KINDS

    @property
    def mood_letter(self) -> Optional[str]:
        return MOOD_LETTERS.get(self.kind)

    def label(self) -> str:
        """短标签：All / Some-not / All-but-3 / [0.3,0.5] ..."""
        kind = self.kind
        if kind == QuantifierKind.SOME_NOT:
            return "Some-not"
        if kind == QuantifierKind.ALMOST_ALL:
            return "Almost-all"
        if kind in COUNTED_KINDS:
            return f"{kind.value.replace('_', '-').capitalize()}-{self.k}"
        if kind in (QuantifierKind.INTERVAL, QuantifierKind.TRAPEZOID):
            return "[" + ",".join(format_rational(p) for p in self.params) + "]"
        return kind.value.capitalize()


ALL = Quantifier(QuantifierKind.ALL)
NO = Quantifier(QuantifierKind.NO)
SOME = Quantifier(QuantifierKind.SOME)
SOME_NOT = Quantifier(QuantifierKind.SOME_NOT)
MOST = Quantifier(QuantifierKind.MOST)
MANY = Quantifier(QuantifierKind.MANY)
FEW = Quantifier(QuantifierKind.FEW)
ALMOST_ALL = Quantifier(QuantifierKind.ALMOST_ALL)


# ---------------- statements ----------------

@dataclass(frozen=True)
class Statement:
    """Q S are (not) P。构造即规范化，规范形式对每个逻辑陈述唯一。

    existence=True 标记机器生成的存在前提 "there is at least one T"（AtLeast(1)(T,T)），
    仅此情形允许 subject == predicate。
    """

    quantifier: Quantifier
    subject: Term
    predicate: Term
    predicate_negated: bool = False
    existence: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "subject", as_term(self.subject))
        object.__setattr__(self, "predicate", as_term(self.predicate))
        q = self.quantifier
        neg = bool(self.predicate_negated)
        if neg:
            if q.kind == QuantifierKind.SOME:
                q, neg = SOME_NOT, False
            elif q.kind == QuantifierKind.ALL:
                q, neg = NO, False
            elif q.kind == QuantifierKind.NO:
                q, neg = ALL, False
            elif q.kind == QuantifierKind.SOME_NOT:
                raise InvariantViolation("some_not cannot carry a second negation")
        object.__setattr__(self, "quantifier", q)
        object.__setattr__(self, "predicate_negated", neg)

        if self.existence:
            if q != Quantifier.at_least(1) or self.subject != self.predicate or neg:
                raise InvariantViolation("existence premise must be AtLeast(1)(T, T)")
        elif self.subject == self.predicate:
            raise InvariantViolation(f"subject and predicate are the same term: {self.subject.name!r}")
        if self.predicate.proper:
            raise InvariantViolation("a proper name can only appear as subject of a singular statement")
        if self.subject.proper and q.kind not in (QuantifierKind.ALL, QuantifierKind.NO):
            raise InvariantViolation("a singular statement reads as 'Name is (not) P'")

    @property
    def singular(self) -> bool:
        return self.subject.proper

    @property
    def terms(self) -> tuple[Term, Term]:
        return self.subject, self.predicate

    @property
    def atom_keys(self) -> tuple[str, ...]:
        out: list[str] = []
        for t in self.terms:
            for k in t.atom_keys:
                if k not in out:
                    out.append(k)
        return tuple(out)


def canonicalize(
    quantifier: Quantifier | Statement,
    subject: Term | str | None = None,
    predicate: Term | str | None = None,
    negated: bool = False,
) -> Statement:
    """返回规范 Statement；幂等：canonicalize(canonicalize(x)) == canonicalize(x)。"""
    if isinstance(quantifier, Statement):
        s = quantifier
        return Statement(s.quantifier, s.subject, s.predicate, s.predicate_negated, s.existence)
    if subject is None or predicate is None:
        raise InvariantViolation("subject and predicate are required")
    return Statement(quantifier, as_term(subject), as_term(predicate), negated)


def existence_statement(term: Term) -> Statement:
    return Statement(Quantifier.at_least(1), term, term, existence=True)


# ---------------- syllogisms ----------------

class Figure(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True)
class Syllogism:
    premises: tuple[Statement, ...]
    conclusion: Statement

    def __post_init__(self) -> None:
        premises = tuple(self.premises)
        if len(premises) < 1:
            raise StructureError("a syllogism needs at least one premise")
        object.__setattr__(self, "premises", premises)

    @property
    def statements(self) -> tuple[Statement, ...]:
        return self.premises + (self.conclusion,)

    @property
    def content_premises(self) -> tuple[Statement, ...]:
        return tuple(p for p in self.premises if not p.existence)

    def atom_keys(self) -> tuple[str, ...]:
        """出现的原子项键（按首次出现顺序：前提，然后结论）。"""
        out: list[str] = []
        for st in self.statements:
            for k in st.atom_keys:
                if k not in out:
                    out.append(k)
        return tuple(out)

    def atom_terms(self) -> tuple[Term, ...]:
        out: dict[str, Term] = {}
        for st in self.statements:
            for t in st.terms:
                for c in t.conjuncts:
                    out.setdefault(c.key, c)
        return tuple(out.values())

    def is_classical(self) -> bool:
        try:
            self._classical_middle()
            return True
        except StructureError:
            return False

    def _classical_middle(self) -> Term:
        prem = self.content_premises
        if len(prem) != 2 or len(self.premises) != 2:
            raise StructureError("classical form needs exactly two premises")
        names = {t for st in self.statements for t in st.terms}
        if len(names) != 3:
            raise StructureError(f"classical form needs exactly three terms, found {len(names)}")
        p1, p2 = (set(p.terms) for p in prem)
        middle = p1 & p2
        if len(middle) != 1:
            raise StructureError("premises must share exactly one middle term")
        m = next(iter(middle))
        for t in self.conclusion.terms:
            if t == m:
                raise StructureError("the middle term cannot occur in the conclusion")
            if (t in p1) == (t in p2):
                raise StructureError(f"conclusion term {t.name!r} must occur in exactly one premise")
        return m

    def middle_term(self) -> Term:
        return self._classical_middle()

    def figure(self) -> Figure:
        """按中项位置判定格：I = M-P, S-M；II = P-M, S-M；III = M-P, M-S；IV = P-M, M-S。"""
        m = self._classical_middle()
        p1, p2 = self.premises
        first_subject = p1.subject == m
        second_subject = p2.subject == m
        if first_subject and not second_subject:
            return Figure.I
        if not first_subject and not second_subject:
            return Figure.II
        if first_subject and second_subject:
            return Figure.III
        return Figure.IV

    def mood(self) -> Optional[str]:
        letters = [st.quantifier.mood_letter for st in self.statements]
        if any(x is None for x in letters):
            return None
        return "".join(letters)  # type: ignore[arg-type]


# ---------------- models ----------------

@dataclass(frozen=True)
class FiniteModel:
    universe: frozenset[int]
    extensions: tuple[tuple[str, frozenset[int]], ...]

    def __post_init__(self) -> None:
        universe = frozenset(self.universe)
        object.__setattr__(self, "universe", universe)
        ext = tuple(sorted((str(k), frozenset(v)) for k, v in self.extensions))
        for k, v in ext:
            if not v <= universe:
                raise InvariantViolation(f"extension of {k!r} is not a subset of the universe")
        object.__setattr__(self, "extensions", ext)

    @classmethod
    def from_mapping(cls, universe: Iterable[int], mapping: Mapping[str, Iterable[int]]) -> "FiniteModel":
        return cls(frozenset(universe), tuple((k, frozenset(v)) for k, v in mapping.items()))

    def as_dict(self) -> dict[str, frozenset[int]]:
        return dict(self.extensions)

    def extension(self, term: Term) -> frozenset[int]:
        ext = self.as_dict()
        out = self.universe
        for k in term.atom_keys:
            if k not in ext:
                raise InvariantViolation(f"model has no extension for term {k!r}")
            out = out & ext[k]
        return out


# ---------------- policies / verdicts / configs ----------------

class ImportPolicy(str, Enum):
    NO_IMPORT = "none"
    UNIVERSAL_IMPORT = "universal"
    EXPLICIT_PREMISE = "explicit"


class ImportScope(str, Enum):
    SUBJECTS_ONLY = "subjects"
    ALL_TERMS = "all"


class VerdictKind(str, Enum):
    VALID = "valid"
    COUNTER = "counter"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    bound: int
    counter_model: Optional[FiniteModel] = None

    @classmethod
    def valid(cls, bound: int) -> "Verdict":
        return cls(VerdictKind.VALID, bound)

    @classmethod
    def counter(cls, model: FiniteModel, bound: int) -> "Verdict":
        return cls(VerdictKind.COUNTER, bound, model)

    @classmethod
    def undetermined(cls, bound: int) -> "Verdict":
        return cls(VerdictKind.UNDETERMINED, bound)

    @property
    def is_valid(self) -> bool:
        return self.kind == VerdictKind.VALID

    def summary(self) -> str:
        if self.kind == VerdictKind.VALID:
            return f"valid (bound {self.bound})"
        if self.kind == VerdictKind.COUNTER:
            return f"countermodel (|U|={len(self.counter_model.universe) if self.counter_model else 0})"
        return f"undetermined (bound {self.bound})"


@dataclass(frozen=True)
class ProbQuantifierConfig:
    epsilon: Fraction = Fraction(1, 10)

    def __post_init__(self) -> None:
        eps = as_fraction(self.epsilon)
        if not (Fraction(0) < eps < Fraction(1, 2)):
            raise InvariantViolation(f"epsilon must lie in (0, 1/2), got {eps}")
        object.__setattr__(self, "epsilon", eps)


# ---------------- JSON ----------------

def quantifier_to_json(q: Quantifier) -> Any:
    if q.kind in COUNTED_KINDS:
        return {"kind": q.kind.value, "k": q.k}
    if q.kind == QuantifierKind.INTERVAL:
        return {"kind": "interval", "lo": fraction_to_json(q.lo), "hi": fraction_to_json(q.hi)}
    if q.kind == QuantifierKind.TRAPEZOID:
        a, c, d, b = q.params
        return {
            "kind": "trapezoid",
            "a": fraction_to_json(a),
            "c": fraction_to_json(c),
            "d": fraction_to_json(d),
            "b": fraction_to_json(b),
        }
    return q.kind.value


def quantifier_from_json(obj: Any) -> Quantifier:
    if isinstance(obj, str):
        return Quantifier.of(obj)
    kind = QuantifierKind(obj["kind"])
    if kind in COUNTED_KINDS:
        return Quantifier(kind, k=int(obj["k"]))
    if kind == QuantifierKind.INTERVAL:
        return Quantifier.interval(as_fraction(obj["lo"]), as_fraction(obj["hi"]))
    if kind == QuantifierKind.TRAPEZOID:
        return Quantifier.trapezoid(*(as_fraction(obj[x]) for x in ("a", "c", "d", "b")))
    return Quantifier.of(kind)


def statement_to_json(st: Statement) -> dict:
    out: dict[str, Any] = {
        "q": quantifier_to_json(st.quantifier),
        "s": st.subject.key,
        "p": st.predicate.key,
        "neg": st.predicate_negated,
        "s_label": st.subject.label,
        "p_label": st.predicate.label,
    }
    if st.singular:
        out["singular"] = True
    if st.existence:
        out["existence"] = True
    return out


def statement_from_json(obj: Mapping[str, Any]) -> Statement:
    subject = Term(obj["s"], proper=bool(obj.get("singular", False)), label=obj.get("s_label", ""))
    return Statement(
        quantifier_from_json(obj["q"]),
        subject,
        Term(obj["p"], label=obj.get("p_label", "")),
        bool(obj.get("neg", False)),
        bool(obj.get("existence", False)),
    )


def syllogism_to_json(syl: Syllogism) -> dict:
    return {
        "premises": [statement_to_json(p) for p in syl.premises],
        "conclusion": statement_to_json(syl.conclusion),
    }


def syllogism_from_json(obj: Mapping[str, Any]) -> Syllogism:
    return Syllogism(
        tuple(statement_from_json(p) for p in obj["premises"]),
        statement_from_json(obj["conclusion"]),
    )


def model_to_json(model: FiniteModel) -> dict:
    return {
        "universe": sorted(model.universe),
        "extensions": {k: sorted(v) for k, v in model.extensions},
    }


def model_from_json(obj: Mapping[str, Any]) -> FiniteModel:
    return FiniteModel.from_mapping(obj["universe"], obj["extensions"])


def verdict_to_json(v: Verdict) -> dict:
    return {
        "verdict": v.kind.value,
        "bound": v.bound,
        "counter_model": model_to_json(v.counter_model) if v.counter_model is not None else None,
    }
