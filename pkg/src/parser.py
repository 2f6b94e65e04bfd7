# -*- coding: utf-8 -*-
"""
受控语句文法解析器（nltk CFG + Earley 图表分析，大小写不敏感）：
    stmt     := det subject ("are"|"is") ["not"] predicate
    det      := all | no | some | most | many | few | almost all
              | all but INT | exactly INT | at least INT
              | "[" RAT "," RAT "]" | "[" RAT "," RAT "," RAT "," RAT "]"
    singular := Name "is" ["not"] [a | an | one of the] predicate     (Name 首字母大写)
    exist    := "there is at least one" term
    term     := WORD+ | "{" WORD+ "}"          (X and Y 为合取项)

词法先把每个记号归类为文法终结符（关键字本身、W、NAME、RESERVED、INT、RAT、括号），
文法只在这些类别上工作，解析树的叶子与记号一一对应。
"there" 是关键字，不能作专名主语（"There is ..." 只按存在陈述解析）。

- parse_statement：返回规范 Statement；任何非法输入都抛 ParseError（含 UTF-8 字节偏移）
- parse_syllogism_file：每行一条陈述，"---" 分隔行之后唯一一行为结论
- parse_premises_file：只含前提的文件（可选 "---"，其后内容忽略）
- render：规范输出，render(parse_statement(t)) 可重新解析为相等的 Statement
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from nltk import CFG, Tree
from nltk.grammar import Nonterminal, is_terminal
from nltk.parse import EarleyChartParser
from nltk.parse.chart import LeafEdge
from nltk.tokenize import RegexpTokenizer

from src.core_model import (
    Quantifier,
    QuantifierKind,
    Statement,
    Syllogism,
    Term,
    format_rational,
)
from src.errors import InvariantViolation, ParseError, StructureError

_TOKENIZER = RegexpTokenizer(r"\d+(?:\.\d+)?(?:/\d+)?|[^\W\d_][\w'\-]*|[\[\],{}]")
_SEPARATOR_RE = re.compile(r"^-{3,}$")

SIMPLE_DETERMINERS = {
    "all": QuantifierKind.ALL,
    "no": QuantifierKind.NO,
    "some": QuantifierKind.SOME,
    "most": QuantifierKind.MOST,
    "many": QuantifierKind.MANY,
    "few": QuantifierKind.FEW,
}
KEYWORDS = (
    "all", "no", "some", "most", "many", "few", "almost", "but", "exactly", "at", "least",
    "are", "is", "not", "there", "a", "an", "one", "of", "the",
)
# 比较型量词（double/half）只保留语法位置，未定义真值条件
RESERVED_DETERMINERS = ("double", "half", "twice")

_WORD_TAGS = ("W", "NAME", "RESERVED") + KEYWORDS

_GRAMMAR_TEXT = """
S -> CAT | SING | EXIST
CAT -> DET SUBJ COP PRED | DET SUBJ COP NEG PRED | NODET SUBJ COP PRED
DET -> 'all' | 'some' | 'most' | 'many' | 'few' | 'almost' 'all' | BRACKET
DET -> 'all' 'but' 'INT' | 'exactly' 'INT' | 'at' 'least' 'INT'
NODET -> 'no'
BRACKET -> '[' RAT ',' RAT ']' | '[' RAT ',' RAT ',' RAT ',' RAT ']'
RAT -> 'INT' | 'RAT'
COP -> 'are' | 'is'
NEG -> 'not'
SING -> PROPER 'is' NAMED | PROPER 'is' NEG NAMED | PROPER 'is' ART NAMED | PROPER 'is' NEG ART NAMED
PROPER -> 'NAME'
ART -> 'a' | 'an' | 'one' 'of' 'the'
EXIST -> 'there' 'is' 'at' 'least' 'one' TERM
SUBJ -> SET | SWS
SWS -> SW | SW SWS
PRED -> SET | PW | PW FWS
NAMED -> SET | NW | NW FWS
TERM -> SET | FWS
SET -> '{' FWS '}'
FWS -> FW | FW FWS
"""


def _word_class(name: str, exclude: tuple[str, ...] = ()) -> str:
    return f"{name} -> " + " | ".join(f"'{t}'" for t in _WORD_TAGS if t not in exclude)


# SW 主项词（不含系词）；PW 谓项首词（不含 not）；NW 单称谓项首词（另不含冠词）
_GRAMMAR = CFG.fromstring(
    "\n".join(
        [
            _GRAMMAR_TEXT,
            _word_class("SW", ("are", "is")),
            _word_class("PW", ("not",)),
            _word_class("NW", ("not", "a", "an", "one")),
            _word_class("FW"),
        ]
    )
)
_PARSER = EarleyChartParser(_GRAMMAR)

# 解析树中承载语义的短语节点
_PHRASES = frozenset({"DET", "NODET", "SUBJ", "PRED", "NAMED", "TERM", "NEG", "PROPER"})
_TAG_NAMES = {"W": "word", "NAME": "word", "RESERVED": "word", "INT": "integer", "RAT": "number"}


@dataclass(frozen=True)
class _Tok:
    text: str
    pos: int  # 字符偏移

    @property
    def low(self) -> str:
        return self.text.lower()

    @property
    def tag(self) -> str:
        ch = self.text[0]
        if ch.isdigit():
            return "INT" if self.text.isdigit() else "RAT"
        if ch in "[],{}":
            return ch
        if self.low in KEYWORDS:
            return self.low
        if self.low in RESERVED_DETERMINERS:
            return "RESERVED"
        return "NAME" if ch.isupper() else "W"


def _byte_offset(text: str, char_pos: int) -> int:
    return len(text[:char_pos].encode("utf-8"))


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    prev = 0
    for start, end in list(_TOKENIZER.span_tokenize(text)) + [(len(text), len(text))]:
        gap = text[prev:start]
        if gap.strip():
            bad = prev + (len(gap) - len(gap.lstrip()))
            raise ParseError(_byte_offset(text, bad), "word, number or one of [ ] , { }", text[bad])
        if start < end:
            toks.append(_Tok(text[start:end], start))
        prev = end
    return toks


@lru_cache(maxsize=None)
def _first(sym: object) -> frozenset[str]:
    if is_terminal(sym):
        return frozenset({str(sym)})
    assert isinstance(sym, Nonterminal)
    return frozenset().union(*(_first(p.rhs()[0]) for p in _GRAMMAR.productions(lhs=sym)))


def _describe(tags: set[str]) -> str:
    names = sorted({_TAG_NAMES.get(t, repr(t)) for t in tags})
    return " or ".join(names) if names else "end of statement"


def _syntax_error(text: str, toks: list[_Tok], chart) -> ParseError:
    """错误位置取图表中最长可行前缀的下一个记号。"""
    edges = [e for e in chart.edges() if not isinstance(e, LeafEdge)]
    reach = max((e.end() for e in edges), default=0)
    expected: set[str] = set()
    for e in edges:
        if e.end() == reach and e.is_incomplete():
            expected |= _first(e.nextsym())
    if reach >= len(toks):
        return ParseError(_byte_offset(text, len(text)), _describe(expected), "")
    tok = toks[reach]
    if reach == 0 and tok.tag == "RESERVED":
        return ParseError(_byte_offset(text, tok.pos), "supported determiner (comparative quantifiers are reserved)", tok.text)
    return ParseError(_byte_offset(text, tok.pos), _describe(expected), tok.text)


def _phrases(tree: Tree, toks: list[_Tok]) -> dict[str, list[_Tok]]:
    """按最外层短语节点收集对应记号。"""
    out: dict[str, list[_Tok]] = {}
    leaves: Iterator[_Tok] = iter(toks)

    def walk(node: Tree | str, owner: Optional[str]) -> None:
        if isinstance(node, str):
            tok = next(leaves)
            if owner is not None:
                out.setdefault(owner, []).append(tok)
            return
        if owner is None and node.label() in _PHRASES:
            owner = node.label()
        for child in node:
            walk(child, owner)

    walk(tree, None)
    return out


def _quantifier(text: str, toks: list[_Tok]) -> Quantifier:
    words = [t.low for t in toks]
    if words[0] == "[":
        try:
            values = [Fraction(t.text) for t in toks if t.tag in ("INT", "RAT")]
            if len(values) == 2:
                return Quantifier.interval(*values)
            return Quantifier.trapezoid(*values)
        except (InvariantViolation, ValueError, ZeroDivisionError) as e:
            raise ParseError(_byte_offset(text, toks[0].pos), f"well-formed interval ({e})", toks[0].text)
    if words[:2] == ["almost", "all"]:
        return Quantifier.of(QuantifierKind.ALMOST_ALL)
    if words[:2] == ["all", "but"]:
        return Quantifier.all_but(int(toks[2].text))
    if words[0] == "exactly":
        return Quantifier.exactly(int(toks[1].text))
    if words[:2] == ["at", "least"]:
        return Quantifier.at_least(int(toks[2].text))
    return Quantifier.of(SIMPLE_DETERMINERS[words[0]])


def _term(toks: list[_Tok]) -> Term:
    if toks[0].text == "{":
        return Term("{" + " ".join(t.text for t in toks[1:-1]) + "}")
    return Term(" ".join(t.text for t in toks))


def _build(text: str, q: Quantifier, subject: Term, predicate: Term, negated: bool, existence: bool = False) -> Statement:
    try:
        return Statement(q, subject, predicate, negated, existence)
    except InvariantViolation as e:
        raise ParseError(0, f"well-formed statement ({e})", text.strip()[:40])


def parse_statement(text: str) -> Statement:
    """解析单条陈述，返回规范 Statement。"""
    toks = _tokenize(text)
    if not toks:
        raise ParseError(_byte_offset(text, len(text)), "statement", "")
    chart = _PARSER.chart_parse([t.tag for t in toks])
    tree = next(iter(chart.parses(_GRAMMAR.start())), None)
    if tree is None:
        raise _syntax_error(text, toks, chart)

    form = tree[0].label()
    ph = _phrases(tree, toks)
    negated = "NEG" in ph
    if form == "EXIST":
        term = _term(ph["TERM"])
        return _build(text, Quantifier.at_least(1), term, term, False, existence=True)
    if form == "SING":
        subject = Term(ph["PROPER"][0].text, proper=True)
        return _build(text, Quantifier.of(QuantifierKind.ALL), subject, _term(ph["NAMED"]), negated)
    q = Quantifier.of(QuantifierKind.NO) if "NODET" in ph else _quantifier(text, ph["DET"])
    return _build(text, q, _term(ph["SUBJ"]), _term(ph["PRED"]), negated)


# ---------------- files ----------------

def _content_lines(text: str) -> list[tuple[int, str]]:
    """返回 (字节偏移, 去空白行) 列表，跳过空行与 # 注释。"""
    if text.startswith("﻿"):
        text = text[1:]
    out: list[tuple[int, str]] = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.rstrip("\r\n")
        lead = len(line) - len(line.lstrip())
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            out.append((offset + len(line[:lead].encode("utf-8")), stripped))
        offset += len(raw.encode("utf-8"))
    return out


def _parse_line(offset: int, line: str) -> Statement:
    try:
        return parse_statement(line)
    except ParseError as e:
        raise ParseError(offset + e.position, e.expected, e.found) from None


def parse_syllogism_file(text: str) -> Syllogism:
    lines = _content_lines(text)
    seps = [i for i, (_, line) in enumerate(lines) if _SEPARATOR_RE.match(line)]
    if not seps:
        raise StructureError("missing '---' separator before the conclusion")
    if len(seps) > 1:
        raise StructureError("more than one '---' separator")
    cut = seps[0]
    premise_lines = lines[:cut]
    conclusion_lines = lines[cut + 1:]
    if len(premise_lines) < 1:
        raise StructureError("a syllogism needs at least one premise")
    if len(conclusion_lines) != 1:
        raise StructureError(f"expected exactly one conclusion line, found {len(conclusion_lines)}")
    premises = tuple(_parse_line(off, line) for off, line in premise_lines)
    conclusion = _parse_line(*conclusion_lines[0])
    return Syllogism(premises, conclusion)


def parse_statements(text: str) -> list[Statement]:
    """文件中的全部陈述行（忽略分隔行）。"""
    return [_parse_line(off, line) for off, line in _content_lines(text) if not _SEPARATOR_RE.match(line)]


def parse_premises_file(text: str) -> list[Statement]:
    out: list[Statement] = []
    for off, line in _content_lines(text):
        if _SEPARATOR_RE.match(line):
            break
        out.append(_parse_line(off, line))
    if not out:
        raise StructureError("no premises found")
    return out


# ---------------- rendering ----------------

def _determiner(q: Quantifier) -> str:
    kind = q.kind
    if kind == QuantifierKind.SOME_NOT:
        return "some"
    if kind == QuantifierKind.ALMOST_ALL:
        return "almost all"
    if kind == QuantifierKind.ALL_BUT:
        return f"all but {q.k}"
    if kind == QuantifierKind.EXACTLY:
        return f"exactly {q.k}"
    if kind == QuantifierKind.AT_LEAST:
        return f"at least {q.k}"
    if kind in (QuantifierKind.INTERVAL, QuantifierKind.TRAPEZOID):
        return "[" + ",".join(format_rational(p) for p in q.params) + "]"
    return kind.value


def render(st: Statement) -> str:
    if st.existence:
        return f"there is at least one {st.subject.display()}"
    if st.singular:
        neg = " not" if st.quantifier.kind == QuantifierKind.NO else ""
        name = st.subject.label
        return f"{name[:1].upper()}{name[1:]} is{neg} {st.predicate.display()}"
    negated = st.predicate_negated or st.quantifier.kind == QuantifierKind.SOME_NOT
    text = f"{_determiner(st.quantifier)} {st.subject.display()} are {'not ' if negated else ''}{st.predicate.display()}"
    return text[:1].upper() + text[1:]


def render_syllogism(syl: Syllogism) -> str:
    lines = [render(p) for p in syl.premises]
    lines.append("---")
    lines.append(render(syl.conclusion))
    return "\n".join(lines)
