# -*- coding: utf-8 -*-
"""
领域异常：所有引擎抛出的错误都继承 SyllogosError（ValueError 子类），
CLI 统一捕获后输出到 stderr 并以退出码 2 结束。
"""
from __future__ import annotations


class SyllogosError(ValueError):
    pass


class InvariantViolation(SyllogosError):
    pass


class ParseError(SyllogosError):
    """语法错误。position 为输入的 UTF-8 字节偏移。"""

    def __init__(self, position: int, expected: str, found: str) -> None:
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(f"at byte {position}: expected {expected}, found {found!r}")


class StructureError(SyllogosError):
    pass


class UndefinedProportion(SyllogosError):
    """比例型量词在空主项上求值（分母为 0）。"""


class TermMismatch(SyllogosError):
    pass


class Inconsistent(SyllogosError):
    pass


class EmptyDenominator(SyllogosError):
    pass


class CardinalityRequired(SyllogosError):
    pass


class NoSharedMiddle(SyllogosError):
    pass


class SearchTooLarge(SyllogosError):
    pass


class Unsupported(SyllogosError):
    def __init__(self, engine: str, reason: str) -> None:
        self.engine = engine
        self.reason = reason
        super().__init__(f"[{engine}] unsupported: {reason}")
