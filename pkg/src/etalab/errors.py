"""Exception hierarchy shared by the engine and the CLI."""

from __future__ import annotations


class EtalabError(Exception):
    """Base class for every error raised by the engine."""


class ParseError(EtalabError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class UnknownVariable(ParseError):
    pass


class HomogeneityError(EtalabError):
    pass


class HypothesisViolation(EtalabError):
    """A standing hypothesis (regular sequence, finite-length tail, ...) fails."""


class BoundError(EtalabError):
    """Base for failures cured by raising the homological or internal degree bound."""

    def __init__(self, message: str, suggested_J: int | None = None, suggested_D: int | None = None):
        self.suggested_J = suggested_J
        self.suggested_D = suggested_D
        super().__init__(message)


class DegreeBoundExceeded(BoundError):
    def __init__(self, message: str, step: int | None = None, suggested_D: int | None = None):
        self.step = step
        super().__init__(message, suggested_D=suggested_D)


class NotPolynomialWithinBound(BoundError):
    pass


class NotStabilized(BoundError):
    pass


class InsufficientWindow(BoundError):
    pass


class XDegreeDefect(BoundError):
    pass
