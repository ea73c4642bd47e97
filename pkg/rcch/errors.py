"""
errors.py — exception hierarchy shared by every rcch module.

The CLI maps ParseError/ConfigError to exit code 2 and every other RcchError
to exit code 1.
"""

from __future__ import annotations

from typing import Optional


class RcchError(Exception):
    """Base class for all domain errors."""


class ConfigError(RcchError):
    pass


class ParseError(RcchError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(f"{where}{message}")


# --- arithmetic / matrices ---

class DimensionMismatch(RcchError):
    pass


class IndexOutOfRange(RcchError):
    pass


class WidthTooLarge(RcchError):
    pass


# --- synthesis ---

class NotInGroup(RcchError):
    pass


class NotOrthogonal(NotInGroup):
    pass


class EntriesNotInRing(NotInGroup):
    pass


class InternalProgressFailure(RcchError):
    pass


class OddParity(RcchError):
    pass


# --- gray codes ---

class OutOfRange(RcchError):
    pass


class NoSingleFlip(RcchError):
    pass


# --- codecs ---

class UnsupportedGate(RcchError):
    pass


class IndicesNotDistinct(RcchError):
    pass


class DimensionNotPowerOfTwo(RcchError):
    pass


# --- normal forms ---

class ContainsH(RcchError):
    pass


class TooManyH(RcchError):
    pass


class PreconditionViolated(RcchError):
    pass


class BadAlphabet(RcchError):
    pass


# --- axioms ---

class DimensionTooSmall(RcchError):
    pass


class FormMismatch(RcchError):
    pass


class TransportInvariantViolated(RcchError):
    pass
