"""Exception types shared across the package."""

from __future__ import annotations


class FlcError(Exception):
    """Base class for every error raised by this package."""


class RegexSyntaxError(FlcError, ValueError):
    """Malformed pattern text. Carries the offset where parsing failed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
        self.reason = message


class UnknownSymbol(FlcError, KeyError):
    """A token that is not part of the declared alphabet."""

    def __init__(self, symbol: str):
        super().__init__(f"unknown symbol {symbol!r}")
        self.symbol = symbol


class AlphabetMismatch(FlcError, ValueError):
    """Two automata were combined despite different alphabets."""


class CapacityError(FlcError, RuntimeError):
    """Determinization exceeded the configured state budget."""


class ParseError(FlcError, ValueError):
    """Malformed constraint or experiment file. Carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        loc = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{loc}")
        self.line = line


class ValidationError(FlcError, ValueError):
    """Structurally valid input with inconsistent contents."""


class ConfigError(FlcError, ValueError):
    """Invalid or contradictory experiment configuration."""


class DomainError(FlcError, ValueError):
    """Numeric argument outside the domain of an operation."""


class EmptyActionSet(FlcError, RuntimeError):
    """Every candidate action leads into a violating recognizer state."""


class EpisodeDone(FlcError, RuntimeError):
    """step() was called on an environment whose episode already ended."""
