"""Declared token alphabets.

Symbols are arbitrary non-empty strings without whitespace, so a single
token can name a composite event ("ul", "contact", "m3"). Order matters:
it fixes column order in transition tables and in every export.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UnknownSymbol, ValidationError

_RESERVED = set("()|*+?{}.\"'#=[]")


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.symbols:
            raise ValidationError("alphabet must declare at least one symbol")
        seen: dict[str, int] = {}
        for i, sym in enumerate(self.symbols):
            if not sym:
                raise ValidationError("empty string is not a valid symbol")
            if any(ch.isspace() or ch in _RESERVED for ch in sym):
                raise ValidationError(f"symbol {sym!r} contains whitespace or a reserved character")
            if sym in seen:
                raise ValidationError(f"duplicate symbol {sym!r}")
            seen[sym] = i
        object.__setattr__(self, "_index", seen)

    @classmethod
    def of(cls, *symbols: str) -> "Alphabet":
        return cls(tuple(symbols))

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbol(symbol) from None

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._index

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)
