"""Pattern syntax tree and parser.

Concrete syntax: whitespace-separated token names, juxtaposition is
concatenation, `|` alternation, postfix `*` `+` `?` `{n}` repetition,
`.` matches any single token, parentheses group. Token names may be
multi-character; every name must belong to the declared alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import RegexSyntaxError
from .alphabet import Alphabet


class Node:
    """Base class for syntax tree nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Empty(Node):
    """Matches no word at all."""


@dataclass(frozen=True)
class Epsilon(Node):
    """Matches only the empty word."""


@dataclass(frozen=True)
class Sym(Node):
    name: str


@dataclass(frozen=True)
class Dot(Node):
    """Matches any single symbol of the alphabet."""


@dataclass(frozen=True)
class Concat(Node):
    parts: tuple[Node, ...]


@dataclass(frozen=True)
class Alt(Node):
    options: tuple[Node, ...]


@dataclass(frozen=True)
class Star(Node):
    child: Node


@dataclass(frozen=True)
class Plus(Node):
    child: Node


@dataclass(frozen=True)
class Opt(Node):
    child: Node


@dataclass(frozen=True)
class Repeat(Node):
    child: Node
    count: int


_OPERATORS = set("()|*+?{}.")


@dataclass(frozen=True)
class _Token:
    kind: str  # "sym", "int", or the operator character itself
    text: str
    pos: int


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPERATORS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        start = i
        while i < n and not text[i].isspace() and text[i] not in _OPERATORS:
            i += 1
        word = text[start:i]
        kind = "int" if word.isdigit() else "sym"
        tokens.append(_Token(kind, word, start))
    return tokens


class _Parser:
    """Recursive descent over the token stream, tracking source offsets."""

    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.tokens = _lex(text)
        self.pos = 0

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> _Token | None:
        tok = self._peek()
        if tok is not None:
            self.pos += 1
        return tok

    def _end_offset(self) -> int:
        return len(self.text)

    def _fail(self, message: str, at: int | None = None) -> RegexSyntaxError:
        if at is None:
            tok = self._peek()
            at = tok.pos if tok is not None else self._end_offset()
        return RegexSyntaxError(message, at)

    def parse(self) -> Node:
        if not self.tokens:
            raise self._fail("empty pattern", 0)
        node = self._alternation()
        trailing = self._peek()
        if trailing is not None:
            raise self._fail(f"unexpected {trailing.text!r}", trailing.pos)
        return node

    def _alternation(self) -> Node:
        options = [self._concatenation()]
        while True:
            tok = self._peek()
            if tok is None or tok.kind != "|":
                break
            self._next()
            options.append(self._concatenation())
        if len(options) == 1:
            return options[0]
        return Alt(tuple(options))

    def _concatenation(self) -> Node:
        parts = []
        while True:
            tok = self._peek()
            if tok is None or tok.kind in ("|", ")"):
                break
            parts.append(self._repeatable())
        if not parts:
            raise self._fail("empty alternation branch")
        if len(parts) == 1:
            return parts[0]
        return Concat(tuple(parts))

    def _repeatable(self) -> Node:
        node = self._atom()
        while True:
            tok = self._peek()
            if tok is None:
                break
            if tok.kind == "*":
                self._next()
                node = Star(node)
            elif tok.kind == "+":
                self._next()
                node = Plus(node)
            elif tok.kind == "?":
                self._next()
                node = Opt(node)
            elif tok.kind == "{":
                self._next()
                count_tok = self._next()
                if count_tok is None or count_tok.kind != "int":
                    raise self._fail("expected a repeat count after '{'",
                                     count_tok.pos if count_tok else self._end_offset())
                count = int(count_tok.text)
                if count == 0:
                    raise self._fail("repeat count must be at least 1", count_tok.pos)
                close = self._next()
                if close is None or close.kind != "}":
                    raise self._fail("expected '}' after repeat count",
                                     close.pos if close else self._end_offset())
                node = Repeat(node, count)
            else:
                break
        return node

    def _atom(self) -> Node:
        tok = self._next()
        if tok is None:
            raise self._fail("unexpected end of pattern", self._end_offset())
        if tok.kind == "sym" or tok.kind == "int":
            # Bare digit runs are ordinary token names when declared ("2", "9").
            if tok.text not in self.alphabet:
                raise self._fail(f"unknown symbol {tok.text!r}", tok.pos)
            return Sym(tok.text)
        if tok.kind == ".":
            return Dot()
        if tok.kind == "(":
            inner = self._alternation()
            close = self._next()
            if close is None or close.kind != ")":
                raise self._fail("unbalanced '('",
                                 close.pos if close else self._end_offset())
            return inner
        raise self._fail(f"unexpected {tok.text!r}", tok.pos)


def parse_regex(text: str, alphabet: Alphabet) -> Node:
    """Parse pattern text into a syntax tree bound to the alphabet."""
    return _Parser(text, alphabet).parse()
