"""Free-group words and the text syntax used by presentations and catalogs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]


class ParseError(ValueError):
    """Malformed word or presentation text.  ``column`` is 1-based."""

    def __init__(self, message: str, column: int | None = None, line: int | None = None):
        self.message = message
        self.column = column
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


@dataclass(frozen=True)
class Word:
    """A word in generators ``0..n-1``; letters are ``(generator, +1 | -1)``.

    Construction does not reduce; use :func:`free_reduce` or the
    multiplication operator, which always returns a reduced product.
    """

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for g, e in self.letters:
            if e not in (1, -1) or g < 0:
                raise ValueError(f"bad letter {(g, e)}")

    @classmethod
    def gen(cls, g: int, power: int = 1) -> Word:
        e = 1 if power > 0 else -1
        return cls(((g, e),) * abs(power))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return free_reduce(Word(self.letters + other.letters))

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return free_reduce(Word(base.letters * abs(n)))

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def exponent_sums(self, n_gens: int) -> list[int]:
        sums = [0] * n_gens
        for g, e in self.letters:
            sums[g] += e
        return sums

    def substitute(self, images: Sequence[Word]) -> Word:
        """Apply the free-group endomorphism ``g -> images[g]``."""
        out: list[Letter] = []
        for g, e in self.letters:
            img = images[g] if e == 1 else images[g].inverse()
            out.extend(img.letters)
        return free_reduce(Word(tuple(out)))

    def format(self, names: Sequence[str]) -> str:
        return format_word(self, names)


IDENTITY = Word()


def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain (single stack pass)."""
    stack: list[Letter] = []
    for g, e in w.letters:
        if stack and stack[-1] == (g, -e):
            stack.pop()
        else:
            stack.append((g, e))
    return Word(tuple(stack))


def cyclic_reduce(w: Word) -> Word:
    letters = free_reduce(w).letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == (letters[j][0], -letters[j][1]):
        i += 1
        j -= 1
    return Word(letters[i:j + 1])


def _rotations(w: Word) -> Iterable[tuple[Letter, ...]]:
    n = len(w.letters)
    for k in range(max(n, 1)):
        yield w.letters[k:] + w.letters[:k]


def relator_key(w: Word) -> tuple[Letter, ...]:
    """Canonical representative of a relator up to cyclic rotation and inversion."""
    w = cyclic_reduce(w)
    return min(min(_rotations(w)), min(_rotations(w.inverse())))


def format_word(w: Word, names: Sequence[str]) -> str:
    """Render with run-length exponents, e.g. ``v^2 h^-1``; the identity is ``1``."""
    if not w.letters:
        return "1"
    parts = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        g, e = letters[i]
        power = e * (j - i)
        parts.append(names[g] if power == 1 else f"{names[g]}^{power}")
        i = j
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[\^(),|<>]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split into ``(kind, value, column)`` triples; kinds are ident, int, sym."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", column=col)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return tokens


class _WordParser:
    def __init__(self, tokens, names: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.index = {name: i for i, name in enumerate(names)}

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def word(self) -> Word:
        letters: list[Letter] = []
        while True:
            tok = self.peek()
            if tok is None or (tok[0] == "sym" and tok[1] in ",|>)"):
                break
            letters.extend(self.factor().letters)
        return Word(tuple(letters))

    def factor(self) -> Word:
        kind, value, col = self.take()
        if kind == "ident":
            if value not in self.index:
                raise ParseError(f"unknown generator {value!r}", column=col)
            base = Word.gen(self.index[value])
        elif kind == "int" and value == "1":
            base = IDENTITY
        elif kind == "sym" and value == "(":
            base = self.word()
            close = self.take()
            if close is None or close[1] != ")":
                raise ParseError("expected ')'", column=close[2] if close else col)
        else:
            raise ParseError(f"unexpected token {value!r}", column=col)
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.take()
            num = self.take()
            if num is None or num[0] != "int":
                raise ParseError("expected integer exponent after '^'",
                                 column=num[2] if num else tok[2])
            n = int(num[1])
            return Word(base.letters * n) if n >= 0 else Word(base.inverse().letters * -n)
        return base


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse ``"v h v^-1 h^-1"`` or ``"(v h)^2"`` against generator names.

    The result is freely reduced.
    """
    tokens = tokenize(text)
    parser = _WordParser(tokens, names)
    w = parser.word()
    if parser.peek() is not None:
        _, value, col = parser.peek()
        raise ParseError(f"unexpected token {value!r}", column=col)
    return free_reduce(w)
