"""Finitely presented groups and their homomorphisms onto Z/2."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .smith import AbelianizationData, abelian_invariants
from .words import (
    IDENTITY,
    ParseError,
    Word,
    _WordParser,
    cyclic_reduce,
    format_word,
    free_reduce,
    parse_word,
    relator_key,
    tokenize,
)

MAX_GENERATORS = 26


@dataclass(frozen=True)
class Presentation:
    """``<generator_names | relators>`` with relators cyclically reduced.

    Empty relators are dropped at construction.
    """

    generator_names: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        names = tuple(self.generator_names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        if len(names) > MAX_GENERATORS:
            raise ValueError(f"at most {MAX_GENERATORS} generators supported")
        rels = []
        for r in self.relators:
            if r.max_generator() >= len(names):
                raise ValueError(f"relator uses generator {r.max_generator()} "
                                 f"but only {len(names)} exist")
            r = cyclic_reduce(r)
            if r:
                rels.append(r)
        object.__setattr__(self, "generator_names", names)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def n_gens(self) -> int:
        return len(self.generator_names)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generator_names)

    def format_word(self, w: Word) -> str:
        return format_word(w, self.generator_names)

    def relator_matrix(self) -> list[list[int]]:
        """Rows are relators, columns generators, entries signed exponent sums."""
        return [r.exponent_sums(self.n_gens) for r in self.relators]

    def __str__(self):
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"<{', '.join(self.generator_names)} | {rels}>"


def parse_presentation(text: str) -> Presentation:
    """Parse ``"<v, h | v^2, v h v^-1 h^-1>"``; the ``| ...`` part is optional."""
    tokens = tokenize(text)
    if not tokens or tokens[0][1] != "<":
        raise ParseError("presentation must start with '<'", column=tokens[0][2] if tokens else 1)
    if tokens[-1][1] != ">":
        raise ParseError("presentation must end with '>'",
                         column=tokens[-1][2] if tokens else 1)
    body = tokens[1:-1]
    bar = next((i for i, t in enumerate(body) if t[1] == "|"), len(body))
    names = []
    expect_name = True
    for kind, value, col in body[:bar]:
        if expect_name and kind == "ident":
            names.append(value)
        elif not expect_name and value == ",":
            pass
        else:
            raise ParseError(f"unexpected token {value!r} in generator list", column=col)
        expect_name = not expect_name
    if names and expect_name:
        raise ParseError("trailing ',' in generator list", column=body[bar - 1][2])
    if len(set(names)) != len(names):
        raise ParseError("duplicate generator name", column=body[0][2])
    parser = _WordParser(body[bar + 1:], names)
    relators = []
    while parser.peek() is not None:
        relators.append(free_reduce(parser.word()))
        tok = parser.take()
        if tok is not None and tok[1] != ",":
            raise ParseError(f"unexpected token {tok[1]!r}", column=tok[2])
    return Presentation(tuple(names), tuple(relators))


@dataclass(frozen=True)
class GroupHom2:
    """Homomorphism to Z/2 given by one bit per generator."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(v not in (0, 1) for v in vals):
            raise ValueError(f"values must be bits, got {vals}")
        object.__setattr__(self, "values", vals)

    @property
    def is_epimorphism(self) -> bool:
        return any(self.values)

    def __call__(self, w: Word) -> int:
        return evaluate_hom2(self, w)

    def kills(self, presentation: Presentation) -> bool:
        return all(evaluate_hom2(self, r) == 0 for r in presentation.relators)

    def as_mapping(self, names: Sequence[str]) -> dict[str, int]:
        return dict(zip(names, self.values))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, int], names: Sequence[str]) -> GroupHom2:
        unknown = set(mapping) - set(names)
        if unknown:
            raise ValueError(f"unknown generators {sorted(unknown)}")
        return cls(tuple(int(mapping.get(n, 0)) for n in names))


def evaluate_hom2(phi: GroupHom2, w: Word) -> int:
    """Sum of ``phi`` over the letters of ``w``, mod 2."""
    total = 0
    for g, _ in w.letters:
        if g >= len(phi.values):
            raise IndexError(f"generator {g} out of range for {len(phi.values)} values")
        total ^= phi.values[g]
    return total


def abelianization(p: Presentation) -> AbelianizationData:
    return abelian_invariants(p.relator_matrix(), p.n_gens)


def enumerate_epis_z2(p: Presentation) -> list[GroupHom2]:
    """All epimorphisms onto Z/2, in lexicographic order of their value vectors."""
    rows = [[e % 2 for e in r] for r in p.relator_matrix()]
    out = []
    for vals in itertools.product((0, 1), repeat=p.n_gens):
        if not any(vals):
            continue
        if all(sum(a * b for a, b in zip(row, vals)) % 2 == 0 for row in rows):
            out.append(GroupHom2(vals))
    return out


@dataclass(frozen=True)
class TietzeResult:
    """Simplified presentation plus the surviving original generator indices."""

    presentation: Presentation
    kept: tuple[int, ...]
    eliminated: dict[int, Word] = field(default_factory=dict)


def _dedupe(relators: Sequence[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in relators:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = relator_key(r)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def tietze_simplify_tracked(p: Presentation) -> TietzeResult:
    """Eliminate generators that occur exactly once in some relator.

    Relators are scanned shortest first; within one the highest-indexed
    eligible generator goes, which keeps the earliest generators alive.
    ``eliminated`` maps each removed original generator to its value as a
    word in the original generators (only meaningful in the group).
    """
    n = p.n_gens
    relators = _dedupe(p.relators)
    alive = list(range(n))
    eliminated: dict[int, Word] = {}
    while True:
        choice = None
        for ri in sorted(range(len(relators)), key=lambda i: (len(relators[i]), i)):
            r = relators[ri]
            counts: dict[int, int] = {}
            for g, _ in r.letters:
                counts[g] = counts.get(g, 0) + 1
            once = [g for g, c in counts.items() if c == 1]
            if once:
                choice = (ri, max(once))
                break
        if choice is None:
            break
        ri, g = choice
        r = relators[ri]
        k = next(i for i, (x, _) in enumerate(r.letters) if x == g)
        rot = r.letters[k:] + r.letters[:k]
        e = rot[0][1]
        rest = Word(rot[1:])
        # g^e * rest = 1  =>  g = rest^-1 (e = 1) or g = rest (e = -1)
        value = rest.inverse() if e == 1 else rest
        images = [Word.gen(i) for i in range(n)]
        images[g] = value
        eliminated = {h: w.substitute(images) for h, w in eliminated.items()}
        eliminated[g] = value
        relators = _dedupe([w.substitute(images) for j, w in enumerate(relators) if j != ri])
        alive.remove(g)
    # renumber survivors
    index = {old: new for new, old in enumerate(alive)}
    relabel = [Word.gen(index[i]) if i in index else IDENTITY for i in range(n)]
    names = tuple(p.generator_names[i] for i in alive)
    simplified = Presentation(names, tuple(w.substitute(relabel) for w in relators))
    return TietzeResult(simplified, tuple(alive), eliminated)


def tietze_simplify(p: Presentation) -> Presentation:
    return tietze_simplify_tracked(p).presentation
