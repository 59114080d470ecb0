"""Double covers of the four closed S^2 x R manifolds.

A double cover of N is an epimorphism ``phi: pi_1(N) -> Z/2``; its total
space has fundamental group ``ker phi``.  Kernels are presented by
Reidemeister-Schreier rewriting with transversal ``{1, t}``.  The cover is
named from two invariants only: the catalog group of the kernel and
whether the orientation character dies on it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .fpgroup import (
    CatalogGroup,
    GroupHom2,
    Presentation,
    Word,
    abelianization,
    evaluate_hom2,
    normal_form_function,
    recognize_catalog_group,
    tietze_simplify_tracked,
)
from .simplicial import OrderedComplex

MANIFOLD_NAMES = ("S2xS1", "E", "RP2xS1", "RP3#RP3")

# Seifert normal forms {b; (eps, g)} of the four closed manifolds.
SEIFERT_SYMBOLS = {
    "S2xS1": (0, "o1", 0),
    "E": (1, "n1", 1),
    "RP2xS1": (0, "n1", 1),
    "RP3#RP3": (0, "n2", 1),
}


class CoverError(ValueError):
    pass


class UnknownCoverError(CoverError):
    """Kernel group not in the catalog: the input left the closed S^2 x R family."""


class KernelMembershipError(CoverError):
    pass


class InvalidAutomorphismError(CoverError):
    pass


@dataclass(frozen=True)
class Automorphism:
    """Generator images of an automorphism together with a claimed inverse."""

    images: tuple[Word, ...]
    inverse: tuple[Word, ...]

    def apply(self, w: Word) -> Word:
        return w.substitute(self.images)

    def act_on_hom(self, phi: GroupHom2) -> GroupHom2:
        """``phi o alpha``."""
        return GroupHom2(tuple(evaluate_hom2(phi, img) for img in self.images))


def seifert_presentation(b: int, eps: str, g: int) -> Presentation:
    """Seifert presentation for ``{b; (eps, g)}`` without exceptional fibres."""
    if eps == "o1":
        names = [n for i in range(g) for n in (f"a{i + 1}", f"b{i + 1}")] + ["h"]
        h = Word.gen(2 * g)
        rels = []
        prod = Word()
        for i in range(g):
            a, bb = Word.gen(2 * i), Word.gen(2 * i + 1)
            rels += [a * h * a.inverse() * h.inverse(), bb * h * bb.inverse() * h.inverse()]
            prod = prod * a * bb * a.inverse() * bb.inverse()
        rels.append(prod * h ** (-b))
        return Presentation(tuple(names), tuple(rels))
    if eps in ("n1", "n2"):
        if g < 1:
            raise CoverError("non-orientable base needs genus >= 1")
        names = ["v"] + [f"v{i + 1}" for i in range(1, g)] if g > 1 else ["v"]
        names = names + ["h"]
        h = Word.gen(g)
        sign = 1 if eps == "n1" else -1
        rels = []
        prod = Word()
        for i in range(g):
            v = Word.gen(i)
            rels.append(v * h * v.inverse() * h ** (-sign))
            prod = prod * v * v
        rels.append(prod * h ** (-b))
        return Presentation(tuple(names), tuple(rels))
    raise CoverError(f"unsupported Seifert type {eps!r}")


def seifert_is_orientable(eps: str) -> bool:
    return eps in ("o1", "n2")


@dataclass
class ManifoldModel:
    """One catalog manifold: group data plus how to triangulate it."""

    name: str
    seifert: tuple[int, str, int]
    presentation: Presentation
    w1: GroupHom2
    triangulation_recipe: Optional[str] = None
    marked_loops: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    aut_generators: tuple[Automorphism, ...] = ()
    _complex: Optional[OrderedComplex] = field(default=None, init=False, repr=False, compare=False)

    @property
    def has_triangulation(self) -> bool:
        return self.triangulation_recipe is not None

    def triangulation(self) -> OrderedComplex:
        """Build (once) the complex described by the recipe."""
        if self._complex is None:
            if self.triangulation_recipe is None:
                raise CoverError(f"{self.name} has no triangulation recipe")
            from .recipe import build

            K = build(self.triangulation_recipe)
            missing = {ref for refs in self.marked_loops.values() for ref in refs} - set(K.loops)
            if missing:
                raise CoverError(f"{self.name}: recipe has no loops {sorted(missing)}")
            self._complex = K
        return self._complex

    @property
    def catalog_group(self) -> CatalogGroup:
        return recognize_catalog_group(self.presentation)

    def normal_form(self):
        return normal_form_function(self.presentation, self.catalog_group)


def check_automorphism(p: Presentation, aut: Automorphism, nf=None) -> None:
    """Raise unless ``aut`` kills every relator and its stated inverse works
    both ways, comparing in the catalog normal form."""
    nf = nf or normal_form_function(p)
    if len(aut.images) != p.n_gens or len(aut.inverse) != p.n_gens:
        raise InvalidAutomorphismError("wrong number of generator images")
    one = nf(Word())
    for maps in (aut.images, aut.inverse):
        for r in p.relators:
            if nf(r.substitute(maps)) != one:
                raise InvalidAutomorphismError(
                    f"relator {p.format_word(r)} is not killed by "
                    f"({', '.join(p.format_word(w) for w in maps)})")
    for g in range(p.n_gens):
        x = Word.gen(g)
        there = x.substitute(aut.images).substitute(aut.inverse)
        back = x.substitute(aut.inverse).substitute(aut.images)
        if nf(there) != nf(x) or nf(back) != nf(x):
            raise InvalidAutomorphismError(
                f"stated inverse fails on generator {p.generator_names[g]}")


def word_key(model: ManifoldModel):
    """Equality test for words of ``model``'s group.  Outside the catalog
    groups there is no word problem solver, so this falls back to H_1
    coordinates (a necessary condition only)."""
    p = model.presentation
    if model.catalog_group is CatalogGroup.UNKNOWN:
        ab = abelianization(p)
        return lambda w: ab.coordinates(w.exponent_sums(p.n_gens))
    return model.normal_form()


def validate_model(model: ManifoldModel) -> None:
    p = model.presentation
    for r in p.relators:
        if evaluate_hom2(model.w1, r):
            raise CoverError(f"w1 does not kill relator {p.format_word(r)}")
    nf = word_key(model)
    for aut in model.aut_generators:
        check_automorphism(p, aut, nf)


# --- Reidemeister-Schreier ----------------------------------------------------

@dataclass(frozen=True)
class KernelPresentation:
    """Presentation of ``ker phi`` with each generator's word in the ambient group."""

    presentation: Presentation
    inclusion: tuple[Word, ...]
    ambient: Presentation
    phi: GroupHom2
    raw_relators: tuple[Word, ...] = ()

    def simplified(self) -> KernelPresentation:
        res = tietze_simplify_tracked(self.presentation)
        return KernelPresentation(res.presentation, tuple(self.inclusion[i] for i in res.kept),
                                  self.ambient, self.phi)

    def format_inclusion(self) -> dict[str, str]:
        return {name: self.ambient.format_word(w)
                for name, w in zip(self.presentation.generator_names, self.inclusion)}


def reidemeister_schreier_index2(p: Presentation, phi: GroupHom2) -> KernelPresentation:
    """Kernel of ``phi`` via the transversal ``{1, t}``, t the first generator
    with ``phi(t) = 1``.

    The Schreier generator ``y(c, x) = rep(c) x rep(c x)^-1`` is trivial only
    for ``(1, t)``, leaving ``2n - 1`` generators; each relator is rewritten
    from both cosets, giving ``2m`` relators (empty ones included in the
    count but dropped by :class:`Presentation`).
    """
    if len(phi.values) != p.n_gens:
        raise CoverError("homomorphism has the wrong number of values")
    if not phi.is_epimorphism:
        raise CoverError("homomorphism is not surjective")
    for r in p.relators:
        if evaluate_hom2(phi, r):
            raise CoverError(f"homomorphism does not kill relator {p.format_word(r)}")
    t = phi.values.index(1)
    names = p.generator_names
    rep = (Word(), Word.gen(t))
    slots: dict[tuple[int, int], int] = {}
    gen_names: list[str] = []
    inclusion: list[Word] = []
    for c in (0, 1):
        for x in range(p.n_gens):
            if (c, x) == (0, t):
                continue
            slots[(c, x)] = len(gen_names)
            gen_names.append(names[x] if c == 0 else f"{names[t]}_{names[x]}")
            target = c ^ phi.values[x]
            inclusion.append(rep[c] * Word.gen(x) * rep[target].inverse())

    def rewrite(w: Word, start: int) -> Word:
        c = start
        letters = []
        for x, e in w.letters:
            if e == 1:
                if (c, x) in slots:
                    letters.append((slots[(c, x)], 1))
                c ^= phi.values[x]
            else:
                c ^= phi.values[x]
                if (c, x) in slots:
                    letters.append((slots[(c, x)], -1))
        if c != start:
            raise AssertionError("rewritten relator did not return to its coset")
        return Word(tuple(letters))

    relators = [rewrite(r, c) for c in (0, 1) for r in p.relators]
    kernel = Presentation(tuple(gen_names), tuple(relators))
    return KernelPresentation(kernel, tuple(inclusion), p, phi, tuple(relators))


def cover_orientable(model: ManifoldModel, kernel: KernelPresentation) -> bool:
    return all(evaluate_hom2(model.w1, w) == 0 for w in kernel.inclusion)


@dataclass(frozen=True)
class CoverIdentification:
    name: str
    group: CatalogGroup
    orientable: bool
    kernel: KernelPresentation


def identify_cover_detailed(model: ManifoldModel, phi: GroupHom2) -> CoverIdentification:
    kernel = reidemeister_schreier_index2(model.presentation, phi).simplified()
    group = recognize_catalog_group(kernel.presentation)
    orientable = cover_orientable(model, kernel)
    if group is CatalogGroup.INF_CYCLIC:
        name = "S2xS1" if orientable else "E"
    elif group is CatalogGroup.Z2_x_Z:
        name = "RP2xS1"
    elif group is CatalogGroup.Z2_star_Z2:
        name = "RP3#RP3"
    else:
        raise UnknownCoverError(
            f"kernel of {phi.values} on {model.name} is {kernel.presentation}, "
            f"with H_1 = {abelianization(kernel.presentation)}; not a catalog group")
    return CoverIdentification(name, group, orientable, kernel)


def identify_cover(model: ManifoldModel, phi: GroupHom2) -> str:
    return identify_cover_detailed(model, phi).name


# --- stated kernels -----------------------------------------------------------

class KernelCheck(enum.Enum):
    VERIFIED = "verified"
    INCONCLUSIVE = "inconclusive"


def verify_stated_kernel(model: ManifoldModel, phi: GroupHom2, stated_gens: Sequence[Word],
                         max_length: int = 4) -> KernelCheck:
    """Check that ``stated_gens`` generate ``ker phi``.

    Each stated generator must lie in the kernel (else
    :class:`KernelMembershipError`).  Each Schreier generator must equal a
    product of at most ``max_length`` stated generators or inverses in the
    catalog normal form; if the search runs out the answer is INCONCLUSIVE.
    """
    p = model.presentation
    for w in stated_gens:
        if evaluate_hom2(phi, w):
            raise KernelMembershipError(f"{p.format_word(w)} is not in the kernel")
    nf = model.normal_form()
    letters = [w for g in stated_gens for w in (g, g.inverse())]
    reached = {nf(Word())}
    frontier = [Word()]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for x in letters:
                wx = w * x
                key = nf(wx)
                if key not in reached:
                    reached.add(key)
                    nxt.append(wx)
        frontier = nxt
    kernel = reidemeister_schreier_index2(p, phi)
    if all(nf(w) in reached for w in kernel.inclusion):
        return KernelCheck.VERIFIED
    return KernelCheck.INCONCLUSIVE


# --- equivalence --------------------------------------------------------------

def w1_preserving(model: ManifoldModel) -> list[Automorphism]:
    return [a for a in model.aut_generators if a.act_on_hom(model.w1) == model.w1]


def equivalence_orbits(model: ManifoldModel, epis: Sequence[GroupHom2]) -> list[tuple[GroupHom2, ...]]:
    """Orbits of ``epis`` under ``phi -> phi o alpha`` for the w1-preserving
    automorphism generators.  Each orbit is sorted; orbits are ordered by
    their first member.
    """
    validate_model(model)
    gens = w1_preserving(model)
    remaining = set(epis)
    orbits = []
    for phi in sorted(epis, key=lambda f: f.values):
        if phi not in remaining:
            continue
        orbit = {phi}
        todo = [phi]
        while todo:
            cur = todo.pop()
            for a in gens:
                img = a.act_on_hom(cur)
                if img not in orbit:
                    orbit.add(img)
                    todo.append(img)
        stray = orbit - set(epis)
        if stray:
            raise CoverError(f"automorphism action leaves the given set: {sorted(s.values for s in stray)}")
        remaining -= orbit
        orbits.append(tuple(sorted(orbit, key=lambda f: f.values)))
    return orbits


@dataclass(frozen=True)
class CoveringRecord:
    """One row of the classification: the pair (cover M, involution) over base N."""

    base: str
    phi: GroupHom2
    phi_values: tuple[tuple[str, int], ...]
    cover: str
    involution_label: str
    theorem_case: str
    index: int
    equivalence_class: int

    def __post_init__(self):
        if self.index not in (1, 2, 3):
            raise ValueError(f"index {self.index} outside 1..3")

