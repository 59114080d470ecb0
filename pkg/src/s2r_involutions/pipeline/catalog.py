"""Manifold catalog files.

A catalog is a sequence of ``[manifold]`` sections of ``key = value`` lines::

    [manifold]
    name = RP2xS1
    seifert = {0;(n1,1)}
    presentation = <v, h | v^2, v h v^-1 h^-1>
    w1 = v:1,h:0
    recipe = product(quotient(subdiv(crosspoly(3)), antipode), cycle(3))
    loops = v:L.core, h:R.cycle
    aut = (v->v, h->h^-1) inverse (v->v, h->h^-1)
    involution = v:0,h:1 -> tau6 C

``aut`` and ``involution`` may repeat.  ``#`` starts a comment line.
Everything is validated on load; the first violation is reported with its
line.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .. import recipe as recipe_dsl
from ..covers import (
    MANIFOLD_NAMES,
    SEIFERT_SYMBOLS,
    Automorphism,
    CoverError,
    InvalidAutomorphismError,
    ManifoldModel,
    check_automorphism,
    equivalence_orbits,
    seifert_is_orientable,
    seifert_presentation,
    word_key,
)
from ..fpgroup import GroupHom2, ParseError, Presentation, Word, abelianization, enumerate_epis_z2, parse_presentation
from ..fpgroup.words import parse_word

DEFAULT_CATALOG = "default_catalog.txt"


class CatalogParseError(ParseError):
    pass


class CatalogValidationError(ValueError):
    def __init__(self, check: str, message: str, line: Optional[int] = None):
        self.check = check
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}[{check}] {message}")


class OutsideCatalogWarning(UserWarning):
    """A manifold outside the four closed S^2 x R manifolds was loaded."""


@dataclass(frozen=True)
class InvolutionLabel:
    tau: str
    theorem_case: str


@dataclass
class Catalog:
    models: tuple[ManifoldModel, ...] = ()
    involution_labels: dict[tuple[str, tuple[int, ...]], InvolutionLabel] = field(default_factory=dict)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.models)

    def model(self, name: str) -> ManifoldModel:
        for m in self.models:
            if m.name == name:
                return m
        raise KeyError(name)

    def restrict(self, names: Iterable[str]) -> Catalog:
        keep = set(names)
        unknown = keep - set(self.names)
        if unknown:
            raise KeyError(f"not in catalog: {sorted(unknown)}")
        return Catalog(tuple(m for m in self.models if m.name in keep),
                       {k: v for k, v in self.involution_labels.items() if k[0] in keep})

    def label_for(self, base: str, orbit: Iterable[GroupHom2]) -> Optional[InvolutionLabel]:
        for phi in orbit:
            lab = self.involution_labels.get((base, phi.values))
            if lab is not None:
                return lab
        return None


# --- parsing ------------------------------------------------------------------

_SEIFERT = re.compile(r"^\{\s*(-?\d+)\s*;\s*\(\s*(o1|n1|n2)\s*,\s*(\d+)\s*\)\s*\}$")
_AUT = re.compile(r"^\((.*)\)\s*inverse\s*\((.*)\)$")
_LABEL = re.compile(r"^(tau\d+)\s+([A-Za-z]\w*)$")
_REPEATABLE = ("aut", "involution")
_KEYS = ("name", "seifert", "presentation", "w1", "recipe", "loops") + _REPEATABLE
_REQUIRED = ("name", "seifert", "presentation", "w1")


@dataclass
class _Section:
    line: int
    values: dict[str, tuple[str, int, int]] = field(default_factory=dict)  # key -> (text, line, col)
    repeated: dict[str, list[tuple[str, int, int]]] = field(default_factory=dict)


def _sections(text: str) -> list[_Section]:
    sections: list[_Section] = []
    cur: Optional[_Section] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("["):
            if stripped != "[manifold]":
                raise CatalogParseError(f"unknown section {stripped}", column=line.index("[") + 1, line=lineno)
            cur = _Section(lineno)
            sections.append(cur)
            continue
        if "=" not in line:
            raise CatalogParseError("expected 'key = value'", column=len(line) - len(line.lstrip()) + 1, line=lineno)
        if cur is None:
            raise CatalogParseError("key outside a [manifold] section", column=1, line=lineno)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        if key not in _KEYS:
            raise CatalogParseError(f"unknown key {key!r}", column=line.index(key) + 1, line=lineno)
        col = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        entry = (value_part.strip(), lineno, col)
        if key in _REPEATABLE:
            cur.repeated.setdefault(key, []).append(entry)
        elif key in cur.values:
            raise CatalogParseError(f"duplicate key {key!r}", column=line.index(key) + 1, line=lineno)
        else:
            cur.values[key] = entry
    if not sections:
        raise CatalogParseError("catalog has no [manifold] section", column=1, line=1)
    for s in sections:
        for key in _REQUIRED:
            if key not in s.values:
                raise CatalogParseError(f"section is missing {key!r}", column=1, line=s.line)
    return sections


def _reraise(err: ParseError, line: int, col: int):
    inner = err.column or 1
    return CatalogParseError(err.message, column=col + inner - 1, line=line)


def _bit_map(text: str, line: int, col: int, names) -> dict[str, int]:
    out = {}
    for item in text.split(","):
        if ":" not in item:
            raise CatalogParseError(f"expected 'generator:bit', got {item.strip()!r}", column=col, line=line)
        g, b = (s.strip() for s in item.split(":", 1))
        if g not in names:
            raise CatalogParseError(f"unknown generator {g!r}", column=col, line=line)
        if b not in ("0", "1"):
            raise CatalogParseError(f"expected 0 or 1 for {g}, got {b!r}", column=col, line=line)
        if g in out:
            raise CatalogParseError(f"generator {g!r} given twice", column=col, line=line)
        out[g] = int(b)
    missing = [n for n in names if n not in out]
    if missing:
        raise CatalogParseError(f"no value for {', '.join(missing)}", column=col, line=line)
    return out


def _hom(text: str, line: int, col: int, p: Presentation) -> GroupHom2:
    return GroupHom2.from_mapping(_bit_map(text, line, col, p.generator_names), p.generator_names)


def _images(text: str, line: int, col: int, p: Presentation) -> tuple[Word, ...]:
    images: dict[str, Word] = {}
    for item in text.split(","):
        if "->" not in item:
            raise CatalogParseError(f"expected 'generator->word', got {item.strip()!r}", column=col, line=line)
        g, w = (s.strip() for s in item.split("->", 1))
        if g not in p.generator_names:
            raise CatalogParseError(f"unknown generator {g!r}", column=col, line=line)
        if g in images:
            raise CatalogParseError(f"generator {g!r} mapped twice", column=col, line=line)
        try:
            images[g] = parse_word(w, p.generator_names)
        except ParseError as e:
            raise _reraise(e, line, col) from None
    missing = [n for n in p.generator_names if n not in images]
    if missing:
        raise CatalogParseError(f"no image for {', '.join(missing)}", column=col, line=line)
    return tuple(images[n] for n in p.generator_names)


def _loops(text: str, line: int, col: int, p: Presentation) -> dict[str, tuple[str, ...]]:
    out: dict[str, tuple[str, ...]] = {}
    for item in text.split(","):
        if ":" not in item:
            raise CatalogParseError(f"expected 'generator:loop', got {item.strip()!r}", column=col, line=line)
        g, refs = (s.strip() for s in item.split(":", 1))
        if g not in p.generator_names:
            raise CatalogParseError(f"unknown generator {g!r}", column=col, line=line)
        parts = tuple(r.strip() for r in refs.split("+"))
        if not all(parts):
            raise CatalogParseError(f"empty loop reference for {g!r}", column=col, line=line)
        out[g] = parts
    return out


def _model(sec: _Section) -> tuple[ManifoldModel, list[tuple[str, int, int]]]:
    name, _, _ = sec.values["name"]
    text, line, col = sec.values["seifert"]
    m = _SEIFERT.match(text)
    if not m:
        raise CatalogParseError("expected seifert = {b;(eps,g)}", column=col, line=line)
    seifert = (int(m.group(1)), m.group(2), int(m.group(3)))

    text, line, col = sec.values["presentation"]
    try:
        p = parse_presentation(text)
    except ParseError as e:
        raise _reraise(e, line, col) from None

    w1 = _hom(*sec.values["w1"], p)
    recipe_text = None
    if "recipe" in sec.values:
        recipe_text, line, col = sec.values["recipe"]
        try:
            recipe_dsl.parse_recipe(recipe_text)
        except ParseError as e:
            raise _reraise(e, line, col) from None
    loops = _loops(*sec.values["loops"], p) if "loops" in sec.values else {}

    auts = []
    for text, line, col in sec.repeated.get("aut", []):
        m = _AUT.match(text)
        if not m:
            raise CatalogParseError("expected aut = (...) inverse (...)", column=col, line=line)
        auts.append(Automorphism(_images(m.group(1), line, col, p), _images(m.group(2), line, col, p)))

    model = ManifoldModel(name=name, seifert=seifert, presentation=p, w1=w1,
                          triangulation_recipe=recipe_text, marked_loops=loops,
                          aut_generators=tuple(auts))
    return model, sec.repeated.get("involution", [])


# --- validation ---------------------------------------------------------------

def _validate(model: ManifoldModel, sec: _Section) -> None:
    p = model.presentation
    line_of = {k: v[1] for k, v in sec.values.items()}

    if model.name not in MANIFOLD_NAMES:
        warnings.warn(f"{model.name!r} is not one of the closed S^2 x R manifolds; "
                      "results carry no guarantee", OutsideCatalogWarning, stacklevel=3)
    elif SEIFERT_SYMBOLS[model.name] != model.seifert:
        b, eps, g = SEIFERT_SYMBOLS[model.name]
        raise CatalogValidationError("seifert", f"{model.name} has Seifert symbol {{{b};({eps},{g})}}",
                                     line_of["seifert"])

    for r in p.relators:
        if model.w1(r):
            raise CatalogValidationError("w1", f"w1 does not kill relator {p.format_word(r)}", line_of["w1"])

    b, eps, g = model.seifert
    try:
        sp = seifert_presentation(b, eps, g)
    except CoverError as e:
        raise CatalogValidationError("seifert", str(e), line_of["seifert"]) from None
    ab_s, ab_p = abelianization(sp), abelianization(p)
    if (ab_s.rank, ab_s.torsion) != (ab_p.rank, ab_p.torsion):
        raise CatalogValidationError(
            "seifert", f"H_1 of the presentation is {ab_p} but the Seifert symbol gives {ab_s}",
            line_of["presentation"])
    if seifert_is_orientable(eps) != (not any(model.w1.values)):
        raise CatalogValidationError("w1", f"w1 disagrees with the orientability of type {eps}", line_of["w1"])

    if model.marked_loops:
        if model.triangulation_recipe is None:
            raise CatalogValidationError("loops", "loops given without a recipe", line_of["loops"])
        available = recipe_dsl.loop_names(recipe_dsl.parse_recipe(model.triangulation_recipe))
        for gen, refs in model.marked_loops.items():
            for ref in refs:
                if ref not in available:
                    raise CatalogValidationError(
                        "loops", f"loop {ref!r} for {gen} is not produced by the recipe "
                                 f"(has {', '.join(sorted(available)) or 'none'})", line_of["loops"])

    nf = word_key(model)
    for aut, (_, line, _) in zip(model.aut_generators, sec.repeated.get("aut", [])):
        try:
            check_automorphism(p, aut, nf)
        except InvalidAutomorphismError as e:
            raise CatalogValidationError("aut", str(e), line) from None


def _labels(model: ManifoldModel, entries, taken: dict[str, tuple[str, int]]):
    p = model.presentation
    epis = enumerate_epis_z2(p)
    orbits = equivalence_orbits(model, epis)
    labels: dict[tuple[str, tuple[int, ...]], InvolutionLabel] = {}
    orbit_of = {phi: k for k, orbit in enumerate(orbits) for phi in orbit}
    labelled: dict[int, int] = {}
    for text, line, col in entries:
        if "->" not in text:
            raise CatalogParseError("expected involution = <values> -> <tau> <case>", column=col, line=line)
        lhs, rhs = (s.strip() for s in text.split("->", 1))
        phi = _hom(lhs, line, col, p)
        m = _LABEL.match(rhs)
        if not m:
            raise CatalogParseError(f"expected '<tau> <case>', got {rhs!r}", column=col, line=line)
        if phi not in orbit_of:
            raise CatalogValidationError("involution", f"{lhs} is not an epimorphism onto Z/2", line)
        k = orbit_of[phi]
        if k in labelled:
            raise CatalogValidationError(
                "involution", f"{lhs} is equivalent to an already labelled map (line {labelled[k]})", line)
        tau = m.group(1)
        if tau in taken:
            raise CatalogValidationError(
                "involution", f"{tau} already labels a pair of {taken[tau][0]} (line {taken[tau][1]})", line)
        taken[tau] = (model.name, line)
        labelled[k] = line
        labels[(model.name, phi.values)] = InvolutionLabel(tau, m.group(2))
    if entries and len(labelled) != len(orbits):
        missing = [orbits[k][0].values for k in range(len(orbits)) if k not in labelled]
        raise CatalogValidationError("involution", f"{model.name}: no label for {missing}", entries[0][1])
    return labels


def parse_catalog(text: str) -> Catalog:
    sections = _sections(text)
    models = []
    labels: dict = {}
    taken: dict[str, tuple[str, int]] = {}
    seen: dict[str, int] = {}
    for sec in sections:
        model, entries = _model(sec)
        if model.name in seen:
            raise CatalogValidationError("name", f"{model.name} defined twice (first at line {seen[model.name]})",
                                         sec.values["name"][1])
        seen[model.name] = sec.values["name"][1]
        _validate(model, sec)
        labels.update(_labels(model, entries, taken))
        models.append(model)
    return Catalog(tuple(models), labels)


def load_catalog(path=None) -> Catalog:
    """Load a catalog file; without a path, the bundled default."""
    if path is None:
        text = resources.files("s2r_involutions.data").joinpath(DEFAULT_CATALOG).read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_catalog(text)
