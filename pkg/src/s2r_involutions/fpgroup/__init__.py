"""Finitely presented groups: words, presentations, abelianization, Z/2 quotients."""

from .catalog_groups import CatalogGroup, NormalFormError, normal_form_function, recognize_catalog_group
from .presentation import (
    GroupHom2,
    Presentation,
    TietzeResult,
    abelianization,
    enumerate_epis_z2,
    evaluate_hom2,
    parse_presentation,
    tietze_simplify,
    tietze_simplify_tracked,
)
from .smith import AbelianizationData, abelian_invariants, smith_normal_form
from .words import IDENTITY, ParseError, Word, cyclic_reduce, format_word, free_reduce, parse_word

__all__ = [
    "AbelianizationData",
    "CatalogGroup",
    "GroupHom2",
    "IDENTITY",
    "NormalFormError",
    "ParseError",
    "Presentation",
    "TietzeResult",
    "Word",
    "abelian_invariants",
    "abelianization",
    "cyclic_reduce",
    "enumerate_epis_z2",
    "evaluate_hom2",
    "format_word",
    "free_reduce",
    "normal_form_function",
    "parse_presentation",
    "parse_word",
    "recognize_catalog_group",
    "smith_normal_form",
    "tietze_simplify",
    "tietze_simplify_tracked",
]
