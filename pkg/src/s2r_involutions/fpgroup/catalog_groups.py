"""Recognition of the three groups that occur as fundamental groups of
closed S^2 x R manifolds, and solvable word problems for each.

Recognition only looks at abelian invariants.  That is sound exactly when
the input is already known to be one of the catalog groups; anything else
gets ``UNKNOWN`` rather than a guess.
"""

from __future__ import annotations

import enum
from typing import Callable, Hashable, Optional

from .presentation import Presentation, abelianization
from .words import Word, free_reduce, relator_key


class CatalogGroup(enum.Enum):
    INF_CYCLIC = "Z"
    Z2_x_Z = "Z2xZ"
    Z2_star_Z2 = "Z2*Z2"
    UNKNOWN = "unknown"


def recognize_catalog_group(p: Presentation, orientable_hint: Optional[int] = None) -> CatalogGroup:
    """Tag ``p`` by its abelian invariants.

    ``orientable_hint`` is accepted for interface symmetry; the three groups
    are already separated by H_1.
    """
    ab = abelianization(p)
    if ab.rank == 1 and ab.torsion == ():
        return CatalogGroup.INF_CYCLIC
    if ab.rank == 1 and ab.torsion == (2,):
        return CatalogGroup.Z2_x_Z
    if ab.rank == 0 and ab.torsion == (2, 2):
        return CatalogGroup.Z2_star_Z2
    return CatalogGroup.UNKNOWN


class NormalFormError(ValueError):
    pass


def _involution_pair(p: Presentation) -> tuple[int, int]:
    """Find ``(x, y)`` with relators ``{x^2, (x y)^2}`` up to rotation/inversion.

    Then ``a = x`` and ``b = x y`` are the two free-product involutions.
    """
    if p.n_gens != 2 or len(p.relators) != 2:
        raise NormalFormError(f"{p} is not of the form <x, y | x^2, (x y)^2>")
    keys = {relator_key(r) for r in p.relators}
    for x, y in ((0, 1), (1, 0)):
        X, Y = Word.gen(x), Word.gen(y)
        want = {relator_key(X * X), relator_key(Word((X * Y).letters * 2))}
        if keys == want:
            return x, y
    raise NormalFormError(f"{p} is not of the form <x, y | x^2, (x y)^2>")


def _reduce_involutions(seq: list[int]) -> tuple[int, ...]:
    out: list[int] = []
    for s in seq:
        if out and out[-1] == s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def normal_form_function(p: Presentation, tag: Optional[CatalogGroup] = None) -> Callable[[Word], Hashable]:
    """Return ``nf`` with ``nf(u) == nf(w)`` iff ``u == w`` in the group.

    Abelian catalog groups inject into H_1, so the H_1 coordinates are a
    normal form there (for ``<v, h | v^2, [v, h]>`` they are the pair
    v-parity, h-exponent-sum).  For Z/2 * Z/2 words are rewritten in the
    involutions ``a = x``, ``b = x y`` and reduced to alternating form,
    encoded as a tuple over ``{0: a, 1: b}``.
    """
    tag = tag or recognize_catalog_group(p)
    if tag in (CatalogGroup.INF_CYCLIC, CatalogGroup.Z2_x_Z):
        ab = abelianization(p)

        def nf_abelian(w: Word) -> Hashable:
            return ab.coordinates(w.exponent_sums(p.n_gens))

        return nf_abelian
    if tag is CatalogGroup.Z2_star_Z2:
        x, y = _involution_pair(p)
        # x = a, y = x^-1 b = a b
        images = {x: [0], y: [0, 1]}

        def nf_dihedral(w: Word) -> Hashable:
            seq: list[int] = []
            for g, e in free_reduce(w).letters:
                img = images[g] if e == 1 else images[g][::-1]
                seq.extend(img)
            return _reduce_involutions(seq)

        return nf_dihedral
    raise NormalFormError(f"no normal form available for {p}")
