"""Mod-2 simplicial cohomology of ordered complexes, with cup products.

Internally a k-cochain is an int bitset over ``K.simplices[k]``;
:class:`Cochain` wraps it with a numpy view for callers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence
from weakref import WeakKeyDictionary

import numpy as np

from . import gf2
from .simplicial import EdgeLoop, OrderedComplex


class CohomologyError(ValueError):
    pass


@dataclass(frozen=True)
class Cochain:
    degree: int
    bits: int
    size: int

    @classmethod
    def from_values(cls, degree: int, values) -> Cochain:
        values = np.asarray(values, dtype=np.uint8) % 2
        return cls(degree, gf2.to_bits(values), len(values))

    @classmethod
    def zero(cls, K: OrderedComplex, degree: int) -> Cochain:
        return cls(degree, 0, K.count(degree))

    @property
    def values(self) -> np.ndarray:
        return gf2.from_bits(self.bits, self.size)

    def __add__(self, other: Cochain) -> Cochain:
        if (self.degree, self.size) != (other.degree, other.size):
            raise CohomologyError("cannot add cochains on different index sets")
        return Cochain(self.degree, self.bits ^ other.bits, self.size)

    def __bool__(self) -> bool:
        return bool(self.bits)


@dataclass(frozen=True)
class CohomologyBasis:
    degree: int
    representatives: tuple[Cochain, ...]

    @property
    def dimension(self) -> int:
        return len(self.representatives)


class _Cache:
    """Per-complex incidence data, built lazily."""

    def __init__(self, K: OrderedComplex):
        self.K = K
        self._faces: dict[int, list[int]] = {}
        self._cofaces: dict[int, list[int]] = {}
        self._image: dict[int, gf2.Echelon] = {}
        self._basis: dict[int, CohomologyBasis] = {}

    def faces(self, k: int) -> list[int]:
        """Row j: bitset of the (k-1)-faces of the j-th k-simplex."""
        if k not in self._faces:
            idx = self.K.index(k - 1)
            rows = []
            for s in self.K.simplices[k]:
                row = 0
                for face in itertools.combinations(s, k):
                    row |= 1 << idx[face]
                rows.append(row)
            self._faces[k] = rows
        return self._faces[k]

    def cofaces(self, k: int) -> list[int]:
        """Row i: bitset of the (k+1)-simplices containing the i-th k-simplex,
        i.e. the coboundary of the i-th elementary cochain."""
        if k not in self._cofaces:
            cols = [0] * self.K.count(k)
            if k + 1 <= self.K.dim:
                for j, row in enumerate(self.faces(k + 1)):
                    bit = 1 << j
                    while row:
                        i = gf2.low_bit(row)
                        cols[i] |= bit
                        row &= row - 1
            self._cofaces[k] = cols
        return self._cofaces[k]

    def image(self, k: int) -> gf2.Echelon:
        """Echelon basis of the coboundaries in degree k."""
        if k not in self._image:
            ech = gf2.Echelon()
            if k >= 1:
                for v in self.cofaces(k - 1):
                    ech.add(v, 0)
            self._image[k] = ech
        return self._image[k]


_caches: WeakKeyDictionary = WeakKeyDictionary()


def _cache(K: OrderedComplex) -> _Cache:
    c = _caches.get(K)
    if c is None:
        c = _caches[K] = _Cache(K)
    return c


def _check_degree(K: OrderedComplex, k: int) -> None:
    if not 0 <= k <= K.dim:
        raise CohomologyError(f"degree {k} outside 0..{K.dim}")


def coboundary_matrix(K: OrderedComplex, k: int) -> np.ndarray:
    """Matrix of ``delta: C^k -> C^(k+1)`` over F_2, shape ``(n_{k+1}, n_k)``.

    At the top degree the target is zero and the matrix has no rows.
    """
    _check_degree(K, k)
    n_k = K.count(k)
    if k == K.dim:
        return np.zeros((0, n_k), dtype=np.uint8)
    rows = _cache(K).faces(k + 1)
    return np.array([gf2.from_bits(r, n_k) for r in rows], dtype=np.uint8).reshape(len(rows), n_k)


def coboundary(K: OrderedComplex, c: Cochain) -> Cochain:
    k = c.degree
    _check_degree(K, k)
    if k == K.dim:
        return Cochain(k + 1, 0, 0)
    rows = _cache(K).faces(k + 1)
    bits = 0
    for j, row in enumerate(rows):
        if (row & c.bits).bit_count() & 1:
            bits |= 1 << j
    return Cochain(k + 1, bits, len(rows))


def is_cocycle(K: OrderedComplex, c: Cochain) -> bool:
    return not coboundary(K, c).bits


def is_coboundary(K: OrderedComplex, c: Cochain) -> bool:
    _check_degree(K, c.degree)
    return _cache(K).image(c.degree).contains(c.bits)


def cohomology_basis(K: OrderedComplex, k: int) -> CohomologyBasis:
    """Representatives of a basis of ``H^k(K; F_2)``.

    Cocycles come from the reduced row echelon nullspace of the next
    coboundary (lowest pivots); each one that is independent of the
    coboundaries and of the earlier picks is kept.
    """
    _check_degree(K, k)
    cache = _cache(K)
    if k in cache._basis:
        return cache._basis[k]
    n_k = K.count(k)
    if k < K.dim:
        cocycles = gf2.nullspace(cache.faces(k + 1), n_k)
    else:
        cocycles = [1 << i for i in range(n_k)]
    ech = gf2.Echelon()
    if k >= 1:
        for v in cache.cofaces(k - 1):
            ech.add(v, 0)
    reps = []
    for z in cocycles:
        if ech.add(z, 0):
            reps.append(Cochain(k, z, n_k))
    basis = cache._basis[k] = CohomologyBasis(k, tuple(reps))
    return basis


def betti_numbers(K: OrderedComplex) -> tuple[int, ...]:
    """``dim H^k(K; F_2)`` for k = 0..dim K, from ranks of coboundaries."""
    cache = _cache(K)
    ranks = [gf2.rank(cache.faces(k + 1)) if k < K.dim else 0 for k in range(K.dim + 1)]
    return tuple(K.count(k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(K.dim + 1))


def class_coordinates(K: OrderedComplex, c: Cochain, basis: CohomologyBasis | None = None) -> tuple[int, ...]:
    """Coordinates of the class of cocycle ``c`` in ``basis``."""
    if not is_cocycle(K, c):
        raise CohomologyError("not a cocycle")
    basis = basis or cohomology_basis(K, c.degree)
    ech = gf2.Echelon()
    if c.degree >= 1:
        for v in _cache(K).cofaces(c.degree - 1):
            ech.add(v, 0)
    for i, rep in enumerate(basis.representatives):
        ech.add(rep.bits, 1 << i)
    rem, tag = ech.reduce(c.bits, 0)
    if rem:
        raise CohomologyError("cocycle not spanned by basis and coboundaries")
    return tuple((tag >> i) & 1 for i in range(basis.dimension))


def cup(K: OrderedComplex, a: Cochain, b: Cochain) -> Cochain:
    """Alexander-Whitney cup product with the front-face/back-face rule."""
    p, q = a.degree, b.degree
    n = p + q
    if n > K.dim:
        raise CohomologyError(f"cup degree {n} exceeds dimension {K.dim}")
    if a.size != K.count(p) or b.size != K.count(q):
        raise CohomologyError("cochain does not belong to this complex")
    ip, iq = K.index(p), K.index(q)
    bits = 0
    if a.bits and b.bits:
        for j, s in enumerate(K.simplices[n]):
            if (a.bits >> ip[s[:p + 1]]) & 1 and (b.bits >> iq[s[p:]]) & 1:
                bits |= 1 << j
    return Cochain(n, bits, K.count(n))


@dataclass(frozen=True)
class CubeResult:
    cochain: Cochain
    is_nonzero: bool


def cup_cube_class(K: OrderedComplex, c: Cochain) -> CubeResult:
    """``[c]^3`` in ``H^3``; the flag does not depend on the representative."""
    if c.degree != 1:
        raise CohomologyError("cup cube needs a degree-1 class")
    cube = cup(K, cup(K, c, c), c)
    return CubeResult(cube, not is_coboundary(K, cube))


def evaluate_on_loop(K: OrderedComplex, c: Cochain, loop: EdgeLoop) -> int:
    if c.degree != 1:
        raise CohomologyError("loops pair with 1-cochains")
    idx = K.index(1)
    total = 0
    for a, b in loop.edges():
        total ^= (c.bits >> idx[(min(a, b), max(a, b))]) & 1
    return total


def evaluate_on_loop_sum(K: OrderedComplex, c: Cochain, loop_names: Sequence[str]) -> int:
    total = 0
    for name in loop_names:
        total ^= evaluate_on_loop(K, c, K.loops[name])
    return total


def evaluation_matrix(K: OrderedComplex, marked_loops: Mapping[str, Sequence[str]]) -> list[list[int]]:
    """Rows: H^1 basis classes; columns: marked generators (dict order)."""
    basis = cohomology_basis(K, 1)
    return [[evaluate_on_loop_sum(K, rep, refs) for refs in marked_loops.values()]
            for rep in basis.representatives]


def cocycle_for_values(K: OrderedComplex, marked_loops: Mapping[str, Sequence[str]],
                       values: Mapping[str, int]) -> Cochain:
    """The unique H^1 class whose loop evaluations equal ``values``."""
    basis = cohomology_basis(K, 1)
    if basis.dimension != len(marked_loops):
        raise CohomologyError(
            f"H^1 has dimension {basis.dimension} but {len(marked_loops)} loops are marked")
    E = evaluation_matrix(K, marked_loops)
    gens = list(marked_loops)
    columns = [gf2.to_bits(row) for row in E]  # class i -> its evaluation vector
    if gf2.rank(columns) != len(columns):
        raise CohomologyError("loop evaluation matrix is singular")
    target = gf2.to_bits(values[g] for g in gens)
    combo = gf2.solve(columns, target)
    if combo is None:
        raise CohomologyError("no class matches the requested values")
    bits = 0
    for i, rep in enumerate(basis.representatives):
        if (combo >> i) & 1:
            bits ^= rep.bits
    return Cochain(1, bits, K.count(1))


def cocycle_for_hom(model, K: OrderedComplex, phi) -> Cochain:
    """Class of ``[phi]`` via the model's marked loops.

    ``model`` needs ``presentation.generator_names`` and ``marked_loops``
    (generator name -> loop names summed in F_2).
    """
    values = phi.as_mapping(model.presentation.generator_names)
    return cocycle_for_values(K, model.marked_loops, values)
