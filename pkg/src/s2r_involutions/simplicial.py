"""Finite ordered simplicial complexes and the constructions needed to
triangulate RP^2 x S^1, RP^3 # RP^3, S^2 x S^1 and E.

Every simplex is a strictly increasing vertex tuple, so the global vertex
order is what the cup product's front/back-face rule uses.  Complexes may
carry named edge loops and one free involution; each construction says how
it transports them.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

Simplex = tuple[int, ...]

MAX_DIM = 3


class ComplexError(ValueError):
    pass


class QuotientValidityError(ComplexError):
    """The vertex-orbit map does not give a simplicial complex.

    ``pair`` holds two simplices whose images collide (or a simplex listed
    twice when it meets its own image).
    """

    def __init__(self, message: str, pair: tuple[Simplex, Simplex]):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class EdgeLoop:
    """Closed edge path; ``vertices[i] -> vertices[i+1]`` and last -> first."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ComplexError("an edge loop needs at least two vertices")
        for a, b in self.edges():
            if a == b:
                raise ComplexError(f"degenerate edge at vertex {a}")

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def relabel(self, vertex_map) -> EdgeLoop:
        return EdgeLoop(tuple(vertex_map[v] for v in self.vertices))


@dataclass(frozen=True)
class SimplicialInvolution:
    """Vertex permutation of order at most two."""

    vertex_map: tuple[int, ...]

    def __post_init__(self):
        vm = self.vertex_map
        if sorted(vm) != list(range(len(vm))):
            raise ComplexError("involution vertex map is not a permutation")
        if any(vm[vm[i]] != i for i in range(len(vm))):
            raise ComplexError("vertex map is not an involution")

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def image(self, s: Simplex) -> Simplex:
        return tuple(sorted(self.vertex_map[v] for v in s))

    @property
    def is_free_on_vertices(self) -> bool:
        return all(self.vertex_map[i] != i for i in range(len(self.vertex_map)))


@dataclass(frozen=True, eq=False)
class OrderedComplex:
    """Ordered simplicial complex on vertices ``0..vertex_count-1``.

    ``simplices[k]`` is the sorted tuple of k-simplices.  Use
    :meth:`from_facets` to build one; it closes under faces and checks the
    invariants.
    """

    vertex_count: int
    simplices: tuple[tuple[Simplex, ...], ...]
    loops: Mapping[str, EdgeLoop] = field(default_factory=dict)
    involution: Optional[SimplicialInvolution] = None

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Iterable[Sequence[int]],
                    loops: Optional[Mapping[str, EdgeLoop]] = None,
                    involution: Optional[SimplicialInvolution] = None) -> OrderedComplex:
        by_dim: dict[int, set[Simplex]] = {}
        for f in facets:
            f = tuple(sorted(f))
            if len(set(f)) != len(f):
                raise ComplexError(f"repeated vertex in {f}")
            for k in range(len(f)):
                bucket = by_dim.setdefault(k, set())
                for face in itertools.combinations(f, k + 1):
                    bucket.add(face)
        top = max(by_dim, default=-1)
        simplices = tuple(tuple(sorted(by_dim.get(k, ()))) for k in range(top + 1))
        K = cls(vertex_count, simplices, dict(loops or {}), involution)
        K.check()
        return K

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k <= self.dim else 0

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(s) for k, s in enumerate(self.simplices))

    @cached_property
    def _index(self) -> list[dict[Simplex, int]]:
        return [{s: i for i, s in enumerate(sk)} for sk in self.simplices]

    def index(self, k: int) -> dict[Simplex, int]:
        return self._index[k]

    def __contains__(self, s) -> bool:
        s = tuple(s)
        k = len(s) - 1
        return 0 <= k <= self.dim and s in self._index[k]

    @cached_property
    def facets(self) -> tuple[Simplex, ...]:
        """Maximal simplices, by dimension then lexicographically."""
        covered: set[Simplex] = set()
        for k in range(1, self.dim + 1):
            for s in self.simplices[k]:
                for face in itertools.combinations(s, k):
                    covered.add(face)
        return tuple(s for sk in self.simplices for s in sk if s not in covered)

    @cached_property
    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in range(self.vertex_count)]
        if self.dim >= 1:
            for a, b in self.simplices[1]:
                nb[a].append(b)
                nb[b].append(a)
        return [sorted(x) for x in nb]

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for w in self.neighbors[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.vertex_count

    def check(self) -> None:
        """Raise :class:`ComplexError` unless every invariant holds."""
        if self.dim > MAX_DIM:
            raise ComplexError(f"dimension {self.dim} exceeds {MAX_DIM}")
        if self.dim >= 0 and self.simplices[0] != tuple((v,) for v in range(self.vertex_count)):
            raise ComplexError("vertex set must be exactly 0..n-1")
        for k, sk in enumerate(self.simplices):
            for s in sk:
                if len(s) != k + 1 or any(s[i] >= s[i + 1] for i in range(k)):
                    raise ComplexError(f"simplex {s} is not strictly increasing of dim {k}")
                if k and any(face not in self._index[k - 1]
                             for face in itertools.combinations(s, k)):
                    raise ComplexError(f"a face of {s} is missing")
        for name, loop in self.loops.items():
            for a, b in loop.edges():
                if (min(a, b), max(a, b)) not in self:
                    raise ComplexError(f"loop {name!r} uses missing edge {(a, b)}")
        if self.involution is not None:
            if len(self.involution.vertex_map) != self.vertex_count:
                raise ComplexError("involution size does not match vertex count")
            for sk in self.simplices:
                for s in sk:
                    if self.involution.image(s) not in self:
                        raise ComplexError(f"involution does not map {s} to a simplex")

    def with_loops(self, loops: Mapping[str, EdgeLoop]) -> OrderedComplex:
        K = OrderedComplex(self.vertex_count, self.simplices, dict(loops), self.involution)
        K.check()
        return K

    def dump(self) -> str:
        """One simplex per line, by dimension then lexicographically."""
        lines = [" ".join(map(str, s)) for sk in self.simplices for s in sk]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (f"OrderedComplex(dim={self.dim}, f={self.f_vector()}, "
                f"loops={sorted(self.loops)})")


# --- primitives -------------------------------------------------------------

def cycle(n: int) -> OrderedComplex:
    """n-gon; loop ``cycle`` runs 0, 1, ..., n-1.  Even n carries the half-turn."""
    if n < 3:
        raise ComplexError("cycle needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    tau = None
    if n % 2 == 0:
        tau = SimplicialInvolution(tuple((i + n // 2) % n for i in range(n)))
    return OrderedComplex.from_facets(n, edges, {"cycle": EdgeLoop(tuple(range(n)))}, tau)


def simplex_boundary(d: int) -> OrderedComplex:
    """Boundary of the d-simplex, a (d-1)-sphere on d+1 vertices."""
    if d not in (2, 3, 4):
        raise ComplexError("simplex_boundary needs d in {2, 3, 4}")
    return OrderedComplex.from_facets(d + 1, itertools.combinations(range(d + 1), d))


def cross_polytope_boundary(d: int) -> OrderedComplex:
    """Boundary of the d-dimensional cross-polytope with its antipodal map.

    Vertex ``2i`` is ``+e_i`` and ``2i+1`` is ``-e_i``.
    """
    if d not in (2, 3, 4):
        raise ComplexError("cross_polytope_boundary needs d in {2, 3, 4}")
    facets = [tuple(2 * i + s for i, s in enumerate(signs))
              for signs in itertools.product((0, 1), repeat=d)]
    antipode = SimplicialInvolution(tuple(v ^ 1 for v in range(2 * d)))
    return OrderedComplex.from_facets(2 * d, facets, involution=antipode)


def build_primitive(kind: str, param: int) -> OrderedComplex:
    builders = {
        "cycle": cycle,
        "simplex_boundary": simplex_boundary,
        "cross_polytope_boundary": cross_polytope_boundary,
    }
    if kind not in builders:
        raise ComplexError(f"unknown primitive {kind!r}")
    return builders[kind](param)


def point() -> OrderedComplex:
    return OrderedComplex.from_facets(1, [(0,)])


# --- products ----------------------------------------------------------------

def _prefixed(loops: Mapping[str, EdgeLoop], prefix: str, vertex_map) -> dict[str, EdgeLoop]:
    return {prefix + name: loop.relabel(vertex_map) for name, loop in loops.items()}


def ordered_product(K: OrderedComplex, L: OrderedComplex) -> OrderedComplex:
    """Staircase triangulation of ``|K| x |L|``.

    Vertex ``(i, j)`` becomes ``i * L.vertex_count + j``.  Loops of K are
    carried at L-vertex 0 under the prefix ``L.``, loops of L at K-vertex 0
    under ``R.``.
    """
    if K.dim + L.dim > MAX_DIM:
        raise ComplexError(f"product dimension {K.dim + L.dim} exceeds {MAX_DIM}")
    nL = L.vertex_count
    facets = []
    for s in K.facets:
        for r in L.facets:
            p, q = len(s) - 1, len(r) - 1
            for steps in itertools.combinations(range(p + q), p):
                i = j = 0
                path = [s[0] * nL + r[0]]
                for t in range(p + q):
                    if t in steps:
                        i += 1
                    else:
                        j += 1
                    path.append(s[i] * nL + r[j])
                facets.append(path)
    loops = _prefixed(K.loops, "L.", {v: v * nL for v in range(K.vertex_count)})
    loops.update(_prefixed(L.loops, "R.", {w: w for w in range(nL)}))
    return OrderedComplex.from_facets(K.vertex_count * nL, facets, loops)


def _chains_between(s: Simplex) -> list[list[Simplex]]:
    """All maximal chains of faces of ``s``, vertex first."""
    out = []
    for perm in itertools.permutations(s):
        out.append([tuple(sorted(perm[:k + 1])) for k in range(len(s))])
    return out


def barycentric_subdivision(K: OrderedComplex) -> OrderedComplex:
    """First barycentric subdivision.

    New vertices are the simplices of K ordered by (dimension, tuple), so
    every chain is increasing.  Loops and involution are transported.
    """
    cells = [s for sk in K.simplices for s in sk]
    vid = {s: i for i, s in enumerate(cells)}
    facets = []
    for f in K.facets:
        for chain in _chains_between(f):
            facets.append([vid[c] for c in chain])
    loops = {}
    for name, loop in K.loops.items():
        vs = []
        for a, b in loop.edges():
            vs.append(vid[(a,)])
            vs.append(vid[(min(a, b), max(a, b))])
        loops[name] = EdgeLoop(tuple(vs))
    tau = None
    if K.involution is not None:
        tau = SimplicialInvolution(tuple(vid[K.involution.image(c)] for c in cells))
    return OrderedComplex.from_facets(len(cells), facets, loops, tau)


def product_subdivision(K: OrderedComplex, L: OrderedComplex) -> OrderedComplex:
    """Order complex of the product cell structure on ``|K| x |L|``.

    Unlike :func:`ordered_product` this does not depend on vertex orders, so
    a pair of involutions on the factors induces one on the result.  Loops
    are carried as in :func:`ordered_product`, passing through edge cells.
    """
    if K.dim + L.dim > MAX_DIM:
        raise ComplexError(f"product dimension {K.dim + L.dim} exceeds {MAX_DIM}")
    cells = sorted(((s, r) for sk in K.simplices for s in sk for rk in L.simplices for r in rk),
                   key=lambda c: (len(c[0]) + len(c[1]), c[0], c[1]))
    vid = {c: i for i, c in enumerate(cells)}
    facets = []
    for s in K.facets:
        for r in L.facets:
            p, q = len(s) - 1, len(r) - 1
            for ps in itertools.permutations(s):
                for pr in itertools.permutations(r):
                    for steps in itertools.combinations(range(p + q), p):
                        i = j = 0
                        chain = [vid[((ps[0],), (pr[0],))]]
                        for t in range(p + q):
                            if t in steps:
                                i += 1
                            else:
                                j += 1
                            chain.append(vid[(tuple(sorted(ps[:i + 1])), tuple(sorted(pr[:j + 1])))])
                        facets.append(chain)
    w0 = (0,)
    v0 = (0,)
    loops = {}
    for name, loop in K.loops.items():
        vs = []
        for a, b in loop.edges():
            vs += [vid[((a,), w0)], vid[((min(a, b), max(a, b)), w0)]]
        loops["L." + name] = EdgeLoop(tuple(vs))
    for name, loop in L.loops.items():
        vs = []
        for a, b in loop.edges():
            vs += [vid[(v0, (a,))], vid[(v0, (min(a, b), max(a, b)))]]
        loops["R." + name] = EdgeLoop(tuple(vs))
    tau = None
    if K.involution is not None and L.involution is not None:
        tK, tL = K.involution, L.involution
        tau = SimplicialInvolution(tuple(vid[(tK.image(s), tL.image(r))] for s, r in cells))
    return OrderedComplex.from_facets(len(cells), facets, loops, tau)


# --- quotients ---------------------------------------------------------------

def _shortest_path(K: OrderedComplex, start: int, goal: int) -> list[int]:
    prev = {start: start}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        if v == goal:
            break
        for w in K.neighbors[v]:
            if w not in prev:
                prev[w] = v
                todo.append(w)
    if goal not in prev:
        raise ComplexError(f"vertex {goal} unreachable from {start}")
    path = [goal]
    while path[-1] != start:
        path.append(prev[path[-1]])
    return path[::-1]


def free_quotient(K: OrderedComplex, tau: Optional[SimplicialInvolution] = None,
                  base_vertex: int = 0) -> OrderedComplex:
    """Quotient of K by a free simplicial involution.

    Orbits become vertices, numbered by their smallest member.  Raises
    :class:`QuotientValidityError` when some simplex meets its image or two
    simplices that are not swapped by ``tau`` land on the same orbit set;
    subdividing first (see :func:`quotient_with_subdivision`) fixes that.
    The result carries loop ``core``: the image of a shortest edge path
    from ``base_vertex`` to its partner.  Closed loops of K are pushed
    forward under their old names.
    """
    tau = tau or K.involution
    if tau is None:
        raise ComplexError("no involution given")
    if len(tau.vertex_map) != K.vertex_count:
        raise ComplexError("involution size does not match vertex count")
    if not tau.is_free_on_vertices:
        fixed = next(v for v in range(K.vertex_count) if tau(v) == v)
        raise ComplexError(f"involution fixes vertex {fixed}")
    reps = sorted(v for v in range(K.vertex_count) if v < tau(v))
    orbit = {}
    for i, v in enumerate(reps):
        orbit[v] = orbit[tau(v)] = i
    images: dict[Simplex, Simplex] = {}
    for sk in reversed(K.simplices):  # report colliding facets first
        for s in sk:
            img = tau.image(s)
            if set(s) & set(img):
                raise QuotientValidityError(f"simplex {s} meets its image {img}", (s, img))
            key = tuple(sorted(orbit[v] for v in s))
            other = images.get(key)
            if other is not None and other != img:
                raise QuotientValidityError(
                    f"simplices {other} and {s} have the same image {key}", (other, s))
            images.setdefault(key, s)
    facets = [tuple(sorted(orbit[v] for v in f)) for f in K.facets]
    path = _shortest_path(K, base_vertex, tau(base_vertex))
    loops = {"core": EdgeLoop(tuple(orbit[v] for v in path[:-1]))}
    for name, loop in K.loops.items():
        loops.setdefault(name, EdgeLoop(tuple(orbit[v] for v in loop.vertices)))
    return OrderedComplex.from_facets(len(reps), facets, loops)


def quotient_with_subdivision(K: OrderedComplex, tau: Optional[SimplicialInvolution] = None,
                              max_subdivisions: int = 2) -> OrderedComplex:
    """:func:`free_quotient`, subdividing and retrying on validity failure."""
    if tau is not None:
        K = OrderedComplex(K.vertex_count, K.simplices, K.loops, tau)
        K.check()
    for attempt in range(max_subdivisions + 1):
        try:
            return free_quotient(K)
        except QuotientValidityError:
            if attempt == max_subdivisions:
                raise
            K = barycentric_subdivision(K)
    raise AssertionError("unreachable")


def quotient_map_fibers(K: OrderedComplex, Q: OrderedComplex) -> dict[int, int]:
    """Histogram of fiber sizes of the orbit map ``K -> Q`` over all simplices.

    Orbits are recomputed from ``K.involution``; a valid free quotient gives
    ``{2: number of simplices of Q}``.
    """
    tau = K.involution
    reps = sorted(v for v in range(K.vertex_count) if v < tau(v))
    orbit = {}
    for i, v in enumerate(reps):
        orbit[v] = orbit[tau(v)] = i
    fiber: dict[Simplex, int] = {}
    for sk in K.simplices:
        for s in sk:
            key = tuple(sorted(orbit[v] for v in s))
            if key not in Q:
                raise ComplexError(f"image {key} of {s} is not a simplex of the quotient")
            fiber[key] = fiber.get(key, 0) + 1
    hist: dict[int, int] = {}
    for sk in Q.simplices:
        for s in sk:
            c = fiber.get(s, 0)
            hist[c] = hist.get(c, 0) + 1
    return hist


# --- connected sum -----------------------------------------------------------

def _loop_vertices(K: OrderedComplex) -> set[int]:
    return {v for loop in K.loops.values() for v in loop.vertices}


def first_free_facet(K: OrderedComplex) -> Simplex:
    """Lexicographically first top simplex that touches no marked loop."""
    used = _loop_vertices(K)
    for f in K.simplices[K.dim]:
        if not used & set(f):
            return f
    raise ComplexError("every top simplex meets a marked loop")


def connected_sum(K: OrderedComplex, L: OrderedComplex,
                  fK: Optional[Simplex] = None, fL: Optional[Simplex] = None,
                  matching: Optional[Mapping[int, int]] = None) -> OrderedComplex:
    """Connected sum of closed 3-complexes along the tetrahedra ``fK``, ``fL``.

    Both tetrahedra are removed and their boundaries glued by ``matching``
    (an L-vertex -> K-vertex bijection; default pairs sorted vertices).
    Vertices of K keep their numbers; the rest of L follows in order.
    Loops come through as ``L.<name>`` and ``R.<name>``.
    """
    for X in (K, L):
        if X.dim != 3:
            raise ComplexError("connected sum needs 3-dimensional complexes")
        bad = [t for t, c in _triangle_degrees(X).items() if c != 2]
        if bad:
            raise ComplexError(f"not a closed pseudomanifold: triangle {bad[0]}")
    fK = tuple(fK) if fK is not None else first_free_facet(K)
    fL = tuple(fL) if fL is not None else first_free_facet(L)
    for X, f in ((K, fK), (L, fL)):
        if f not in X.index(3):
            raise ComplexError(f"{f} is not a facet")
        hit = _loop_vertices(X) & set(f)
        if hit:
            raise ComplexError(f"facet {f} meets a marked loop at vertex {min(hit)}")
    matching = dict(matching) if matching is not None else dict(zip(fL, fK))
    if sorted(matching) != sorted(fL) or sorted(matching.values()) != sorted(fK):
        raise ComplexError("matching must be a bijection from fL to fK")
    relabel = dict(matching)
    nxt = K.vertex_count
    for v in range(L.vertex_count):
        if v not in relabel:
            relabel[v] = nxt
            nxt += 1
    facets = [t for t in K.simplices[3] if t != fK]
    facets += [tuple(sorted(relabel[v] for v in t)) for t in L.simplices[3] if t != fL]
    loops = _prefixed(K.loops, "L.", {v: v for v in range(K.vertex_count)})
    loops.update(_prefixed(L.loops, "R.", relabel))
    return OrderedComplex.from_facets(nxt, facets, loops)


# --- validation --------------------------------------------------------------

def _triangle_degrees(K: OrderedComplex) -> dict[Simplex, int]:
    deg = {t: 0 for t in K.simplices[2]}
    for tet in K.simplices[3]:
        for t in itertools.combinations(tet, 3):
            deg[t] += 1
    return deg


@dataclass
class ValidationReport:
    betti: tuple[int, ...]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_closed_3complex(K: OrderedComplex) -> ValidationReport:
    """Closed-3-manifold proxy checks; failures are listed, never raised."""
    from .cohomology import betti_numbers

    failures = []
    if K.dim != 3:
        return ValidationReport((), [f"dimension is {K.dim}, expected 3"])
    for t, c in _triangle_degrees(K).items():
        if c != 2:
            failures.append(f"triangle {t} in {c} tetrahedr{'on' if c == 1 else 'a'}")
    if not K.is_connected():
        failures.append("complex is not connected")
    betti = betti_numbers(K)
    if betti[3] != 1:
        failures.append(f"dim H^3 = {betti[3]}, expected 1")
    if betti != betti[::-1]:
        failures.append(f"Betti numbers {betti} violate Poincare duality")
    return ValidationReport(betti, failures)
