import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from s2r_involutions import gf2
from s2r_involutions import simplicial as sx
from s2r_involutions.cohomology import (
    Cochain,
    CohomologyError,
    betti_numbers,
    coboundary,
    coboundary_matrix,
    cocycle_for_hom,
    cocycle_for_values,
    cohomology_basis,
    cup,
    cup_cube_class,
    evaluate_on_loop,
    evaluate_on_loop_sum,
    is_coboundary,
    is_cocycle,
)
from s2r_involutions.fpgroup import GroupHom2
from s2r_involutions.recipe import build

RP2 = "quotient(subdiv(crosspoly(3)), antipode)"


def mat_rank(M):
    return gf2.rank(gf2.matrix_to_rows(M))


def dense_is_coboundary(K, c):
    # oracle: solve delta x = c by least-structure elimination on the dense matrix
    if c.degree == 0:
        return not c.bits
    D = coboundary_matrix(K, c.degree - 1)
    cols = [gf2.to_bits(D[:, j]) for j in range(D.shape[1])]
    return gf2.solve(cols, c.bits) is not None


def classes(K):
    """All elements of H^1 as representative cochains, indexed by coefficient vectors."""
    basis = cohomology_basis(K, 1).representatives
    out = {}
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        bits = 0
        for c, rep in zip(coeffs, basis):
            if c:
                bits ^= rep.bits
        out[coeffs] = Cochain(1, bits, K.count(1))
    return out


def test_coboundary_matrix_examples():
    C = sx.cycle(3)
    D0 = coboundary_matrix(C, 0)
    assert D0.shape == (3, 3) and mat_rank(D0) == 2
    S = sx.simplex_boundary(3)
    assert not ((coboundary_matrix(S, 1).astype(int) @ coboundary_matrix(S, 0)) % 2).any()
    assert coboundary_matrix(sx.point(), 0).size == 0
    with pytest.raises(CohomologyError):
        coboundary_matrix(C, 2)


def test_delta_squared_vanishes_on_catalog_complexes(models):
    for m in models.values():
        K = m.triangulation()
        for k in range(K.dim - 1):
            prod = coboundary_matrix(K, k + 1).astype(np.int64) @ coboundary_matrix(K, k)
            assert not (prod % 2).any(), (m.name, k)


def test_basis_dimensions(models):
    assert cohomology_basis(models["RP2xS1"].triangulation(), 1).dimension == 2
    assert cohomology_basis(models["RP3#RP3"].triangulation(), 3).dimension == 1
    assert cohomology_basis(sx.cycle(3), 1).dimension == 1
    with pytest.raises(CohomologyError):
        cohomology_basis(sx.cycle(3), 2)


def test_betti_numbers_of_models(models):
    assert betti_numbers(models["S2xS1"].triangulation()) == (1, 1, 1, 1)
    assert betti_numbers(models["RP2xS1"].triangulation()) == (1, 2, 2, 1)
    assert betti_numbers(models["RP3#RP3"].triangulation()) == (1, 2, 2, 1)
    assert betti_numbers(models["E"].triangulation()) == (1, 1, 1, 1)


def test_basis_representatives_independent(models):
    for m in models.values():
        K = m.triangulation()
        for k in range(K.dim + 1):
            reps = cohomology_basis(K, k).representatives
            assert all(is_cocycle(K, r) for r in reps)
            for coeffs in itertools.product((0, 1), repeat=len(reps)):
                if any(coeffs):
                    bits = 0
                    for c, r in zip(coeffs, reps):
                        bits ^= r.bits if c else 0
                    assert not dense_is_coboundary(K, Cochain(k, bits, K.count(k)))


def test_cup_examples():
    P2 = build(RP2)
    (x,) = cohomology_basis(P2, 1).representatives
    assert not dense_is_coboundary(P2, cup(P2, x, x))
    T = sx.ordered_product(sx.cycle(3), sx.cycle(3))
    a = cocycle_for_values(T, {"a": ("L.cycle",), "b": ("R.cycle",)}, {"a": 1, "b": 0})
    b = cocycle_for_values(T, {"a": ("L.cycle",), "b": ("R.cycle",)}, {"a": 0, "b": 1})
    assert not dense_is_coboundary(T, cup(T, a, b))
    assert dense_is_coboundary(T, cup(T, a, a))
    zero = Cochain.zero(T, 1)
    assert not cup(T, zero, a) and not cup(T, a, zero)
    with pytest.raises(CohomologyError):
        cup(T, cup(T, a, b), a)


def test_is_coboundary_agrees_with_dense_oracle(models):
    K = models["RP2xS1"].triangulation()
    for c in classes(K).values():
        sq = cup(K, c, c)
        assert is_coboundary(K, sq) == dense_is_coboundary(K, sq)
        cube = cup(K, sq, c)
        assert is_coboundary(K, cube) == dense_is_coboundary(K, cube)


def _loop_values(model, K, c):
    return tuple(evaluate_on_loop_sum(K, c, refs) for refs in model.marked_loops.values())


@pytest.mark.parametrize("name,nonzero", [
    ("RP2xS1", {(1, 1)}),
    ("RP3#RP3", {(0, 1), (1, 0)}),
])
def test_cup_cubes_exhaustive(models, name, nonzero):
    """Cube of every H^1 class, reported by its values on the core/marked loops."""
    m = models[name]
    K = m.triangulation()
    seen = {}
    for c in classes(K).values():
        if name == "RP3#RP3":
            key = (evaluate_on_loop(K, c, K.loops["L.core"]), evaluate_on_loop(K, c, K.loops["R.core"]))
        else:
            key = _loop_values(m, K, c)
        cube = cup(K, cup(K, c, c), c)
        seen[key] = not dense_is_coboundary(K, cube)
        assert cup_cube_class(K, c).is_nonzero == seen[key]
    assert len(seen) == 4
    assert {k for k, v in seen.items() if v} == nonzero


def test_cocycle_for_hom_examples(models):
    m = models["RP2xS1"]
    K = m.triangulation()
    c = cocycle_for_hom(m, K, GroupHom2((0, 1)))
    assert _loop_values(m, K, c) == (0, 1)
    r = models["RP3#RP3"]
    K = r.triangulation()
    c = cocycle_for_hom(r, K, GroupHom2((0, 1)))
    assert (evaluate_on_loop(K, c, K.loops["L.core"]), evaluate_on_loop(K, c, K.loops["R.core"])) == (0, 1)


def test_cocycle_for_hom_reproduces_phi(models):
    from s2r_involutions.fpgroup import enumerate_epis_z2
    for m in models.values():
        K = m.triangulation()
        for phi in enumerate_epis_z2(m.presentation):
            c = cocycle_for_hom(m, K, phi)
            assert is_cocycle(K, c)
            want = tuple(phi.as_mapping(m.presentation.generator_names)[g] for g in m.marked_loops)
            assert _loop_values(m, K, c) == want


def test_cocycle_for_values_rejects_bad_marking():
    T = sx.ordered_product(sx.cycle(3), sx.cycle(3))
    with pytest.raises(CohomologyError, match="dimension"):
        cocycle_for_values(T, {"a": ("L.cycle",)}, {"a": 1})
    with pytest.raises(CohomologyError, match="singular"):
        cocycle_for_values(T, {"a": ("L.cycle",), "b": ("L.cycle",)}, {"a": 1, "b": 0})


CLASS_MODELS = ("RP2xS1", "RP3#RP3", "S2xS1", "E")


@pytest.mark.parametrize("name", CLASS_MODELS)
def test_cup_ring_laws_on_all_classes(models, name):
    K = models[name].triangulation()
    H1 = list(classes(K).values())
    for a, b, c in itertools.product(H1, repeat=3):
        # bilinearity in the first slot, on classes
        lhs = cup(K, a + b, c)
        rhs = cup(K, a, c) + cup(K, b, c)
        assert is_coboundary(K, lhs + rhs)
        # associativity of triple products
        assert is_coboundary(K, cup(K, cup(K, a, b), c) + cup(K, a, cup(K, b, c)))
    for a, b in itertools.product(H1, repeat=2):
        assert is_coboundary(K, cup(K, a, b) + cup(K, b, a))  # graded commutative, F2
        assert is_coboundary(K, cup(K, a, b + b))
        # cubic form identity (a+b)^3 = a^3 + a^2 b + a b^2 + b^3
        s = a + b
        cube = lambda x: cup(K, cup(K, x, x), x)  # noqa: E731
        total = cube(s) + cube(a) + cube(b) + cup(K, cup(K, a, a), b) + cup(K, cup(K, a, b), b)
        assert is_coboundary(K, total)


@given(st.data())
def test_cup_class_is_independent_of_representative(models, data):
    name = data.draw(st.sampled_from(("RP2xS1", "RP3#RP3")))
    K = models[name].triangulation()
    H1 = list(classes(K).values())
    a = data.draw(st.sampled_from(H1))
    b = data.draw(st.sampled_from(H1))
    f = data.draw(st.integers(0, 2 ** K.count(0) - 1))
    g = data.draw(st.integers(0, 2 ** K.count(0) - 1))
    a2 = a + coboundary(K, Cochain(0, f, K.count(0)))
    b2 = b + coboundary(K, Cochain(0, g, K.count(0)))
    assert is_cocycle(K, cup(K, a2, b2))
    assert is_coboundary(K, cup(K, a, b) + cup(K, a2, b2))
    assert cup_cube_class(K, a).is_nonzero == cup_cube_class(K, a2).is_nonzero


def test_loop_evaluation_survives_subdivision():
    T = sx.ordered_product(sx.cycle(3), sx.cycle(4))
    S = sx.barycentric_subdivision(T)
    marks = {"a": ("L.cycle",), "b": ("R.cycle",)}
    for vals in ((1, 0), (0, 1), (1, 1)):
        want = {"a": vals[0], "b": vals[1]}
        c = cocycle_for_values(T, marks, want)
        # pull back along the simplicial approximation sending each barycentre to its first vertex
        cells = [s for sk in T.simplices for s in sk]
        first = [cell[0] for cell in cells]
        idx = T.index(1)
        bits = 0
        for j, (u, w) in enumerate(S.simplices[1]):
            a, b = first[u], first[w]
            if a != b and (c.bits >> idx[(min(a, b), max(a, b))]) & 1:
                bits |= 1 << j
        pulled = Cochain(1, bits, S.count(1))
        assert is_cocycle(S, pulled)
        got = tuple(evaluate_on_loop_sum(S, pulled, refs) for refs in marks.values())
        assert got == vals
