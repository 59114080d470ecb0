import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from s2r_involutions import simplicial as sx
from s2r_involutions.cohomology import betti_numbers
from s2r_involutions.recipe import build, loop_names, parse_recipe
from s2r_involutions.fpgroup import ParseError

RP2 = "quotient(subdiv(crosspoly(3)), antipode)"
RP3 = "quotient(subdiv(crosspoly(4)), antipode)"


def assert_well_formed(K):
    K.check()
    for k, sk in enumerate(K.simplices):
        for s in sk:
            assert list(s) == sorted(set(s)) and len(s) == k + 1
            for face in itertools.combinations(s, k):
                assert not face or face in K


def test_primitives():
    c = sx.cycle(3)
    assert c.f_vector() == (3, 3) and c.euler_characteristic() == 0
    d = sx.simplex_boundary(3)
    assert d.f_vector() == (4, 6, 4) and d.euler_characteristic() == 2
    x = sx.cross_polytope_boundary(4)
    assert x.vertex_count == 8 and x.count(3) == 16
    assert sx.build_primitive("cycle", 5).f_vector() == (5, 5)
    for bad in (lambda: sx.cycle(2), lambda: sx.simplex_boundary(5), lambda: sx.build_primitive("torus", 1)):
        with pytest.raises(sx.ComplexError):
            bad()


def test_product_examples():
    T = sx.ordered_product(sx.cycle(3), sx.cycle(3))
    assert T.f_vector() == (9, 27, 18) and T.euler_characteristic() == 0
    assert_well_formed(T)
    K = sx.simplex_boundary(3)
    Kp = sx.ordered_product(K, sx.point())
    assert Kp.simplices == K.simplices
    with pytest.raises(sx.ComplexError):
        sx.ordered_product(sx.simplex_boundary(4), sx.cycle(3))


def test_rp2_times_circle():
    K = build(f"product({RP2}, cycle(3))")
    assert betti_numbers(K) == (1, 2, 2, 1)
    assert set(K.loops) == {"L.core", "R.cycle"}
    assert sx.validate_closed_3complex(K).ok


def test_subdivision_examples():
    S = sx.barycentric_subdivision(sx.simplex_boundary(3))
    assert S.f_vector() == (14, 36, 24) and S.euler_characteristic() == 2
    C = sx.barycentric_subdivision(sx.cycle(3))
    assert C.f_vector() == (6, 6)
    assert len(C.loops["cycle"].vertices) == 6


@st.composite
def small_complexes(draw):
    n = draw(st.integers(3, 6))
    facets = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=1, max_size=3, unique=True),
                           min_size=1, max_size=6))
    used = sorted({v for f in facets for v in f})
    relabel = {v: i for i, v in enumerate(used)}
    return sx.OrderedComplex.from_facets(len(used), [[relabel[v] for v in f] for f in facets])


@given(small_complexes())
def test_subdivision_preserves_euler_characteristic(K):
    S = sx.barycentric_subdivision(K)
    assert_well_formed(S)
    assert S.euler_characteristic() == K.euler_characteristic()


@given(small_complexes(), small_complexes())
def test_product_multiplies_euler_characteristic(K, L):
    if K.dim + L.dim > 3:
        return
    P = sx.ordered_product(K, L)
    assert_well_formed(P)
    assert P.euler_characteristic() == K.euler_characteristic() * L.euler_characteristic()


def test_quotient_of_unsubdivided_cross_polytope_fails():
    with pytest.raises(sx.QuotientValidityError) as err:
        sx.free_quotient(sx.cross_polytope_boundary(4))
    a, b = err.value.pair
    assert len(a) == len(b) == 4
    # the two facets differ only in the sign of one coordinate
    assert len(set(a) ^ set(b)) == 2 and all(x ^ 1 in b for x in set(a) - set(b))


def test_quotient_models():
    P2 = build(RP2)
    assert betti_numbers(P2) == (1, 1, 1)
    P3 = build(RP3)
    assert betti_numbers(P3) == (1, 1, 1, 1)
    assert "core" in P3.loops
    with pytest.raises(sx.ComplexError):
        sx.free_quotient(sx.simplex_boundary(3), sx.SimplicialInvolution((1, 0, 2, 3)))


@pytest.mark.parametrize("recipe", [RP2, RP3, "quotient(cellprod(crosspoly(3), cycle(6)), antipode)"])
def test_quotient_is_two_to_one(recipe):
    call = parse_recipe(recipe)
    K = build(call.args[0])
    Q = build(call)
    cover = K if K.count(K.dim) == 2 * Q.count(Q.dim) else sx.barycentric_subdivision(K)
    hist = sx.quotient_map_fibers(cover, Q)
    assert hist == {2: sum(Q.f_vector())}


def test_connected_sum_examples():
    S3 = sx.simplex_boundary(4)
    assert betti_numbers(sx.connected_sum(S3, S3)) == (1, 0, 0, 1)
    R = build(f"consum({RP3}, {RP3})")
    assert R.euler_characteristic() == 0
    assert betti_numbers(R) == (1, 2, 2, 1)
    assert {"L.core", "R.core"} <= set(R.loops)


def test_connected_sum_rejects_loop_facets_and_non_facets():
    P3 = build(RP3)
    core = P3.loops["core"].vertices
    touching = next(f for f in P3.simplices[3] if core[0] in f)
    with pytest.raises(sx.ComplexError, match="marked loop"):
        sx.connected_sum(P3, P3, fK=touching)
    with pytest.raises(sx.ComplexError, match="not a facet"):
        sx.connected_sum(P3, P3, fK=(0, 1, 2, P3.vertex_count))
    with pytest.raises(sx.ComplexError):
        sx.connected_sum(sx.cycle(3), P3)


def test_validation_reports():
    S3 = sx.simplex_boundary(4)
    rep = sx.validate_closed_3complex(S3)
    assert rep.ok and rep.betti == (1, 0, 0, 1)
    dangling = sx.OrderedComplex.from_facets(5, list(S3.simplices[3][:-1]))
    rep = sx.validate_closed_3complex(dangling)
    assert not rep.ok
    assert any("in 1 tetrahedron" in f for f in rep.failures)


def test_catalog_complexes_validate(models):
    for m in models.values():
        K = m.triangulation()
        assert_well_formed(K)
        rep = sx.validate_closed_3complex(K)
        assert rep.ok, (m.name, rep.failures)
        assert rep.betti == rep.betti[::-1] and rep.betti[3] == 1


def test_dump_is_stable():
    K = sx.simplex_boundary(2)
    assert K.dump() == "0\n1\n2\n0 1\n0 2\n1 2\n"
    assert build("subdiv(simplex(3))").dump() == build("subdiv(simplex(3))").dump()


def test_recipe_parsing():
    call = parse_recipe(f"consum({RP3}, {RP3})")
    assert loop_names(call) == {"L.core", "R.core"}
    assert loop_names(parse_recipe("product(cycle(3), cycle(4))")) == {"L.cycle", "R.cycle"}
    with pytest.raises(ParseError) as err:
        parse_recipe("product(cycle(3), torus(2))")
    assert err.value.column == 19
    for bad in ("cycle(x)", "cycle(3", "cycle(3) cycle(3)", "quotient(cycle(4), mirror)"):
        with pytest.raises(ParseError):
            parse_recipe(bad)
