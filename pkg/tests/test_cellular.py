import random

import pytest

from perverscope.algebra.homological import global_dimension
from perverscope.algebra.modules import simple
from perverscope.cellular import (CellularError, build_quiver, cellular_complex, constant_module,
                                  constant_resolution, costandard_sheaf, euler_characteristic, hypercohomology,
                                  minimality_report, random_face_refinement, random_perverse_module,
                                  resolution_hom_complex, simple_sheaf, standard_sheaf)
from perverscope.perversity import BUILTINS, Perversity, PerversityError, builtin
from perverscope.scalars import GF2, QQ, Field
from perverscope.simplicial import boundary_of_simplex, full_simplex, rp2_6, torus7
import oracles
from suite import label, suite, suite_with_perversities

SUITE = suite_with_perversities()


def facets(k):
    return [s for i, s in enumerate(k.simplices) if not k.cofaces_of[i]]


def test_triangle_quiver_by_hand():
    # zero perversity: an arrow for each codimension-one incidence (6 + 3), a
    # relation for each vertex-face pair (3), and the algebra has the 7
    # idempotents, 9 arrows and one surviving length-two path per relation.
    c = build_quiver(full_simplex(2), builtin("zero", 2))
    q = c.algebra.quiver
    assert len(q.arrows) == 9
    assert len(q.relations) == 3
    assert c.algebra.dimension == 19
    assert q.vertices[3] == "[0,1]"
    assert q.arrows[0].name == "t([0],[0,1])"


@pytest.mark.parametrize("k,name,p", SUITE, ids=lambda x: label(x) if hasattr(x, "simplices") else str(x))
def test_quiver_is_ranked_by_minus_delta(k, name, p):
    c = build_quiver(k, p)
    for a in c.algebra.quiver.arrows:
        assert -c.delta[a.target] == -c.delta[a.source] + 1
        assert k.is_face(a.source, a.target) or k.is_face(a.target, a.source)


def test_perversity_checks_in_build():
    with pytest.raises(PerversityError):
        build_quiver(full_simplex(2), Perversity((0, 1, 0)))
    with pytest.raises(PerversityError):
        build_quiver(full_simplex(2), Perversity((0,)))


@pytest.mark.parametrize("k,name,p", SUITE, ids=lambda x: label(x) if hasattr(x, "simplices") else str(x))
def test_constant_resolution_squares_to_zero(k, name, p):
    r = constant_resolution(build_quiver(k, p))
    assert sum(len(t) for t in r.resolution.tops) == len(k)


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("name", BUILTINS)
def test_full_simplex_constant_resolution_is_exact_below_top(n, name):
    r = constant_resolution(build_quiver(full_simplex(n), builtin(name, n)))
    assert r.exact_below_top and r.top_stalk_dim == 1


@pytest.mark.parametrize("k", suite(10), ids=label)
@pytest.mark.parametrize("field", [QQ, GF2])
def test_constant_module_matches_simplicial_oracle(k, field):
    c = build_quiver(k, builtin("zero", k.dim), field)
    h = hypercohomology(c, constant_module(c))
    assert h == {"from": 0, "dims": oracles.simplicial_cohomology(facets(k), field.p)}


def test_constant_module_needs_zero_perversity():
    with pytest.raises(CellularError):
        constant_module(build_quiver(full_simplex(1), builtin("top", 1)))


@pytest.mark.parametrize("k,name,p", SUITE[:30], ids=lambda x: label(x) if hasattr(x, "simplices") else str(x))
def test_two_routes_to_hypercohomology_agree(k, name, p):
    c = build_quiver(k, p)
    cres = constant_resolution(c)
    rng = random.Random(len(k))
    for _ in range(5):
        e = random_perverse_module(c, rng)
        a = cellular_complex(c, e)
        b = resolution_hom_complex(c, e, cres)
        assert a.dims == b.dims
        assert a.cohomology() == b.cohomology()


@pytest.mark.parametrize("k,name,p", SUITE, ids=lambda x: label(x) if hasattr(x, "simplices") else str(x))
def test_simple_sheaf_concentration(k, name, p):
    c = build_quiver(k, p)
    for i, s in enumerate(k.simplices):
        h = hypercohomology(c, simple_sheaf(c, s))
        got = {h["from"] + j: d for j, d in enumerate(h["dims"]) if d}
        assert got == {-c.delta[i]: 1} == oracles.simple_sheaf_degrees(s, p.values)


def test_standard_and_costandard_sheaves_on_a_triangle():
    c = build_quiver(full_simplex(2), builtin("zero", 2))
    # for the zero perversity the standard of the top cell is its simple
    assert standard_sheaf(c, [0, 1, 2]).dims == simple_sheaf(c, [0, 1, 2]).dims
    assert costandard_sheaf(c, [0]).dim >= 1


def test_euler_identity_on_random_modules():
    for k in (full_simplex(2), boundary_of_simplex(3), torus7()):
        for name in BUILTINS:
            c = build_quiver(k, builtin(name, k.dim))
            rng = random.Random(7)
            for _ in range(10):
                e = random_perverse_module(c, rng)
                h = hypercohomology(c, e)
                lhs = sum((-1) ** (h["from"] + j) * d for j, d in enumerate(h["dims"]))
                rhs = sum((-1) ** c.delta[i] * e.dims[i] for i in range(len(k)))
                assert lhs == rhs == euler_characteristic(c, e)


def test_minimality_on_the_torus():
    c = build_quiver(torus7(), builtin("zero", 2))
    rep = minimality_report(c, constant_module(c))
    assert rep.verdict and rep.coincides_with_constant_resolution
    with pytest.raises(CellularError):
        c2 = build_quiver(torus7(), builtin("top", 2))
        minimality_report(c2, simple_sheaf(c2, [0]))


def test_face_refinements_are_linear_extensions():
    k = torus7()
    rng = random.Random(1)
    for _ in range(5):
        order = random_face_refinement(k, rng)
        pos = {v: i for i, v in enumerate(order)}
        assert sorted(order) == list(range(len(k)))
        for i in range(len(k)):
            for f in k.facets_of[i]:
                assert pos[f] < pos[i]


def test_global_dimension_of_rp2_depends_on_field_through_cohomology():
    for field, expected_lower in ((QQ, 0), (GF2, 2)):
        c = build_quiver(rp2_6(), builtin("zero", 2), field)
        g = global_dimension(c.algebra)
        assert expected_lower <= g.value <= 2
