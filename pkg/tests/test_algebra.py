import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from perverscope.algebra.highest_weight import (InconsistentCertificates, check_dual_exceptional,
                                                costandard_module, delta_filtration, injective, is_highest_weight,
                                                standard_module)
from perverscope.algebra.homological import (differential_in_radical, ext, ext_dims, global_dimension, hom_complex,
                                             resolution_is_complex, resolve)
from perverscope.algebra.modules import (ModuleError, direct_sum, dual, find_isomorphism, hom_dim, is_isomorphic,
                                         make_module, projective, projective_cover, random_module, simple, top_dims)
from perverscope.algebra.quiver import Algebra, AlgebraError, BoundQuiver, NotFiniteDimensional, quotient_by_vertices
from perverscope.fixtures import cp1_a2, cp2_three_strata, cp2_tilted, cp2_two_strata, cpn_affine
from perverscope.scalars import GF2, QQ, Field


def linear_a3(zero_relation=False, field=QQ):
    rels = [[(1, "ab")]] if zero_relation else []
    return Algebra(BoundQuiver.build(["0", "1", "2"], [("a", "0", "1"), ("b", "1", "2")], rels), field)


def test_quiver_validation():
    with pytest.raises(AlgebraError):
        BoundQuiver.build(["0", "0"], [])
    with pytest.raises(AlgebraError):
        BoundQuiver.build(["0", "1"], [("a", "0", "1")], [[(1, "aa")]])
    with pytest.raises(AlgebraError):
        BoundQuiver.build(["0", "1"], [("a", "0", "1"), ("b", "1", "0")], [[(1, "ab"), (1, "ba")]])
    with pytest.raises(AlgebraError):
        BoundQuiver.build(["0", "1"], [("a", "0", "2")])


def test_cp2_basis_by_hand():
    # e0 e1 e2, four arrows, then αβ at 0 and βα = γδ at 1; every length-3 path dies.
    a = cp2_three_strata()
    assert a.dimension == 9
    assert a.dims_between() == [[2, 1, 0], [1, 2, 1], [0, 1, 1]]
    assert sorted(len(b.arrows) for b in a.basis) == [0, 0, 0, 1, 1, 1, 1, 2, 2]


def test_commutativity_relation_identifies_paths():
    a = cp2_three_strata()
    q = a.quiver
    ba = a.reduce(1, [q.arrow_index("β"), q.arrow_index("α")])
    gd = a.reduce(1, [q.arrow_index("γ"), q.arrow_index("δ")])
    assert ba == gd and ba
    assert not a.reduce(0, [q.arrow_index("α"), q.arrow_index("γ")])


def test_small_algebra_dimensions():
    assert cp2_tilted().dimension == 11
    assert cp2_two_strata().dimension == 4
    assert linear_a3().dimension == 6
    assert linear_a3(True).dimension == 5


def test_loop_without_relations_is_rejected():
    q = BoundQuiver.build(["0"], [("x", "0", "0")])
    with pytest.raises(NotFiniteDimensional):
        Algebra(q, QQ, cap=10)


def test_module_validation():
    a = linear_a3(True)
    with pytest.raises(ModuleError):
        make_module(a, [1, 1, 1], {"a": [[1]], "b": [[1]]})
    m = make_module(a, [1, 1, 1], {"a": [[1]]})
    assert m.dim == 3
    with pytest.raises(ModuleError):
        make_module(a, [1, 1, 0], {"a": [[1, 2]]})


def test_projectives_follow_paths_out_of_a_vertex():
    a = linear_a3()
    assert projective(a, 0).dims == (1, 1, 1)
    assert projective(a, 2).dims == (0, 0, 1)
    assert linear_a3(True).n_vertices == 3
    assert projective(linear_a3(True), 0).dims == (1, 1, 0)


@pytest.mark.parametrize("field", [QQ, GF2, Field(3)])
def test_ext_one_and_two_count_arrows_and_relations(field):
    # For an admissible ideal, Ext^1(S_i, S_j) counts arrows i -> j and
    # Ext^2(S_i, S_j) counts minimal relations from i to j.
    for alg_fn in (cp2_three_strata, cp2_tilted, cp2_two_strata, cp1_a2):
        a = alg_fn(field)
        q = a.quiver
        n = a.n_vertices
        for i in range(n):
            for j in range(n):
                h = ext_dims(resolve(simple(a, i), 3), simple(a, j), 2)
                arrows = sum(1 for x in q.arrows if x.source == i and x.target == j)
                rels = sum(1 for r in q.relations
                           if q.arrows[r[0][1][0]].source == i and q.arrows[r[0][1][-1]].target == j)
                assert h[0] == (1 if i == j else 0)
                assert h[1] == arrows
                assert h[2] == rels


@pytest.mark.parametrize("alg_fn", [cp2_three_strata, cp2_tilted, cp2_two_strata])
def test_yoneda_and_projective_vanishing(alg_fn):
    a = alg_fn()
    rng = random.Random(3)
    for _ in range(10):
        m = random_module(a, rng)
        for v in range(a.n_vertices):
            assert hom_dim(projective(a, v), m) == m.dims[v]
            assert hom_dim(m, injective(a, v)) == m.dims[v]
            h = ext_dims(resolve(projective(a, v), 3), m, 3)
            assert h[1:] == [0, 0, 0]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["cp2", "tilted", "two"]))
def test_minimal_resolutions_are_complexes_in_the_radical(seed, which):
    a = {"cp2": cp2_three_strata, "tilted": cp2_tilted, "two": cp2_two_strata}[which]()
    m = random_module(a, random.Random(seed))
    res = resolve(m, 5)
    if m.is_zero():
        assert res.tops == []
        return
    assert resolution_is_complex(res)
    assert differential_in_radical(res)
    assert res.tops[0] == [v for v in range(a.n_vertices) for _ in range(top_dims(m)[v])]
    assert ext_dims(res, simple(a, 0), 0)[0] == top_dims(m)[0]


def test_direct_sums_and_isomorphism_search():
    a = cp2_three_strata()
    m = direct_sum([simple(a, 0), projective(a, 1)])
    n = direct_sum([projective(a, 1), simple(a, 0)])
    assert is_isomorphic(m, n)
    assert not is_isomorphic(simple(a, 0), simple(a, 1))
    assert find_isomorphism(projective(a, 0), projective(a, 0)) is not None
    assert projective_cover(m).module.dims == direct_sum([projective(a, 0), projective(a, 1)]).dims


def test_duality_is_involutive():
    a = cp2_tilted()
    op = a.opposite()
    for v in range(3):
        p = projective(a, v)
        assert is_isomorphic(dual(dual(p, op), a), p)


def test_quotient_by_vertices():
    a = cp2_tilted()
    b = quotient_by_vertices(a, [2])
    assert b.quiver.vertices == ("0'", "1'")
    assert [x.name for x in b.quiver.arrows] == ["α'"]
    assert b.dimension == 3


def test_global_dimensions_of_small_algebras():
    assert global_dimension(linear_a3()).value == 1
    assert global_dimension(linear_a3(True)).value == 2
    assert global_dimension(cp1_a2()).value == 1
    assert global_dimension(cpn_affine(0)).value == 0


def test_cap_fallback_reports_at_least(monkeypatch):
    monkeypatch.setenv("PERVERSCOPE_CAP", "2")
    g = global_dimension(cp2_three_strata())
    assert g.status == "at-least" and g.value == 3
    monkeypatch.setenv("PERVERSCOPE_CAP", "nonsense")
    with pytest.raises(AlgebraError):
        global_dimension(cp2_three_strata())


def test_infinite_global_dimension_witness_is_an_isomorphism():
    a = cp2_two_strata()
    g = global_dimension(a)
    assert g.status == "infinite"
    i, j = g.witness["syzygies"]
    v = a.quiver.vertex_index(g.witness["simple"])
    res = resolve(simple(a, v), j + 1)
    assert is_isomorphic(res.syzygies[i], res.syzygies[j])


def test_ext_is_zero_beyond_global_dimension():
    a = cp2_three_strata()
    for i, j in itertools.product(range(3), repeat=2):
        assert ext(simple(a, i), simple(a, j), 5, cap=7) == 0


def test_standard_and_costandard_modules_of_cp2():
    a = cp2_three_strata()
    order = [0, 1, 2]
    assert [standard_module(a, order, v).dims for v in range(3)] == [(1, 0, 0), (1, 1, 0), (0, 1, 1)]
    assert [costandard_module(a, order, v).dims for v in range(3)] == [(1, 0, 0), (1, 1, 0), (0, 1, 1)]


def test_highest_weight_for_the_natural_order_of_cp2():
    a = cp2_three_strata()
    rep = is_highest_weight(a, [0, 1, 2])
    assert rep.verdict and rep.homological_verdict and rep.reciprocity
    deltas = rep.standards
    assert delta_filtration(projective(a, 0), deltas, [0, 1, 2], {0, 1, 2}) is not None


@pytest.mark.parametrize("alg_fn", [cp2_three_strata, cp2_tilted, cp2_two_strata, cp1_a2])
def test_highest_weight_certificates_agree_for_every_order(alg_fn):
    a = alg_fn()
    for order in itertools.permutations(range(a.n_vertices)):
        rep = is_highest_weight(a, order)
        assert rep.verdict == rep.homological_verdict


def test_order_must_be_a_permutation():
    with pytest.raises(AlgebraError):
        is_highest_weight(cp2_three_strata(), [0, 1, 1])


def test_inconsistent_certificates_type():
    assert issubclass(InconsistentCertificates, AlgebraError)


def test_dual_exceptional_not_applicable_for_infinite_gldim():
    rep = check_dual_exceptional(cp2_two_strata(), [0, 1])
    assert not rep.applicable and rep.verdict is None


def test_dual_exceptional_tables_for_cp2():
    rep = check_dual_exceptional(cp2_three_strata(), [0, 1, 2])
    assert rep.verdict
    for (i, j), h in rep.ext_delta_nabla.items():
        assert h[0] == (1 if i == j else 0) and not any(h[1:])
