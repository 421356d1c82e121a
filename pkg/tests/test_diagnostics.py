import pytest

from perverscope.diagnostics import check_faithful_hw, gldim_report
from perverscope.fixtures import suspension_of_torus, suspension_strata, vertex_rest_strata
from perverscope.io import as_strat_perversity
from perverscope.perversity import BUILTINS, PerversityError, StratPerversity, builtin, dual
from perverscope.simplicial import Stratification, boundary_of_simplex, full_simplex, torus7
from suite import label, suite, suite_with_perversities
import oracles


def facets(k):
    return [s for i, s in enumerate(k.simplices) if not k.cofaces_of[i]]


def test_vertex_and_rest_on_the_sphere():
    k = boundary_of_simplex(3)
    strat = vertex_rest_strata(k)
    link_h = oracles.simplicial_cohomology(oracles.vertex_link(facets(k), 0))
    assert link_h == [1, 1]
    zero = check_faithful_hw(strat, StratPerversity({"S0": 0, "S1": 0}))
    assert zero.verdict == "fail"
    assert zero.pairs[0].realizations[0].h == link_h
    shifted = check_faithful_hw(strat, StratPerversity({"S0": 0, "S1": -1}))
    assert shifted.verdict == "conditional-pass"
    assert any("contractibility" in w for w in shifted.warnings)


def test_missing_stratum_value():
    strat = vertex_rest_strata(boundary_of_simplex(3))
    with pytest.raises(PerversityError):
        check_faithful_hw(strat, StratPerversity({"S0": 0}))


@pytest.mark.parametrize("k,name,p", suite_with_perversities(),
                         ids=lambda x: label(x) if hasattr(x, "simplices") else str(x))
def test_face_stratifications_pass_for_gm_perversities(k, name, p):
    strat = Stratification.faces(k)
    rep = check_faithful_hw(strat, as_strat_perversity(p, strat))
    assert rep.verdict == "pass"
    rep_dual = check_faithful_hw(strat, as_strat_perversity(dual(p), strat))
    assert rep_dual.verdict == rep.verdict


def test_suspension_has_no_verdict():
    k = suspension_of_torus()
    rep = check_faithful_hw(suspension_strata(k), StratPerversity({"cone-7": 0, "cone-8": 0, "rest": 0}))
    assert rep.verdict == "no-verdict"
    assert [p.realizations[0].h for p in rep.pairs] == [[1, 2, 1], [1, 2, 1]]


def test_gldim_report_on_torus():
    rep = gldim_report(torus7(), builtin("zero", 2))
    out = rep.to_json()
    assert out["gldim"] == 2 and out["status"] == "finite"
    assert out["lower_bound"] == {"value": 2, "applicable": True}
    assert rep.consistent


def test_gldim_lower_bound_needs_assertion_for_nonzero_perversity():
    rep = gldim_report(full_simplex(2), builtin("top", 2))
    assert not rep.lower_applicable
    rep = gldim_report(full_simplex(2), builtin("top", 2), assert_constant_perverse=True)
    assert rep.lower_applicable


@pytest.mark.parametrize("k", suite(), ids=label)
def test_gldim_bounds_on_the_suite(k):
    for name in BUILTINS:
        rep = gldim_report(k, builtin(name, k.dim))
        assert rep.gldim.status == "finite"
        assert rep.gldim.value <= k.dim <= rep.depth_bound or k.dim == 0
        assert rep.consistent
