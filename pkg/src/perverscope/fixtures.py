"""Built-in algebras and complexes with their expected values."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .algebra.highest_weight import all_orders_highest_weight, check_dual_exceptional, is_highest_weight
from .algebra.homological import ext, global_dimension, hom_complex, resolve
from .algebra.modules import projective, simple
from .algebra.quiver import Algebra, BoundQuiver, quotient_by_vertices
from .cellular import build_quiver, constant_module, constant_resolution, hypercohomology, minimality_report
from .diagnostics import check_faithful_hw, gldim_report
from .perversity import BUILTINS, StratPerversity, builtin
from .scalars import GF2, QQ, Field
from .simplicial import (SimplicialComplex, Stratification, boundary_of_simplex, cohomology,
                         cohomology_locally_closed, cone_suspension, full_simplex, pairwise_link, rp2_6, torus7)


# -- algebras ----------------------------------------------------------------

def cp2_three_strata(field: Field = QQ) -> Algebra:
    q = BoundQuiver.build(
        ["0", "1", "2"],
        [("α", "0", "1"), ("β", "1", "0"), ("γ", "1", "2"), ("δ", "2", "1")],
        [[(1, "αγ")], [(1, "δβ")], [(1, "δγ")], [(1, "βα"), (-1, "γδ")]])
    return Algebra(q, field)


def cp2_tilted(field: Field = QQ) -> Algebra:
    q = BoundQuiver.build(
        ["0'", "1'", "2'"],
        [("α'", "0'", "1'"), ("β'", "1'", "2'"), ("γ'", "2'", "0'")],
        [[(1, ["α'", "β'", "γ'", "α'"])], [(1, ["γ'", "α'", "β'"])]])
    return Algebra(q, field)


def cp1_a2(field: Field = QQ) -> Algebra:
    return Algebra(BoundQuiver.build(["0", "1"], [("a", "0", "1")]), field)


def cp2_two_strata(field: Field = QQ) -> Algebra:
    q = BoundQuiver.build(["1", "2"], [("a", "1", "2"), ("b", "2", "1")], [[(1, "ab")], [(1, "ba")]])
    return Algebra(q, field)


def cpn_affine(n: int, field: Field = QQ) -> Algebra:
    """Middle perverse sheaves on ``CP^n`` with its affine stratification, ``n <= 2``."""
    if n == 0:
        return Algebra(BoundQuiver.build(["0"], []), field)
    if n == 1:
        q = BoundQuiver.build(["0", "1"], [("α", "0", "1"), ("β", "1", "0")], [[(1, "βα")]])
        return Algebra(q, field)
    if n == 2:
        return cp2_three_strata(field)
    raise ValueError("cpn-affine is available for n <= 2 only")


ALGEBRAS: dict[str, Callable[[Field], Algebra]] = {
    "cp2-three-strata": cp2_three_strata,
    "cp2-tilted": cp2_tilted,
    "cp1-a2": cp1_a2,
    "cp2-two-strata": cp2_two_strata,
    "cpn-affine(0)": lambda f=QQ: cpn_affine(0, f),
    "cpn-affine(1)": lambda f=QQ: cpn_affine(1, f),
    "cpn-affine(2)": lambda f=QQ: cpn_affine(2, f),
}


def algebra_fixture(name: str, field: Field = QQ) -> Algebra:
    if name not in ALGEBRAS:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(ALGEBRAS)}")
    return ALGEBRAS[name](field)


# -- complexes ---------------------------------------------------------------

def suspension_of_torus() -> SimplicialComplex:
    return cone_suspension(torus7())


def suspension_strata(k: SimplicialComplex) -> Stratification:
    rest = [s for s in k.simplices if s not in ((7,), (8,))]
    return Stratification.from_cells(k, [("cone-7", [[7]]), ("cone-8", [[8]]), ("rest", rest)])


def vertex_rest_strata(k: SimplicialComplex, v: int = 0) -> Stratification:
    rest = [s for s in k.simplices if s != (v,)]
    return Stratification.from_cells(k, [("S0", [[v]]), ("S1", rest)])


COMPLEXES: dict[str, Callable[[], SimplicialComplex]] = {
    "simplex-0": lambda: full_simplex(0),
    "simplex-1": lambda: full_simplex(1),
    "simplex-2": lambda: full_simplex(2),
    "simplex-3": lambda: full_simplex(3),
    "simplex-4": lambda: full_simplex(4),
    "boundary-tetra": lambda: boundary_of_simplex(3),
    "torus7": torus7,
    "rp2-6": rp2_6,
    "susp-torus": suspension_of_torus,
}


def complex_fixture(name: str) -> SimplicialComplex:
    if name not in COMPLEXES:
        raise KeyError(f"unknown complex fixture {name!r}; known: {', '.join(COMPLEXES)}")
    return COMPLEXES[name]()


# -- verification ------------------------------------------------------------

@dataclass
class Check:
    fixture: str
    check: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"fixture": self.fixture, "check": self.check, "expected": self.expected,
                "actual": self.actual, "pass": self.passed}


def _gd_json(g) -> object:
    return g.value if g.status == "finite" else g.status


def _verify_cp2() -> list[Check]:
    name = "cp2-three-strata"
    a = cp2_three_strata()
    out = [Check(name, "global dimension", 4, _gd_json(global_dimension(a)))]
    res = resolve(simple(a, 2), 8)
    out.append(Check(name, "resolution of S2 (degrees -4..0)", ["P2", "P1", "P0+P2", "P1", "P2"],
                     list(reversed(res.pattern()))))
    h = hom_complex(res, simple(a, 2)).cohomology()
    out.append(Check(name, "degrees r with H^r(X; S2) nonzero", [-2, 0, 2],
                     [j - 2 for j, d in enumerate(h) if d]))
    out.append(Check(name, "H^*(X; P0) vanishes", True, not any(hom_complex(res, projective(a, 0)).cohomology())))
    out.append(Check(name, "highest weight for 0<1<2", True, is_highest_weight(a, [0, 1, 2]).verdict))
    out.append(Check(name, "dual exceptional pair for 0<1<2", True, check_dual_exceptional(a, [0, 1, 2]).verdict))
    return out


def _verify_tilted() -> list[Check]:
    name = "cp2-tilted"
    a = cp2_tilted()
    out = [Check(name, "global dimension", 4, _gd_json(global_dimension(a)))]
    hw = all_orders_highest_weight(a)
    out.append(Check(name, "orders that are highest weight", [],
                     [list(o) for o, ok in hw.items() if ok]))
    serre = quotient_by_vertices(a, [2])
    out.append(Check(name, "Ext^2(S0', S1') inside Filt(S0', S1')", 0, ext(simple(serre, 0), simple(serre, 1), 2)))
    out.append(Check(name, "Ext^2(S0', S1') in the whole module category", 1, ext(simple(a, 0), simple(a, 1), 2)))
    rep = is_highest_weight(a, [0, 1, 2])
    out.append(Check(name, "standards for 0'<1'<2' are S0', S1', P2'",
                     [list(simple(a, 0).dims), list(simple(a, 1).dims), list(projective(a, 2).dims)],
                     [list(d.dims) for d in rep.standards]))
    dx = check_dual_exceptional(a, [0, 1, 2])
    out.append(Check(name, "dual exceptional verdict", False, dx.verdict))
    out.append(Check(name, "non-exceptional objects", [["nabla", "1'"]],
                     [[kind, a.quiver.vertices[v]] for kind, v in dx.non_exceptional]))
    return out


def _verify_small() -> list[Check]:
    out = [Check("cp1-a2", "global dimension", 1, _gd_json(global_dimension(cp1_a2())))]
    g = global_dimension(cp2_two_strata())
    out.append(Check("cp2-two-strata", "global dimension", "infinite", _gd_json(g)))
    out.append(Check("cp2-two-strata", "syzygy repetition witness present", True,
                     g.witness is not None and g.witness.get("isomorphism") is not None))
    for n in range(3):
        out.append(Check(f"cpn-affine({n})", "global dimension", 2 * n, _gd_json(global_dimension(cpn_affine(n)))))
    return out


def _verify_complexes() -> list[Check]:
    out = []
    expected = {
        "simplex-2": {QQ: [1, 0, 0], GF2: [1, 0, 0]},
        "boundary-tetra": {QQ: [1, 0, 1], GF2: [1, 0, 1]},
        "torus7": {QQ: [1, 2, 1], GF2: [1, 2, 1]},
        "rp2-6": {QQ: [1, 0, 0], GF2: [1, 1, 1]},
    }
    for name, by_field in expected.items():
        k = complex_fixture(name)
        for f, h in by_field.items():
            out.append(Check(name, f"simplicial cohomology over {f}", h, cohomology(k, (), f)))
            c = build_quiver(k, builtin("zero", k.dim), f)
            out.append(Check(name, f"hypercohomology of the constant module over {f}", {"from": 0, "dims": h},
                             hypercohomology(c, constant_module(c))))
    k = torus7()
    out.append(Check("torus7", "global dimension (zero perversity)", 2,
                     _gd_json(gldim_report(k, builtin("zero", 2)).gldim)))
    c = build_quiver(k, builtin("zero", 2))
    out.append(Check("torus7", "minimal resolution of k_X matches the constant resolution", True,
                     minimality_report(c, constant_module(c)).coincides_with_constant_resolution))
    for n in range(5):
        for p in BUILTINS:
            c = build_quiver(full_simplex(n), builtin(p, n))
            r = constant_resolution(c)
            out.append(Check(f"simplex-{n}", f"constant resolution exact below the top ({p})", True,
                             bool(r.exact_below_top) and r.top_stalk_dim == 1))
    b = boundary_of_simplex(3)
    strat = vertex_rest_strata(b)
    out.append(Check("boundary-tetra", "faithful check, {v} and rest, zero perversity", "fail",
                     check_faithful_hw(strat, StratPerversity({"S0": 0, "S1": 0})).verdict))
    out.append(Check("boundary-tetra", "faithful check, {v} and rest, values 0 and -1", True,
                     check_faithful_hw(strat, StratPerversity({"S0": 0, "S1": -1})).passed))
    s = suspension_of_torus()
    st = suspension_strata(s)
    links = []
    for a, b2 in st.pairs():
        for pl in pairwise_link(st, a, b2):
            links.append(cohomology_locally_closed(pl.cells)[0])
    out.append(Check("susp-torus", "cone-point link cohomology", [[1, 2, 1], [1, 2, 1]], links))
    return out


VERIFIERS = {
    "cp2-three-strata": _verify_cp2,
    "cp2-tilted": _verify_tilted,
    "small-algebras": _verify_small,
    "complexes": _verify_complexes,
}


def verify(names=None) -> list[Check]:
    out = []
    for key, fn in VERIFIERS.items():
        if names and key not in names:
            continue
        out.extend(fn())
    return out


def listing() -> dict:
    return {"algebras": list(ALGEBRAS), "complexes": list(COMPLEXES), "verify_groups": list(VERIFIERS)}


def all_orders(n: int):
    return itertools.permutations(range(n))
