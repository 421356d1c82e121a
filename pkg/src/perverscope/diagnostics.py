"""Link-vanishing faithfulness checks and global-dimension bound reports."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .algebra.homological import GlobalDimension, global_dimension
from .cellular import build_quiver
from .perversity import Perversity, StratPerversity
from .scalars import QQ, Field
from .simplicial import (SimplicialComplex, Stratification, cohomology, cohomology_locally_closed,
                         is_acyclic, pairwise_link)


def graded(dims, start: int = 0) -> dict:
    return {"from": start, "dims": list(dims)}


@dataclass
class LinkCheck:
    sigma: list
    h: list
    hc: list
    passed: bool


@dataclass
class PairCheck:
    s: str
    t: str
    need_h_vanish_above: int
    need_hc_vanish_below: int
    realizations: list
    passed: bool

    def to_json(self) -> dict:
        first = self.realizations[0]
        return {
            "S": self.s,
            "T": self.t,
            "H": graded(first.h),
            "Hc": graded(first.hc),
            "need_H_vanish_above": self.need_h_vanish_above,
            "need_Hc_vanish_below": self.need_hc_vanish_below,
            "pass": self.passed,
            "realizations": [{"sigma": r.sigma, "H": graded(r.h), "Hc": graded(r.hc), "pass": r.passed}
                             for r in self.realizations],
        }


@dataclass
class FaithfulReport:
    pairs: list
    acyclic: dict
    warnings: list
    verdict: str                    # pass | conditional-pass | fail | no-verdict

    @property
    def passed(self) -> bool:
        return self.verdict in ("pass", "conditional-pass")

    def to_json(self) -> dict:
        return {
            "pairs": [p.to_json() for p in self.pairs],
            "strata_acyclic": dict(self.acyclic),
            "warnings": list(self.warnings),
            "verdict": self.verdict,
        }


def _link_ok(h, hc, need: int) -> bool:
    high = all(not x for k, x in enumerate(h) if k > need)
    low = all(not x for k, x in enumerate(hc) if k < need - 1)
    return high and low


def check_faithful_hw(strat: Stratification, p: StratPerversity, field: Field = QQ) -> FaithfulReport:
    """Check ``H^k(L_{S<T}) = 0`` for ``k > p(S)-p(T)`` and ``H_c^k(L_{S<T}) = 0`` for ``k < p(S)-p(T)-1``.

    Every realisation of every pairwise link is evaluated.  Strata that are not
    acyclic over the field make the verdict ``no-verdict``; nontrivial acyclic
    strata make a passing verdict conditional on their contractibility.
    """
    warnings = []
    for st in strat.strata:
        p(st.name)
    acyclic = {}
    for st in strat.strata:
        acyclic[st.name] = is_acyclic(st.cells, field)
        if not acyclic[st.name]:
            warnings.append(f"stratum {st.name} has nonzero reduced cohomology; no verdict is drawn")
    if not strat.is_faces and all(acyclic.values()):
        warnings.append("strata are acyclic over the field; contractibility is assumed, not checked")
    pairs = []
    for a, b in sorted(strat.pairs(), key=lambda ab: (strat.strata[ab[0]].name, strat.strata[ab[1]].name)):
        s_name, t_name = strat.strata[a].name, strat.strata[b].name
        need = p(s_name) - p(t_name)
        reals = []
        for pl in pairwise_link(strat, a, b):
            h, hc = cohomology_locally_closed(pl.cells, field)
            reals.append(LinkCheck(list(pl.sigma), h, hc, _link_ok(h, hc, need)))
        if len({(tuple(r.h), tuple(r.hc)) for r in reals}) > 1:
            warnings.append(f"link realisations of {s_name} < {t_name} have different cohomology")
        pairs.append(PairCheck(s_name, t_name, need, need - 1, reals, all(r.passed for r in reals)))
    if not all(acyclic.values()):
        verdict = "no-verdict"
    elif not all(pc.passed for pc in pairs):
        verdict = "fail"
    elif strat.is_faces:
        verdict = "pass"
    else:
        verdict = "conditional-pass"
    return FaithfulReport(pairs, acyclic, warnings, verdict)


@dataclass
class GldimReport:
    gldim: GlobalDimension
    dim: int
    depth_bound: int
    cohomology: list
    lower_bound: Optional[int]
    lower_applicable: bool
    consistent: bool
    notes: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = gldim_to_json(self.gldim)
        out.update({
            "dim": self.dim,
            "upper_bounds": {"dim": self.dim, "twice_depth": self.depth_bound},
            "cohomology": graded(self.cohomology),
            "lower_bound": {"value": self.lower_bound, "applicable": self.lower_applicable},
            "consistent": self.consistent,
            "notes": list(self.notes),
        })
        return out


def gldim_to_json(g: GlobalDimension, vertex_names=None) -> dict:
    """``{"gldim": n, "status": ...}``; infinite gives null plus the witness."""
    out = {"gldim": g.value if g.status == "finite" else None, "status": g.status}
    if g.status == "at-least":
        out["at_least"] = g.value
    if g.witness is not None:
        out["witness"] = g.witness
    if vertex_names is not None:
        out["projective_dimensions"] = {vertex_names[i]: d for i, d in enumerate(g.projective_dimensions)}
    out["cap"] = g.cap
    return out


def gldim_report(k: SimplicialComplex, p: Perversity, field: Field = QQ,
                 assert_constant_perverse: bool = False) -> GldimReport:
    c = build_quiver(k, p, field)
    g = global_dimension(c.algebra)
    h = cohomology(k, (), field)
    lower = max((d for d, x in enumerate(h) if x), default=None)
    applicable = not any(c.perversity.values) or assert_constant_perverse
    notes = []
    ok = True
    if g.status != "finite":
        ok = False
        notes.append(f"global dimension {g} on a face stratification")
    else:
        if g.value > k.dim:
            ok = False
            notes.append("global dimension exceeds dim K")
        if applicable and lower is not None and g.value < lower:
            ok = False
            notes.append("global dimension below the cohomological lower bound")
    if not applicable:
        notes.append("lower bound not applicable: constant sheaf not asserted perverse")
    depth = Stratification.faces(k).depth()
    return GldimReport(g, k.dim, 2 * depth, h, lower, applicable, ok, notes)
