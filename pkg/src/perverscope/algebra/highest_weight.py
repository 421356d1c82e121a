"""Standard and costandard modules, highest-weight and dual-exceptional checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .homological import ext_dims, global_dimension, resolve
from .modules import (Module, dual, generated_submodule, hom_dim, projective, quotient)
from .quiver import Algebra, AlgebraError


class InconsistentCertificates(AlgebraError):
    """Two independent highest-weight tests disagree."""


def check_order(alg: Algebra, order: Sequence[int]) -> list[int]:
    order = list(order)
    if sorted(order) != list(range(alg.n_vertices)):
        raise AlgebraError("order must be a permutation of the vertices")
    return order


def _rank_of(order: Sequence[int]) -> list[int]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    return pos


def _standard(alg: Algebra, order: Sequence[int], v: int) -> Module:
    pos = _rank_of(order)
    p = projective(alg, v)
    gens = []
    for w in range(alg.n_vertices):
        if pos[w] > pos[v]:
            for k in range(p.dims[w]):
                gens.append((w, [1 if i == k else 0 for i in range(p.dims[w])]))
    return quotient(p, generated_submodule(p, gens)).module


def standard_module(alg: Algebra, order: Sequence[int], v: int) -> Module:
    """``Δ_v``: ``P_v`` modulo the trace of all ``P_w`` with ``w`` later in the order."""
    return _standard(alg, check_order(alg, order), v)


def costandard_module(alg: Algebra, order: Sequence[int], v: int, opposite: Optional[Algebra] = None) -> Module:
    """``∇_v = D Δ_v(A^op)``."""
    op = opposite if opposite is not None else alg.opposite()
    return dual(_standard(op, check_order(alg, order), v), alg)


def injective(alg: Algebra, v: int, opposite: Optional[Algebra] = None) -> Module:
    op = opposite if opposite is not None else alg.opposite()
    return dual(projective(op, v), alg)


# -- highest weight ----------------------------------------------------------

@dataclass
class HighestWeightReport:
    order: list
    verdict: bool
    schurian: list                      # per vertex: dim (Δ_v)_v == 1 and End(Δ_v) = k
    filtrations: dict                   # vertex -> list of (w, multiplicity) or failure note
    reciprocity: Optional[bool]         # BGG reciprocity when verdict holds
    ext2_delta_nabla_zero: bool
    homological_verdict: bool
    standards: list = dc_field(default_factory=list)
    costandards: list = dc_field(default_factory=list)


def delta_filtration(m: Module, standards: Sequence[Module], order: Sequence[int], allowed: set) -> Optional[list]:
    """Multiplicities ``(M : Δ_w)`` by peeling traces, or None if ``M`` is not Δ-filtered.

    Let ``w`` be the latest vertex of the support of ``M``.  Then ``M`` is
    Δ-filtered iff the submodule ``T`` generated by ``M_w`` is ``Δ_w^{m}`` with
    ``m = dim M_w`` (checked by dimension, since ``T`` is always a quotient of
    ``Δ_w^m``) and ``M/T`` is Δ-filtered.
    """
    out = []
    pos = _rank_of(order)
    while not m.is_zero():
        w = max((v for v in range(len(m.dims)) if m.dims[v]), key=lambda v: pos[v])
        if w not in allowed:
            return None
        mult = m.dims[w]
        gens = [(w, [1 if i == k else 0 for i in range(mult)]) for k in range(mult)]
        spans = generated_submodule(m, gens)
        tdim = sum(len(s[0]) if s else 0 for s in spans)
        if tdim != mult * standards[w].dim:
            return None
        out.append((w, mult))
        m = quotient(m, spans).module
    return out


def is_highest_weight(alg: Algebra, order: Sequence[int], strict: bool = True) -> HighestWeightReport:
    """Highest-weight test for a total order, with a homological cross-check.

    The structural test asks for ``[Δ_v : S_v] = 1`` and a Δ-filtration of every
    ``P_v`` with factors ``Δ_w``, ``w >= v``.  The cross-check is the criterion
    ``[Δ_v : S_v] = 1`` and ``Ext²(Δ, ∇) = 0``.  If they disagree and ``strict``
    is set, :class:`InconsistentCertificates` is raised.
    """
    order = check_order(alg, order)
    n = alg.n_vertices
    pos = _rank_of(order)
    op = alg.opposite()
    deltas = [_standard(alg, order, v) for v in range(n)]
    nablas = [dual(_standard(op, order, v), alg) for v in range(n)]
    schurian = [deltas[v].dims[v] == 1 and hom_dim(deltas[v], deltas[v]) == 1 for v in range(n)]
    filtrations = {}
    ok = all(schurian)
    for v in range(n):
        allowed = {w for w in range(n) if pos[w] >= pos[v]}
        filt = delta_filtration(projective(alg, v), deltas, order, allowed)
        filtrations[v] = filt
        if filt is None:
            ok = False
    # homological route
    ext2_zero = True
    for i in range(n):
        res = resolve(deltas[i], 3)
        for j in range(n):
            h = ext_dims(res, nablas[j], 2)
            if h[2]:
                ext2_zero = False
                break
        if not ext2_zero:
            break
    homological = all(schurian) and ext2_zero
    recip = None
    if ok:
        recip = True
        for v in range(n):
            mult = dict(filtrations[v])
            for w in range(n):
                if mult.get(w, 0) != nablas[w].dims[v]:
                    recip = False
    report = HighestWeightReport(order, ok, schurian, filtrations, recip, ext2_zero, homological, deltas, nablas)
    if strict and (ok != homological or recip is False):
        raise InconsistentCertificates(
            f"highest-weight certificates disagree for order {order}: "
            f"filtration test {ok}, Ext2 criterion {homological}, reciprocity {recip}")
    return report


def all_orders_highest_weight(alg: Algebra) -> dict:
    """Verdict for every total order (small algebras only)."""
    out = {}
    for perm in itertools.permutations(range(alg.n_vertices)):
        out[perm] = is_highest_weight(alg, perm).verdict
    return out


# -- dual exceptional collections -------------------------------------------

@dataclass
class DualExceptionalReport:
    order: list
    applicable: bool
    verdict: Optional[bool]
    ext_delta_delta: dict = dc_field(default_factory=dict)     # (i, j) -> [dims by degree]
    ext_delta_nabla: dict = dc_field(default_factory=dict)
    ext_nabla_nabla: dict = dc_field(default_factory=dict)
    standards_exceptional: Optional[bool] = None
    costandards_exceptional: Optional[bool] = None
    hom_duality: Optional[bool] = None
    non_exceptional: list = dc_field(default_factory=list)    # e.g. [("nabla", v)]
    reason: str = ""


def _is_k_in_degree0(h: Sequence[int]) -> bool:
    return bool(h) and h[0] == 1 and not any(h[1:])


def check_dual_exceptional(alg: Algebra, order: Sequence[int], gldim=None) -> DualExceptionalReport:
    """Ext tables among standards and costandards, and the dual-pair verdict.

    Standards form an exceptional sequence when ``Ext^*(Δ_v, Δ_v) = k`` in degree
    0 and ``Ext^*(Δ_w, Δ_v) = 0`` for ``w`` later than ``v``; costandards
    likewise with the order reversed.  The Hom-duality condition asks that
    ``Ext^d(Δ_v, ∇_w)`` be ``k`` exactly when ``v = w`` and ``d = 0``.
    """
    order = check_order(alg, order)
    n = alg.n_vertices
    pos = _rank_of(order)
    gd = gldim if gldim is not None else global_dimension(alg)
    if gd.status != "finite":
        return DualExceptionalReport(order, False, None, reason=f"global dimension is {gd}")
    top = gd.value
    op = alg.opposite()
    deltas = [_standard(alg, order, v) for v in range(n)]
    nablas = [dual(_standard(op, order, v), alg) for v in range(n)]
    rep = DualExceptionalReport(order, True, None)
    res_d = [resolve(deltas[i], top + 1) for i in range(n)]
    res_n = [resolve(nablas[i], top + 1) for i in range(n)]
    for i in range(n):
        for j in range(n):
            rep.ext_delta_delta[(i, j)] = ext_dims(res_d[i], deltas[j], top)
            rep.ext_delta_nabla[(i, j)] = ext_dims(res_d[i], nablas[j], top)
            rep.ext_nabla_nabla[(i, j)] = ext_dims(res_n[i], nablas[j], top)
    std_ok = cost_ok = True
    for i in range(n):
        if not _is_k_in_degree0(rep.ext_delta_delta[(i, i)]):
            std_ok = False
            rep.non_exceptional.append(("delta", i))
        if not _is_k_in_degree0(rep.ext_nabla_nabla[(i, i)]):
            cost_ok = False
            rep.non_exceptional.append(("nabla", i))
        for j in range(n):
            if pos[j] > pos[i] and any(rep.ext_delta_delta[(j, i)]):
                std_ok = False
            if pos[i] < pos[j] and any(rep.ext_nabla_nabla[(i, j)]):
                cost_ok = False
    duality = all((rep.ext_delta_nabla[(i, j)] == [1] + [0] * top) if i == j else not any(rep.ext_delta_nabla[(i, j)])
                  for i in range(n) for j in range(n))
    rep.standards_exceptional = std_ok
    rep.costandards_exceptional = cost_ok
    rep.hom_duality = duality
    rep.verdict = std_ok and cost_ok and duality
    return rep
