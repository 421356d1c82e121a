"""Command-line interface.

Exit codes: 0 success or pass, 1 verdict fail, 2 input error, 3 internal
inconsistency (disagreeing certificates, truncated resolutions, violated bounds).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fixtures
from .algebra.highest_weight import InconsistentCertificates, check_dual_exceptional, is_highest_weight
from .algebra.homological import Undetermined, global_dimension
from .algebra.quiver import Algebra, AlgebraError
from .cellular import (CellularAlgebra, CellularError, build_quiver, constant_module, constant_resolution,
                       costandard_sheaf, euler_characteristic, hypercohomology, is_full_simplex, simple_sheaf,
                       standard_sheaf)
from .diagnostics import check_faithful_hw, gldim_report, gldim_to_json, graded
from .io import (InputError, algebra_to_json, as_strat_perversity, dumps, load_json, parse_algebra,
                 parse_complex, parse_module, parse_perversity_arg, parse_stratification, parse_subcomplex,
                 perversity_to_json, stratification_to_json)
from .perversity import Perversity, PerversityError, StratPerversity
from .scalars import Field
from .simplicial import ComplexError, cohomology, cohomology_locally_closed, pairwise_link


class Exit(Exception):
    def __init__(self, code: int, report: dict):
        self.code = code
        self.report = report


# -- argument helpers --------------------------------------------------------

def _field(args) -> Field:
    try:
        return Field.from_flag(args.field)
    except ValueError as e:
        raise InputError(str(e)) from None


def _complex(args):
    return parse_complex(load_json(args.complex))


def _gm_perversity(args, k) -> Perversity:
    p = parse_perversity_arg(args.perversity, k.dim)
    if isinstance(p, StratPerversity):
        raise InputError("this command needs a dimension-indexed perversity (builtin name or table)")
    return p


def _cellular(args) -> CellularAlgebra:
    k = _complex(args)
    return build_quiver(k, _gm_perversity(args, k), _field(args))


def _algebra_source(args):
    """Algebra from ``--algebra``, ``--fixture`` or ``--complex/--perversity``; the cellular data if any."""
    field = _field(args)
    given = [x for x in (args.algebra, args.fixture, args.complex) if x]
    if len(given) != 1:
        raise InputError("give exactly one of --algebra, --fixture, --complex")
    if args.algebra:
        return parse_algebra(load_json(args.algebra), field), None
    if args.fixture:
        try:
            return fixtures.algebra_fixture(args.fixture, field), None
        except (KeyError, ValueError) as e:
            raise InputError(str(e).strip("'\"")) from None
    if not args.perversity:
        raise InputError("--complex needs --perversity")
    c = _cellular(args)
    return c.algebra, c


def _parse_order(text, alg: Algebra, cellular) -> list[int]:
    if text is None:
        return cellular.face_order() if cellular is not None else list(range(alg.n_vertices))
    if text == "face" and cellular is not None:
        return cellular.face_order()
    try:
        items = json.loads(text)
        if not isinstance(items, list):
            items = [items]
    except json.JSONDecodeError:
        items = [x.strip() for x in text.split(",") if x.strip()]
    order = []
    for x in items:
        if isinstance(x, list):
            x = "[" + ",".join(str(v) for v in sorted(x)) + "]"
        x = str(x)
        if x in alg.quiver.vertices:
            order.append(alg.quiver.vertex_index(x))
        elif x.isdigit() and int(x) < alg.n_vertices:
            order.append(int(x))
        else:
            raise InputError(f"order: unknown vertex {x!r}")
    if sorted(order) != list(range(alg.n_vertices)):
        raise InputError("order must list every vertex exactly once")
    return order


def _simplex_arg(text: str, k) -> tuple:
    try:
        verts = json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"cannot parse simplex {text!r}") from None
    if isinstance(verts, int):
        verts = [verts]
    if not isinstance(verts, list) or tuple(sorted(verts)) not in k.index:
        raise InputError(f"{text} is not a simplex of the complex")
    return tuple(sorted(verts))


def _names(alg: Algebra, vs) -> list:
    return [alg.quiver.vertices[v] for v in vs]


# -- commands ----------------------------------------------------------------

def cmd_cohomology(args) -> dict:
    k = _complex(args)
    field = _field(args)
    a = parse_subcomplex(load_json(args.relative), k) if args.relative else set()
    return {"field": field.flag, "relative": bool(args.relative), "H": graded(cohomology(k, a, field))}


def cmd_quiver(args) -> dict:
    c = _cellular(args)
    k = c.complex
    out = algebra_to_json(c.algebra)
    out.update({
        "field": c.field.flag,
        "perversity": perversity_to_json(c.perversity),
        "delta": {c.algebra.quiver.vertices[i]: d for i, d in enumerate(c.delta)},
        "types": {c.algebra.quiver.vertices[i]: t for i, t in enumerate(c.types)},
        "dimension": c.algebra.dimension,
        "n_simplices": len(k),
    })
    return out


def cmd_resolve(args) -> dict:
    c = _cellular(args)
    r = constant_resolution(c)
    degrees = list(range(c.lo, c.hi + 1))
    terms = r.degree_terms()
    out = {
        "field": c.field.flag,
        "perversity": perversity_to_json(c.perversity),
        "multiplicities": graded([len(terms.get(d, [])) for d in degrees], c.lo),
        "terms": [{"degree": d, "simplices": ["[" + ",".join(map(str, s)) + "]" for s in terms.get(d, [])]}
                  for d in degrees],
        "differential_squares_to_zero": True,
    }
    if is_full_simplex(c.complex):
        out["exact_below_top"] = r.exact_below_top
        out["top_stalk_dim"] = r.top_stalk_dim
    return out


def _module_arg(args, c: CellularAlgebra):
    text = args.module
    k = c.complex
    if os.path.exists(text):
        return parse_module(load_json(text), c.algebra)
    if text == "constant":
        if any(c.perversity.values):
            raise InputError("the constant module is only perverse for the zero perversity")
        return constant_module(c)
    for prefix, make in (("simple:", simple_sheaf), ("standard:", standard_sheaf),
                         ("costandard:", costandard_sheaf)):
        if text.startswith(prefix):
            return make(c, _simplex_arg(text[len(prefix):], k))
    raise InputError(f"module: {text!r} is not a file, constant, simple:[..], standard:[..] or costandard:[..]")


def cmd_hypercoh(args) -> dict:
    c = _cellular(args)
    e = _module_arg(args, c)
    return {"field": c.field.flag, "perversity": perversity_to_json(c.perversity),
            "H": hypercohomology(c, e), "euler": euler_characteristic(c, e)}


def cmd_gldim(args) -> dict:
    field = _field(args)
    if args.complex:
        if args.algebra or args.fixture:
            raise InputError("give exactly one of --algebra, --fixture, --complex")
        if not args.perversity:
            raise InputError("--complex needs --perversity")
        k = _complex(args)
        rep = gldim_report(k, _gm_perversity(args, k), field, args.assert_constant_perverse)
        out = rep.to_json()
        g = rep.gldim
        if g.status == "at-least":
            raise Exit(3, out)
        if not rep.consistent:
            raise Exit(3, out)
        return out
    alg, _ = _algebra_source(args)
    g = global_dimension(alg)
    out = gldim_to_json(g, alg.quiver.vertices)
    if g.status == "at-least":
        raise Exit(3, out)
    return out


def _ext_table(alg: Algebra, table: dict) -> list:
    return [{"from": alg.quiver.vertices[i], "to": alg.quiver.vertices[j], "ext": graded(h)}
            for (i, j), h in sorted(table.items())]


def cmd_hw_check(args) -> dict:
    alg, cel = _algebra_source(args)
    order = _parse_order(args.order, alg, cel)
    rep = is_highest_weight(alg, order)
    out = {
        "order": _names(alg, order),
        "verdict": rep.verdict,
        "schurian": {alg.quiver.vertices[v]: s for v, s in enumerate(rep.schurian)},
        "delta_filtrations": {alg.quiver.vertices[v]: (None if f is None else
                                                        [{"standard": alg.quiver.vertices[w], "multiplicity": m}
                                                         for w, m in f])
                              for v, f in rep.filtrations.items()},
        "bgg_reciprocity": rep.reciprocity,
        "ext2_standard_costandard_zero": rep.ext2_delta_nabla_zero,
        "homological_verdict": rep.homological_verdict,
        "standard_dims": {alg.quiver.vertices[v]: list(d.dims) for v, d in enumerate(rep.standards)},
        "costandard_dims": {alg.quiver.vertices[v]: list(d.dims) for v, d in enumerate(rep.costandards)},
    }
    if not rep.verdict:
        raise Exit(1, out)
    return out


def cmd_dual_exc_check(args) -> dict:
    alg, cel = _algebra_source(args)
    order = _parse_order(args.order, alg, cel)
    rep = check_dual_exceptional(alg, order)
    out = {"order": _names(alg, order), "applicable": rep.applicable, "verdict": rep.verdict}
    if not rep.applicable:
        out["reason"] = rep.reason
        return out
    out.update({
        "standards_exceptional": rep.standards_exceptional,
        "costandards_exceptional": rep.costandards_exceptional,
        "hom_duality": rep.hom_duality,
        "non_exceptional": [{"kind": kind, "vertex": alg.quiver.vertices[v]} for kind, v in rep.non_exceptional],
        "ext_delta_delta": _ext_table(alg, rep.ext_delta_delta),
        "ext_delta_nabla": _ext_table(alg, rep.ext_delta_nabla),
        "ext_nabla_nabla": _ext_table(alg, rep.ext_nabla_nabla),
    })
    if not rep.verdict:
        raise Exit(1, out)
    return out


def cmd_faithful_check(args) -> dict:
    k = _complex(args)
    field = _field(args)
    strat = parse_stratification(load_json(args.strat), k)
    p = as_strat_perversity(parse_perversity_arg(args.perversity, k.dim), strat)
    rep = check_faithful_hw(strat, p, field)
    out = {"field": field.flag, "perversity": perversity_to_json(p)}
    out.update(rep.to_json())
    if rep.verdict == "fail":
        raise Exit(1, out)
    return out


def cmd_links(args) -> dict:
    k = _complex(args)
    field = _field(args)
    strat = parse_stratification(load_json(args.strat), k)
    pairs = []
    for a, b in sorted(strat.pairs(), key=lambda ab: (strat.strata[ab[0]].name, strat.strata[ab[1]].name)):
        reals = []
        for pl in pairwise_link(strat, a, b):
            h, hc = cohomology_locally_closed(pl.cells, field)
            reals.append({"sigma": list(pl.sigma), "n_cells": len(pl.cells.ids),
                          "H": graded(h), "Hc": graded(hc)})
        pairs.append({"S": strat.strata[a].name, "T": strat.strata[b].name, "realizations": reals})
    out = {"field": field.flag, "depth": strat.depth(), "pairs": pairs}
    if not strat.is_faces:
        out["stratification"] = stratification_to_json(strat)
    return out


def cmd_fixtures(args) -> dict:
    if args.action == "list":
        return fixtures.listing()
    groups = args.names or None
    if groups:
        unknown = [g for g in groups if g not in fixtures.VERIFIERS]
        if unknown:
            raise InputError(f"unknown verify group(s): {', '.join(unknown)}")
    checks = fixtures.verify(groups)
    out = {"checks": [c.to_json() for c in checks], "passed": sum(c.passed for c in checks),
           "failed": sum(not c.passed for c in checks)}
    if out["failed"]:
        raise Exit(1, out)
    return out


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="perverscope",
                                  description="Perverse sheaves on simplicial complexes via cellular quiver algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q, f2 or f<p> (default q)")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("cohomology", cmd_cohomology, "simplicial (relative) cohomology")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--relative", help="subcomplex file (facet list)")

    for name, fn, help_ in (("quiver", cmd_quiver, "cellular quiver with relations"),
                            ("resolve", cmd_resolve, "constant-sheaf resolution multiplicities"),
                            ("hypercoh", cmd_hypercoh, "hypercohomology of a perverse module")):
        sp = add(name, fn, help_)
        sp.add_argument("--complex", required=True)
        sp.add_argument("--perversity", required=True)
        if name == "hypercoh":
            sp.add_argument("--module", required=True,
                            help="module file, constant, simple:[v..], standard:[v..] or costandard:[v..]")

    for name, fn, help_ in (("gldim", cmd_gldim, "global dimension"),
                            ("hw-check", cmd_hw_check, "highest-weight check for an order"),
                            ("dual-exc-check", cmd_dual_exc_check, "dual exceptional pair check")):
        sp = add(name, fn, help_)
        sp.add_argument("--algebra")
        sp.add_argument("--fixture")
        sp.add_argument("--complex")
        sp.add_argument("--perversity")
        if name == "gldim":
            sp.add_argument("--assert-constant-perverse", action="store_true",
                            help="apply the cohomological lower bound for nonzero perversities")
        else:
            sp.add_argument("--order", help="comma list or JSON list of vertex names; 'face' for cellular")

    sp = add("faithful-check", cmd_faithful_check, "link-vanishing faithfulness criterion")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--strat", required=True)
    sp.add_argument("--perversity", required=True)

    sp = add("links", cmd_links, "pairwise links and their cohomology")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--strat", required=True)

    sp = add("fixtures", cmd_fixtures, "list or verify the built-in fixtures")
    sp.add_argument("action", choices=["list", "verify"])
    sp.add_argument("names", nargs="*", help="verify groups (default all)")
    return top


def _emit(report: dict, out_path) -> None:
    text = dumps(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        report = args.fn(args)
        code = 0
    except Exit as e:
        report, code = e.report, e.code
    except (InconsistentCertificates, Undetermined, CellularError) as e:
        report, code = {"error": str(e), "kind": "internal-inconsistency"}, 3
    except (InputError, PerversityError, ComplexError, AlgebraError, ValueError) as e:
        report, code = {"error": str(e), "kind": "input"}, 2
    if "error" in report:
        sys.stderr.write(dumps(report))
    else:
        try:
            _emit(report, args.out)
        except OSError as e:
            sys.stderr.write(dumps({"error": f"cannot write {args.out}: {e.strerror}", "kind": "input"}))
            return 2
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
