"""JSON input formats and deterministic report output."""

from __future__ import annotations

import json
import os
import re
from typing import Any, Optional

from .algebra.modules import Module, make_module
from .algebra.quiver import Algebra, BoundQuiver
from .perversity import BUILTINS, Perversity, PerversityError, StratPerversity, builtin
from .scalars import QQ, Field
from .simplicial import ComplexError, SimplicialComplex, Stratification


class InputError(ValueError):
    """Malformed or inconsistent input; maps to exit code 2."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON ({e.msg} at line {e.lineno})") from None


def _need(obj: dict, key: str, kind, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing key {key!r}")
    val = obj[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise InputError(f"{where}: {key!r} has the wrong type")
    return val


# -- complexes ---------------------------------------------------------------

def parse_complex(obj: Any) -> SimplicialComplex:
    n = _need(obj, "vertices", int, "complex")
    facets = _need(obj, "facets", list, "complex")
    if n < 1:
        raise InputError("complex: a nonempty complex needs at least one vertex")
    for f in facets:
        if not isinstance(f, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
            raise InputError("complex: every facet must be a list of integers")
    try:
        k = SimplicialComplex.from_facets(n, facets)
    except ComplexError as e:
        raise InputError(f"complex: {e}") from None
    if k.dim < 0:
        raise InputError("complex: no simplices")
    return k


def complex_to_json(k: SimplicialComplex) -> dict:
    return k.to_json()


def parse_subcomplex(obj: Any, k: SimplicialComplex) -> set:
    facets = obj.get("facets") if isinstance(obj, dict) else obj
    if not isinstance(facets, list):
        raise InputError("subcomplex: expected a facet list")
    ids = set()
    for f in facets:
        t = tuple(sorted(f))
        if t not in k.index:
            raise InputError(f"subcomplex: {list(t)} is not a simplex of the complex")
        ids.add(k.index[t])
    return k.closure(ids)


def parse_stratification(obj: Any, k: SimplicialComplex) -> Stratification:
    try:
        if obj == "faces" or (isinstance(obj, dict) and obj.get("strata") == "faces"):
            return Stratification.faces(k)
        strata = _need(obj, "strata", list, "stratification")
        named = []
        for st in strata:
            name = _need(st, "name", str, "stratum")
            cells = _need(st, "simplices", list, f"stratum {name}")
            named.append((name, cells))
        return Stratification.from_cells(k, named)
    except ComplexError as e:
        raise InputError(f"stratification: {e}") from None


def stratification_to_json(s: Stratification) -> dict:
    if s.is_faces:
        return {"strata": "faces"}
    k = s.complex
    return {"strata": [{"name": st.name, "simplices": [list(k.simplices[i]) for i in sorted(st.cells.ids)]}
                       for st in s.strata]}


# -- perversities ------------------------------------------------------------

def _strata_values(text: str) -> dict:
    """Parse ``{S0:0,S1:-1}`` with or without quotes around names."""
    text = text.strip()
    try:
        val = json.loads(text)
    except json.JSONDecodeError:
        body = text.strip("{}").strip()
        val = {}
        if body:
            for part in body.split(","):
                if ":" not in part:
                    raise InputError(f"perversity: cannot parse {part!r}")
                k, v = part.rsplit(":", 1)
                try:
                    val[k.strip().strip("'\"")] = int(v)
                except ValueError:
                    raise InputError(f"perversity: {v!r} is not an integer") from None
    if not isinstance(val, dict) or not all(isinstance(v, int) for v in val.values()):
        raise InputError("perversity: strata values must map names to integers")
    return {str(k): int(v) for k, v in val.items()}


def parse_perversity_obj(obj: Any, dim: Optional[int]):
    kind = _need(obj, "kind", str, "perversity")
    if kind in BUILTINS:
        if dim is None:
            raise InputError("perversity: a builtin perversity needs a complex")
        return builtin(kind, dim)
    if kind == "table":
        vals = _need(obj, "values", list, "perversity")
        if not all(isinstance(v, int) for v in vals):
            raise InputError("perversity: table values must be integers")
        return Perversity(tuple(vals))
    if kind == "strata":
        vals = _need(obj, "values", dict, "perversity")
        return StratPerversity({str(k): int(v) for k, v in vals.items()})
    raise InputError(f"perversity: unknown kind {kind!r}")


def parse_perversity_arg(arg: str, dim: Optional[int]):
    """File path, builtin name, ``strata:{..}`` or ``table:[..]`` / ``table:0,0,-1``."""
    if os.path.exists(arg):
        return parse_perversity_obj(load_json(arg), dim)
    if arg in BUILTINS:
        if dim is None:
            raise InputError("perversity: a builtin perversity needs a complex")
        return builtin(arg, dim)
    if arg.startswith("strata:"):
        return StratPerversity(_strata_values(arg[len("strata:"):]))
    if arg.startswith("table:"):
        body = arg[len("table:"):].strip().strip("[]")
        try:
            return Perversity(tuple(int(x) for x in body.split(",") if x.strip()))
        except ValueError:
            raise InputError(f"perversity: cannot parse table {arg!r}") from None
    raise InputError(f"perversity: {arg!r} is not a file, builtin name, strata:{{..}} or table:..")


def perversity_to_json(p) -> dict:
    if isinstance(p, StratPerversity):
        return {"kind": "strata", "values": dict(p.values)}
    for name in BUILTINS:
        if builtin(name, p.dim).values == p.values:
            return {"kind": name}
    return {"kind": "table", "values": list(p.values)}


def as_strat_perversity(p, strat: Stratification) -> StratPerversity:
    if isinstance(p, StratPerversity):
        return p
    try:
        return StratPerversity({st.name: p(st.dim) for st in strat.strata})
    except IndexError:
        raise PerversityError("perversity table shorter than the complex dimension") from None


# -- algebras and modules ----------------------------------------------------

def parse_algebra(obj: Any, field: Field = QQ) -> Algebra:
    verts = _need(obj, "vertices", list, "algebra")
    arrows = _need(obj, "arrows", list, "algebra")
    rels = obj.get("relations", [])
    comp = obj.get("composition", "diagrammatic")
    if comp not in ("diagrammatic", "functional"):
        raise InputError("algebra: composition must be 'diagrammatic' or 'functional'")
    vnames = [str(v) for v in verts]
    arr = []
    for a in arrows:
        arr.append((str(_need(a, "name", str, "arrow")), str(a.get("from")), str(a.get("to"))))
    relations = []
    for rel in rels:
        if not isinstance(rel, list) or not rel:
            raise InputError("algebra: each relation is a nonempty list of terms")
        terms = []
        for term in rel:
            path = _need(term, "path", list, "relation term")
            coeff = term.get("coeff", "1")
            try:
                c = field.parse(coeff)
            except (ValueError, ZeroDivisionError):
                raise InputError(f"algebra: bad coefficient {coeff!r}") from None
            if comp == "functional":
                path = list(reversed(path))
            terms.append((c, [str(x) for x in path]))
        relations.append(terms)
    try:
        return Algebra(BoundQuiver.build(vnames, arr, relations), field)
    except ValueError as e:
        raise InputError(f"algebra: {e}") from None


def algebra_to_json(alg: Algebra) -> dict:
    q = alg.quiver
    f = alg.field
    return {
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "from": q.vertices[a.source], "to": q.vertices[a.target]} for a in q.arrows],
        "relations": [[{"coeff": f.format(f.parse(c)), "path": [q.arrows[x].name for x in p]} for c, p in rel]
                      for rel in q.relations],
        "composition": "diagrammatic",
    }


def parse_module(obj: Any, alg: Algebra) -> Module:
    dims = _need(obj, "dims", dict, "module")
    maps = obj.get("maps", {})
    q = alg.quiver
    dv = [0] * len(q.vertices)
    for k, d in dims.items():
        key = _vertex_key(k, q.vertices)
        if not isinstance(d, int) or d < 0:
            raise InputError(f"module: dimension at {k} must be a non-negative integer")
        dv[q.vertices.index(key)] = d
    names = {a.name for a in q.arrows}
    clean = {}
    for k, m in maps.items():
        key = _arrow_key(k, names)
        clean[key] = m
    try:
        for key, m in clean.items():
            a = q.arrows[q.arrow_index(key)]
            if len(m) != dv[a.target] or any(len(r) != dv[a.source] for r in m):
                raise InputError(f"module: matrix for {key} should be {dv[a.target]}x{dv[a.source]}")
        return make_module(alg, dv, clean)
    except (ValueError, ZeroDivisionError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"module: {e}") from None


def _norm_simplex_key(text: str) -> Optional[str]:
    try:
        val = json.loads(text)
    except (json.JSONDecodeError, TypeError):
        return None
    if isinstance(val, list) and all(isinstance(v, int) for v in val):
        return "[" + ",".join(str(v) for v in sorted(val)) + "]"
    return None


def _vertex_key(k: str, vertices) -> str:
    if k in vertices:
        return k
    alt = _norm_simplex_key(k)
    if alt is not None and alt in vertices:
        return alt
    raise InputError(f"module: unknown vertex {k!r}")


_ARROW_RE = re.compile(r"^t\((\[[^\]]*\]),\s*(\[[^\]]*\])\)$")


def _arrow_key(k: str, names) -> str:
    if k in names:
        return k
    m = _ARROW_RE.match(k.strip())
    if m:
        a, b = _norm_simplex_key(m.group(1)), _norm_simplex_key(m.group(2))
        alt = f"t({a},{b})"
        if alt in names:
            return alt
    raise InputError(f"module: unknown arrow {k!r}")


def module_to_json(m: Module) -> dict:
    q = m.algebra.quiver
    f = m.field
    return {
        "dims": {q.vertices[v]: d for v, d in enumerate(m.dims)},
        "maps": {a.name: [[f.format(x) for x in row] for row in m.maps[i]]
                 for i, a in enumerate(q.arrows) if m.dims[a.source] and m.dims[a.target]},
    }
