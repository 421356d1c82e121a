"""Cellular quiver algebras of perverse sheaves on simplicial complexes."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra.homological import Resolution, hom_complex, resolution_is_complex, resolve
from .algebra.highest_weight import costandard_module, standard_module
from .algebra.modules import (Module, free_module, generated_submodule, make_module, quotient, random_module,
                              simple)
from .algebra.quiver import Algebra, BoundQuiver, Arrow
from .perversity import Perversity, PerversityError, classify, perverse_dimension, require_gm
from .scalars import QQ, Field, matmul, rank
from .simplicial import SimplicialComplex


class CellularError(ValueError):
    pass


def simplex_name(s: Sequence[int]) -> str:
    return "[" + ",".join(str(v) for v in s) + "]"


def arrow_name(s: Sequence[int], t: Sequence[int]) -> str:
    return f"t({simplex_name(s)},{simplex_name(t)})"


@dataclass
class CellularAlgebra:
    complex: SimplicialComplex
    perversity: Perversity
    algebra: Algebra
    delta: list            # per simplex id
    types: list            # "!", "*" or "both"
    arrow_of: dict         # (σ id, τ id) -> arrow index

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def lo(self) -> int:
        """``p*(X)``."""
        n = self.complex.dim
        return -n - self.perversity(n)

    @property
    def hi(self) -> int:
        """``-p(X)``."""
        return -self.perversity(self.complex.dim)

    def vertex(self, simplex: Sequence[int]) -> int:
        s = tuple(sorted(simplex))
        if s not in self.complex.index:
            raise CellularError(f"{list(s)} is not a simplex")
        return self.complex.index[s]

    def face_order(self) -> list[int]:
        """The (dimension, lexicographic) refinement of the face order."""
        return list(range(len(self.complex)))


def build_quiver(k: SimplicialComplex, p: Perversity, field: Field = QQ) -> CellularAlgebra:
    """Vertices are simplices; ``t_στ`` joins comparable simplices with ``δ(σ) = δ(τ) + 1``.

    Relations: for every pair with ``δ(σ) = δ(τ) + 2`` joined by at least one
    path, the sum of all length-two paths ``t_σα t_ατ``.
    """
    if k.dim < 0:
        raise CellularError("empty complex")
    if p.dim < k.dim:
        raise PerversityError(f"perversity given up to dimension {p.dim}, complex has dimension {k.dim}")
    p = require_gm(p.restrict(k.dim))
    n = len(k)
    delta = [perverse_dimension(p, k.sdim(i)) for i in range(n)]
    types = [classify(p, k.sdim(i)) for i in range(n)]
    names = tuple(simplex_name(s) for s in k.simplices)
    arrows = []
    arrow_of = {}
    for i in range(n):
        related = set(k.faces_of(i))
        related.update(j for j in range(n) if k.is_face(i, j))
        for j in sorted(related):
            if delta[i] == delta[j] + 1:
                arrow_of[(i, j)] = len(arrows)
                arrows.append(Arrow(arrow_name(k.simplices[i], k.simplices[j]), i, j))
    out_of: dict[int, list[int]] = {}
    for (i, j) in arrow_of:
        out_of.setdefault(i, []).append(j)
    rels = []
    for i in range(n):
        ends: dict[int, list] = {}
        for a in sorted(out_of.get(i, [])):
            for j in sorted(out_of.get(a, [])):
                ends.setdefault(j, []).append((1, (arrow_of[(i, a)], arrow_of[(a, j)])))
        for j in sorted(ends):
            rels.append(tuple(ends[j]))
    q = BoundQuiver(names, tuple(arrows), tuple(rels))
    return CellularAlgebra(k, p, Algebra(q, field), delta, types, arrow_of)


# -- sheaves -----------------------------------------------------------------

def simple_sheaf(c: CellularAlgebra, simplex: Sequence[int]) -> Module:
    return simple(c.algebra, c.vertex(simplex))


def standard_sheaf(c: CellularAlgebra, simplex: Sequence[int], order: Optional[Sequence[int]] = None) -> Module:
    return standard_module(c.algebra, order or c.face_order(), c.vertex(simplex))


def costandard_sheaf(c: CellularAlgebra, simplex: Sequence[int], order: Optional[Sequence[int]] = None) -> Module:
    return costandard_module(c.algebra, order or c.face_order(), c.vertex(simplex))


def constant_module(c: CellularAlgebra) -> Module:
    """``k_X`` for the zero perversity: a line per simplex, incidence signs on arrows."""
    if any(c.perversity.values):
        raise CellularError("the constant module is only available for the zero perversity")
    k = c.complex
    maps = {}
    for (i, j), x in c.arrow_of.items():
        maps[x] = [[k.incidence(i, j)]]
    return make_module(c.algebra, [1] * len(k), maps)


def module_from_stalks(c: CellularAlgebra, dims: dict, maps: dict) -> Module:
    """Module from simplex-keyed data: ``dims`` by simplex name, ``maps`` by arrow name."""
    names = c.algebra.quiver.vertices
    dv = [0] * len(names)
    for key, d in dims.items():
        if key not in names:
            raise CellularError(f"{key} is not a simplex of the complex")
        dv[names.index(key)] = int(d)
    arrow_names = {a.name for a in c.algebra.quiver.arrows}
    for key in maps:
        if key not in arrow_names:
            raise CellularError(f"{key} is not an arrow of the cellular quiver")
    return make_module(c.algebra, dv, maps)


def random_perverse_module(c: CellularAlgebra, rng: random.Random) -> Module:
    return random_module(c.algebra, rng)


# -- complexes ---------------------------------------------------------------

@dataclass
class VectorComplex:
    """Cochain complex of vector spaces in degrees ``start .. start + len(dims) - 1``."""

    start: int
    dims: list
    maps: list            # maps[i]: degree start+i -> start+i+1, dims[i+1] x dims[i]
    field: Field

    def cohomology(self) -> list[int]:
        ranks = [rank(m, self.field, self.dims[i]) if m and self.dims[i] else 0 for i, m in enumerate(self.maps)]
        out = []
        for i, d in enumerate(self.dims):
            out.append(d - (ranks[i] if i < len(ranks) else 0) - (ranks[i - 1] if i else 0))
        return out

    def squares_to_zero(self) -> bool:
        for i in range(len(self.maps) - 1):
            a, b = self.maps[i], self.maps[i + 1]
            if not a or not b or not self.dims[i]:
                continue
            prod = matmul(b, a, self.field, ncols=self.dims[i])
            if any(x for row in prod for x in row):
                return False
        return True

    def graded(self) -> dict:
        return {"from": self.start, "dims": self.cohomology()}


def cellular_complex(c: CellularAlgebra, e: Module) -> VectorComplex:
    """``r``-th term ``⊕_{-δ(σ)=r} E_σ`` for ``r = p(X) .. -p*(X)``; blocks ``E(t_στ)``."""
    lo_r, hi_r = -c.hi, -c.lo
    f = c.field
    n = len(c.complex)
    by_deg: dict[int, list[int]] = {r: [] for r in range(lo_r, hi_r + 1)}
    for i in range(n):
        by_deg[-c.delta[i]].append(i)
    offs = {}
    dims = []
    for r in range(lo_r, hi_r + 1):
        o = 0
        for i in by_deg[r]:
            offs[i] = o
            o += e.dims[i]
        dims.append(o)
    maps = []
    for r in range(lo_r, hi_r):
        m = [[0] * dims[r - lo_r] for _ in range(dims[r + 1 - lo_r])]
        for i in by_deg[r]:
            for j in by_deg[r + 1]:
                x = c.arrow_of.get((i, j))
                if x is None:
                    continue
                blk = e.maps[x]
                for a in range(e.dims[j]):
                    for b in range(e.dims[i]):
                        if blk[a][b]:
                            m[offs[j] + a][offs[i] + b] = f.norm(blk[a][b])
        maps.append(m)
    vc = VectorComplex(lo_r, dims, maps, f)
    if not vc.squares_to_zero():
        raise CellularError("cellular complex does not square to zero")
    return vc


def hypercohomology(c: CellularAlgebra, e: Module) -> dict:
    return cellular_complex(c, e).graded()


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def euler_characteristic(c: CellularAlgebra, e: Module) -> int:
    h = hypercohomology(c, e)
    lhs = sum(_sign(h["from"] + i) * d for i, d in enumerate(h["dims"]))
    rhs = sum(_sign(c.delta[i]) * e.dims[i] for i in range(len(e.dims)))
    if lhs != rhs:
        raise CellularError(f"Euler identity fails: {lhs} != {rhs}")
    return lhs


# -- the constant resolution ------------------------------------------------

@dataclass
class ConstantResolution:
    """``P^k = ⊕_{δ(σ)=k} P_σ`` for ``k = p*(X) .. -p(X)``.

    ``resolution`` stores it homologically: index ``j`` holds cohomological
    degree ``-p(X) - j``.
    """

    cellular: CellularAlgebra
    resolution: Resolution
    exact_below_top: Optional[bool] = None
    top_stalk_dim: Optional[int] = None

    def degree_terms(self) -> dict:
        k = self.cellular.complex
        out = {}
        for j, t in enumerate(self.resolution.tops):
            out[self.cellular.hi - j] = [list(k.simplices[v]) for v in t]
        return out

    def multiplicities(self) -> dict:
        """Per cohomological degree, the number of projectives (one per simplex)."""
        return {deg: len(terms) for deg, terms in self.degree_terms().items()}


def _projective_complex(c: CellularAlgebra) -> Resolution:
    alg = c.algebra
    n = len(c.complex)
    length = c.hi - c.lo
    tops = []
    gindex = {}
    for j in range(length + 1):
        deg = c.hi - j
        t = [i for i in range(n) if c.delta[i] == deg]
        for g, i in enumerate(t):
            gindex[i] = g
        tops.append(t)
    diffs: list = [None]
    for j in range(1, length + 1):
        d = []
        for tau in tops[j]:
            image = {}
            for sigma in tops[j - 1]:
                x = c.arrow_of.get((sigma, tau))
                if x is not None:
                    path = alg.ext[(alg.idempotent[sigma], x)]
                    for b, coeff in path.items():
                        image[(gindex[sigma], b)] = coeff
            d.append(image)
        diffs.append(d)
    res = Resolution(alg, None, tops=tops, diffs=diffs)
    return res


def evaluate_at_vertex(res: Resolution, w: int) -> VectorComplex:
    """The complex of vector spaces ``(P_•)_w``, written cohomologically (``P_j`` in degree ``-j``)."""
    alg = res.algebra
    f = alg.field
    labels = []
    for t in res.tops:
        labels.append([(g, b) for g, v in enumerate(t) for b in alg.paths(v, w)])
    pos = [{lab: i for i, lab in enumerate(l)} for l in labels]
    maps = []
    for j in range(len(res.tops) - 1, 0, -1):
        m = [[0] * len(labels[j]) for _ in range(len(labels[j - 1]))]
        for col, (g, b) in enumerate(labels[j]):
            for (g2, b2), c in res.diffs[j][g].items():
                for bb, c2 in alg.times(b2, b).items():
                    r = pos[j - 1][(g2, bb)]
                    m[r][col] = f.norm(m[r][col] + c * c2)
        maps.append(m)
    dims = [len(labels[j]) for j in range(len(res.tops) - 1, -1, -1)]
    return VectorComplex(-(len(res.tops) - 1), dims, maps, f)


def top_cohomology_module(c: CellularAlgebra, res: Optional[Resolution] = None) -> Module:
    """``H^{-p(X)}`` of the constant resolution: the cokernel of its last differential."""
    res = res or _projective_complex(c)
    alg = c.algebra
    free, labels = free_module(alg, res.tops[0])
    pos = [{lab: i for i, lab in enumerate(l)} for l in labels]
    gens = []
    if len(res.tops) > 1:
        for g, image in zip(res.tops[1], res.diffs[1]):
            vec = [0] * free.dims[g]
            for lab, coeff in image.items():
                vec[pos[g][lab]] = coeff
            gens.append((g, vec))
    return quotient(free, generated_submodule(free, gens)).module


def is_full_simplex(k: SimplicialComplex) -> bool:
    return len(k) == 2 ** (k.dim + 1) - 1


def constant_resolution(c: CellularAlgebra) -> ConstantResolution:
    res = _projective_complex(c)
    if not resolution_is_complex(res):
        raise CellularError("constant resolution does not square to zero")
    out = ConstantResolution(c, res)
    if is_full_simplex(c.complex):
        exact = True
        for w in range(c.algebra.n_vertices):
            h = evaluate_at_vertex(res, w).cohomology()
            if any(h[:-1]):
                exact = False
        top = top_cohomology_module(c, res)
        out.exact_below_top = exact
        out.top_stalk_dim = top.dims[len(c.complex) - 1]
        if not exact or out.top_stalk_dim != 1:
            raise CellularError("constant resolution of a full simplex is not a resolution of a rank-one sheaf")
    return out


def resolution_hom_complex(c: CellularAlgebra, e: Module, cres: Optional[ConstantResolution] = None) -> VectorComplex:
    """``Hom(P^•, E)`` via the algebra (independent of :func:`cellular_complex`)."""
    cres = cres or constant_resolution(c)
    hc = hom_complex(cres.resolution, e)
    return VectorComplex(-c.hi, hc.dims, hc.maps, c.field)


# -- minimality --------------------------------------------------------------

@dataclass
class MinimalityReport:
    table: dict            # hom degree -> {simplex name: multiplicity}
    expected: dict         # hom degree -> {simplex name: dim H^{j+p(X)}(X; S_σ)}
    verdict: bool
    coincides_with_constant_resolution: bool


def minimality_report(c: CellularAlgebra, e: Module, asserted_perverse_shift: bool = False) -> MinimalityReport:
    """Compare the minimal resolution of ``E = k_X[-p(X)]`` with hypercohomology of simples.

    The multiplicity of ``P_σ`` in homological degree ``j`` must equal
    ``dim H^{j + p(X)}(X; S_σ)``.
    """
    if any(c.perversity.values) and not asserted_perverse_shift:
        raise CellularError("minimality report needs k_X[-p(X)] perverse; assert it for nonzero perversities")
    k = c.complex
    names = c.algebra.quiver.vertices
    px = c.perversity(k.dim)
    res = resolve(e, cap=len(k) + 1)
    if res.truncated:
        raise CellularError("minimal resolution truncated")
    table = {}
    for j, t in enumerate(res.tops):
        table[j] = {names[v]: t.count(v) for v in sorted(set(t))}
    expected: dict = {}
    for i in range(len(k)):
        h = hypercohomology(c, simple(c.algebra, i))
        for off, d in enumerate(h["dims"]):
            if d:
                j = h["from"] + off - px
                expected.setdefault(j, {})[names[i]] = d
    verdict = {j: row for j, row in table.items() if row} == expected
    coincide = all(sorted(t) == sorted(i for i in range(len(k)) if -px - c.delta[i] == j)
                   for j, t in enumerate(res.tops))
    return MinimalityReport(table, {j: expected[j] for j in sorted(expected)}, verdict, coincide)


def random_face_refinement(k: SimplicialComplex, rng: random.Random) -> list[int]:
    """A uniformly-chosen-step linear extension of the face order."""
    placed = set()
    order = []
    n = len(k)
    while len(order) < n:
        ready = [i for i in range(n) if i not in placed and all(f in placed for f in k.facets_of[i])]
        pick = rng.choice(ready)
        placed.add(pick)
        order.append(pick)
    return order
