"""Representations of bound quivers and the module operations built on them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from ..scalars import (Field, column_space_basis, complement_units, identity, inverse, is_zero,
                       kernel_basis, matmul, matvec, rank, solve_many, transpose, zeros)
from .quiver import Algebra, AlgebraError


class ModuleError(AlgebraError):
    pass


@dataclass(frozen=True)
class Module:
    """Representation: a space per vertex and a ``dim(target) x dim(source)`` matrix per arrow."""

    algebra: Algebra
    dims: tuple[int, ...]
    maps: tuple  # per arrow index, list of rows

    def __post_init__(self):
        q = self.algebra.quiver
        if len(self.dims) != len(q.vertices) or len(self.maps) != len(q.arrows):
            raise ModuleError("module shape does not match the quiver")
        for a, m in zip(q.arrows, self.maps):
            r, c = self.dims[a.target], self.dims[a.source]
            if len(m) != r or any(len(row) != c for row in m):
                raise ModuleError(f"matrix for arrow {a.name} should be {r}x{c}")
        for rel in q.relations:
            s = q.arrows[rel[0][1][0]].source
            t = q.arrows[rel[0][1][-1]].target
            if not self.dims[s] or not self.dims[t]:
                continue
            total = zeros(self.dims[t], self.dims[s])
            f = self.algebra.field
            for coeff, path in rel:
                m = self.path_matrix(path)
                c = f.parse(coeff)
                total = [[f.norm(x + c * y) for x, y in zip(r1, r2)] for r1, r2 in zip(total, m)]
            if not is_zero(total):
                raise ModuleError("module does not satisfy the relation "
                                  + " + ".join(f"{c}·" + "".join(q.arrows[x].name for x in p) for c, p in rel))

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def path_matrix(self, arrows: Sequence[int]) -> list:
        q = self.algebra.quiver
        s = q.arrows[arrows[0]].source
        m = identity(self.dims[s])
        for x in arrows:
            m = matmul(self.maps[x], m, self.field, ncols=self.dims[s])
        return m

    def basis_matrix(self, b: int) -> list:
        """Action of the basis path ``b``."""
        bp = self.algebra.basis[b]
        if not bp.arrows:
            return identity(self.dims[bp.source])
        return self.path_matrix(bp.arrows)

    def act(self, b: int, vec: Sequence) -> list:
        bp = self.algebra.basis[b]
        v = list(vec)
        for x in bp.arrows:
            v = matvec(self.maps[x], v, self.field)
        return v

    def __eq__(self, other):
        return (isinstance(other, Module) and self.algebra is other.algebra
                and self.dims == other.dims and self.maps == other.maps)

    def __hash__(self):
        return hash(self.dims)

    def __repr__(self):
        return f"Module(dims={list(self.dims)})"


def make_module(alg: Algebra, dims: Sequence[int], maps: dict | Sequence) -> Module:
    """Build a module; ``maps`` may be keyed by arrow name and may omit zero maps."""
    q = alg.quiver
    f = alg.field
    out = []
    for i, a in enumerate(q.arrows):
        if isinstance(maps, dict):
            m = maps.get(a.name, maps.get(i))
        else:
            m = maps[i]
        r, c = dims[a.target], dims[a.source]
        if m is None:
            m = zeros(r, c)
        out.append([[f.parse(x) for x in row] for row in m] if r else [])
    return Module(alg, tuple(dims), tuple(out))


def zero_module(alg: Algebra) -> Module:
    return make_module(alg, [0] * alg.n_vertices, {})


def simple(alg: Algebra, v: int) -> Module:
    dims = [0] * alg.n_vertices
    dims[v] = 1
    return make_module(alg, dims, {})


def projective(alg: Algebra, v: int) -> Module:
    """``P_v = e_v A``: normal paths starting at ``v``, arrows acting by post-composition."""
    return free_module(alg, [v])[0]


def free_module(alg: Algebra, tops: Sequence[int]):
    """``⊕_g P_{tops[g]}`` and the coordinate labels ``(g, basis path)`` per vertex."""
    n = alg.n_vertices
    labels = [[(g, b) for g, v in enumerate(tops) for b in alg.paths(v, w)] for w in range(n)]
    pos = [{lab: i for i, lab in enumerate(labels[w])} for w in range(n)]
    maps = []
    f = alg.field
    for x, a in enumerate(alg.quiver.arrows):
        m = zeros(len(labels[a.target]), len(labels[a.source]))
        for j, (g, b) in enumerate(labels[a.source]):
            for bb, c in alg.ext[(b, x)].items():
                m[pos[a.target][(g, bb)]][j] = f.norm(c)
        maps.append(m)
    return Module(alg, tuple(len(l) for l in labels), tuple(maps)), labels


def direct_sum(mods: Sequence[Module]) -> Module:
    alg = mods[0].algebra
    dims = tuple(sum(m.dims[v] for m in mods) for v in range(alg.n_vertices))
    maps = []
    for x, a in enumerate(alg.quiver.arrows):
        big = zeros(dims[a.target], dims[a.source])
        ro = co = 0
        for m in mods:
            for i, row in enumerate(m.maps[x]):
                big[ro + i][co:co + len(row)] = row
            ro += m.dims[a.target]
            co += m.dims[a.source]
        maps.append(big)
    return Module(alg, dims, tuple(maps))


# -- radical, top, submodules, quotients -------------------------------------

def radical_basis(m: Module) -> list:
    """Per vertex, columns spanning ``(rad M)_v`` (sum of images of incoming arrows)."""
    alg = m.algebra
    out = []
    for v in range(alg.n_vertices):
        cols = []
        for x in alg.quiver.in_arrows(v):
            mx = m.maps[x]
            if mx and mx[0]:
                cols.extend(transpose(mx))
        if cols and m.dims[v]:
            out.append(column_space_basis(transpose(cols), m.dims[v], m.field))
        else:
            out.append([[] for _ in range(m.dims[v])])
    return out


def top_dims(m: Module) -> list[int]:
    rad = radical_basis(m)
    return [m.dims[v] - (len(rad[v][0]) if rad[v] else 0) for v in range(len(m.dims))]


def top_generators(m: Module) -> list[tuple[int, list]]:
    """Vectors lifting a basis of ``top M``, as ``(vertex, vector)`` pairs."""
    rad = radical_basis(m)
    gens = []
    for v in range(len(m.dims)):
        for j in complement_units(rad[v], m.dims[v], m.field):
            e = [0] * m.dims[v]
            e[j] = 1
            gens.append((v, e))
    return gens


def _ncols(cols) -> int:
    return len(cols[0]) if cols else 0


def generated_submodule(m: Module, vectors: Sequence[tuple[int, Sequence]]) -> list:
    """Per vertex, columns spanning the submodule generated by the given vectors."""
    n = len(m.dims)
    f = m.field
    spans = [[[] for _ in range(m.dims[v])] for v in range(n)]
    pending: list[list] = [[] for _ in range(n)]
    for v, vec in vectors:
        pending[v].append(list(vec))
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if not pending[v]:
                continue
            old = _ncols(spans[v])
            cols = (transpose(spans[v]) if old else []) + pending[v]
            pending[v] = []
            new = column_space_basis(transpose(cols), m.dims[v], f)
            if _ncols(new) > old:
                added = transpose(new)
                spans[v] = new
                changed = True
                for x in m.algebra.quiver.out_arrows(v):
                    t = m.algebra.quiver.arrows[x].target
                    for col in added:
                        pending[t].append(matvec(m.maps[x], col, f))
    return spans


def submodule(m: Module, spans: Sequence) -> Module:
    """The submodule with the given per-vertex column bases (must be arrow-stable)."""
    f = m.field
    dims = tuple(_ncols(s) for s in spans)
    maps = []
    for x, a in enumerate(m.algebra.quiver.arrows):
        if not dims[a.target] or not dims[a.source]:
            maps.append(zeros(dims[a.target], dims[a.source]))
            continue
        img = matmul(m.maps[x], spans[a.source], f)
        sol = solve_many(spans[a.target], img, dims[a.target], f)
        if sol is None:
            raise ModuleError("spans are not closed under the arrows")
        maps.append(sol)
    return Module(m.algebra, dims, tuple(maps))


@dataclass(frozen=True)
class Quotient:
    module: Module
    projections: tuple  # per vertex, dim(M/U)_v x dim M_v
    sections: tuple     # per vertex, unit coordinates of M_v spanning a complement of U_v


def quotient(m: Module, spans: Sequence) -> Quotient:
    f = m.field
    n = len(m.dims)
    comps, projs = [], []
    for v in range(n):
        d = m.dims[v]
        comp = complement_units(spans[v], d, f)
        comps.append(comp)
        k = _ncols(spans[v])
        full = [list(spans[v][i]) + [1 if comp[j] == i else 0 for j in range(len(comp))] for i in range(d)]
        inv = inverse(full, f) if d else []
        projs.append([inv[k + j] for j in range(len(comp))] if d else [])
    maps = []
    for x, a in enumerate(m.algebra.quiver.arrows):
        cs, ct = comps[a.source], comps[a.target]
        sec = [[1 if cs[j] == i else 0 for j in range(len(cs))] for i in range(m.dims[a.source])]
        if not ct or not cs:
            maps.append(zeros(len(ct), len(cs)))
            continue
        maps.append(matmul(projs[a.target], matmul(m.maps[x], sec, f, ncols=len(cs)), f))
    q = Module(m.algebra, tuple(len(c) for c in comps), tuple(maps))
    return Quotient(q, tuple(projs), tuple(comps))


# -- homomorphisms -----------------------------------------------------------

def hom_space(m: Module, n: Module) -> list[list]:
    """Basis of ``Hom_A(M, N)``; each map is a per-vertex list of matrices."""
    alg = m.algebra
    f = m.field
    nv = alg.n_vertices
    offs = []
    o = 0
    for v in range(nv):
        offs.append(o)
        o += n.dims[v] * m.dims[v]
    nunk = o

    def var(v, i, j):
        return offs[v] + i * m.dims[v] + j

    rows = []
    for x, a in enumerate(alg.quiver.arrows):
        s, t = a.source, a.target
        # N(x) f_s - f_t M(x) = 0, entries (i, j) with i < dim N_t, j < dim M_s
        nx, mx = n.maps[x], m.maps[x]
        for i in range(n.dims[t]):
            for j in range(m.dims[s]):
                row = [0] * nunk
                for k in range(n.dims[s]):
                    c = nx[i][k]
                    if c:
                        row[var(s, k, j)] += c
                for k in range(m.dims[t]):
                    c = mx[k][j]
                    if c:
                        row[var(t, i, k)] -= c
                if any(row):
                    rows.append([f.norm(c) for c in row])
    basis = kernel_basis(rows, nunk, f) if rows else [[1 if i == j else 0 for i in range(nunk)] for j in range(nunk)]
    out = []
    for vec in basis:
        hom = []
        for v in range(nv):
            hom.append([[vec[var(v, i, j)] for j in range(m.dims[v])] for i in range(n.dims[v])])
        out.append(hom)
    return out


def hom_dim(m: Module, n: Module) -> int:
    return len(hom_space(m, n))


def is_iso_map(phi, m: Module, n: Module) -> bool:
    f = m.field
    return m.dims == n.dims and all(rank(phi[v], f, m.dims[v]) == m.dims[v] for v in range(len(m.dims)) if m.dims[v])


def find_isomorphism(m: Module, n: Module, seed: int = 0, tries: int = 24) -> Optional[list]:
    """An isomorphism ``M -> N`` if one is found, else None.

    Searches linear combinations of a Hom basis: exhaustively when the
    coefficient space is small, otherwise by seeded random combinations
    (isomorphisms form a Zariski-open set, so failure is overwhelmingly
    likely to mean none exists).
    """
    if m.dims != n.dims:
        return None
    if m.is_zero():
        return [[] for _ in m.dims]
    basis = hom_space(m, n)
    if not basis:
        return None
    f = m.field
    nv = len(m.dims)

    def combo(coeffs):
        return [[[f.norm(sum(c * h[v][i][j] for c, h in zip(coeffs, basis) if c))
                  for j in range(m.dims[v])] for i in range(n.dims[v])] for v in range(nv)]

    for h in basis:
        if is_iso_map(h, m, n):
            return h
    if f.p and f.p ** len(basis) <= 4096:
        import itertools
        for coeffs in itertools.product(range(f.p), repeat=len(basis)):
            if any(coeffs):
                phi = combo(coeffs)
                if is_iso_map(phi, m, n):
                    return phi
        return None
    rng = random.Random(seed)
    hi = (f.p - 1) if f.p else 10 ** 6
    for _ in range(tries):
        phi = combo([rng.randint(0, hi) for _ in basis])
        if is_iso_map(phi, m, n):
            return phi
    return None


def is_isomorphic(m: Module, n: Module) -> bool:
    return find_isomorphism(m, n) is not None


# -- projective covers and kernels ------------------------------------------

@dataclass(frozen=True)
class Cover:
    """Free module ``P = ⊕ P_{v_g}`` with ``π: P -> M`` sending generator ``g`` to ``gens[g]``."""

    module: Module
    labels: list
    gens: list          # (vertex, vector in M) per generator
    pi: list            # per vertex, dim M_v x dim P_v


def cover_from_generators(m: Module, gens: Sequence[tuple[int, Sequence]]) -> Cover:
    alg = m.algebra
    f = m.field
    tops = [v for v, _ in gens]
    p, labels = free_module(alg, tops)
    pi = []
    for w in range(alg.n_vertices):
        cols = []
        for g, b in labels[w]:
            cols.append(m.act(b, gens[g][1]))
        pi.append(transpose(cols, m.dims[w]) if cols else [[] for _ in range(m.dims[w])])
    return Cover(p, labels, list(gens), pi)


def projective_cover(m: Module) -> Cover:
    return cover_from_generators(m, top_generators(m))


def kernel_spans(c: Cover) -> list:
    f = c.module.field
    out = []
    for w in range(len(c.module.dims)):
        d = c.module.dims[w]
        if not d:
            out.append([])
            continue
        kb = kernel_basis(c.pi[w], d, f) if c.pi[w] and c.pi[w][0] else [
            [1 if i == j else 0 for i in range(d)] for j in range(d)]
        out.append(transpose(kb, d) if kb else [[] for _ in range(d)])
    return out


def dual(m: Module, opposite: Algebra) -> Module:
    """``D M = Hom_k(M, k)`` as a module over the opposite algebra."""
    maps = tuple(transpose(mx, m.dims[a.source]) for mx, a in zip(m.maps, m.algebra.quiver.arrows))
    return Module(opposite, m.dims, maps)


def random_module(alg: Algebra, rng: random.Random, max_dim: int = 2, attempts: int = 50) -> Module:
    """A random module: a random quotient of a small free module.

    Quotients of free modules by random generated submodules satisfy the
    relations automatically, which makes this usable for any bound quiver.
    """
    n = alg.n_vertices
    tops = [rng.randrange(n) for _ in range(rng.randint(1, max_dim))]
    p, _ = free_module(alg, tops)
    vecs = []
    for _ in range(rng.randint(0, 2)):
        v = rng.randrange(n)
        if p.dims[v]:
            vecs.append((v, [alg.field(rng.randint(-1, 1)) for _ in range(p.dims[v])]))
    spans = generated_submodule(p, vecs)
    return quotient(p, spans).module
