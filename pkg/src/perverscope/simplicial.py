"""Finite simplicial complexes, stratifications, links and exact cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .scalars import QQ, Field, rank

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    pass


def _faces_of(s: Simplex) -> list[Simplex]:
    return [s[:i] + s[i + 1:] for i in range(len(s))] if len(s) > 1 else []


class SimplicialComplex:
    """A face-closed set of simplices on vertices ``0..n-1``.

    Simplices are strictly increasing vertex tuples, ordered by dimension and
    then lexicographically; a simplex's position in that order is its id.
    """

    def __init__(self, n_vertices: int, simplices: Iterable[Sequence[int]]):
        simp = {tuple(s) for s in simplices}
        self.n_vertices = n_vertices
        self.simplices: tuple[Simplex, ...] = tuple(sorted(simp, key=lambda s: (len(s), s)))
        self.index = {s: i for i, s in enumerate(self.simplices)}
        for s in self.simplices:
            for f in _faces_of(s):
                if f not in self.index:
                    raise ComplexError(f"not face-closed: {list(f)} missing below {list(s)}")

    @classmethod
    def from_facets(cls, n_vertices: int, facets: Iterable[Sequence[int]]) -> "SimplicialComplex":
        simp = set()
        for f in facets:
            f = list(f)
            if not f:
                continue
            if len(set(f)) != len(f):
                raise ComplexError(f"repeated vertex in facet {f}")
            for v in f:
                if not (isinstance(v, int) and 0 <= v < n_vertices):
                    raise ComplexError(f"vertex {v} out of range 0..{n_vertices - 1}")
            f = sorted(f)
            for k in range(1, len(f) + 1):
                simp.update(combinations(f, k))
        return cls(n_vertices, simp)

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, s):
        return tuple(s) in self.index

    def __iter__(self):
        return iter(self.simplices)

    def __repr__(self):
        return f"SimplicialComplex(vertices={self.n_vertices}, simplices={len(self)}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.simplices[-1]) - 1 if self.simplices else -1

    def sdim(self, i: int) -> int:
        return len(self.simplices[i]) - 1

    def of_dim(self, d: int) -> list[int]:
        return [i for i, s in enumerate(self.simplices) if len(s) == d + 1]

    @cached_property
    def facets_of(self) -> tuple[tuple[int, ...], ...]:
        """Codimension-one faces of each simplex, by id."""
        return tuple(tuple(self.index[f] for f in _faces_of(s)) for s in self.simplices)

    @cached_property
    def cofaces_of(self) -> tuple[tuple[int, ...], ...]:
        co = [[] for _ in self.simplices]
        for i, fs in enumerate(self.facets_of):
            for f in fs:
                co[f].append(i)
        return tuple(tuple(sorted(c)) for c in co)

    def is_face(self, a: int, b: int) -> bool:
        """``simplex a ⊆ simplex b``."""
        return set(self.simplices[a]) <= set(self.simplices[b])

    def incidence(self, face: int, cof: int) -> int:
        """Sign ``[face : cof]`` for a codimension-one face."""
        s, t = self.simplices[face], self.simplices[cof]
        for i, v in enumerate(t):
            if v not in s:
                return -1 if i % 2 else 1
        raise ComplexError("not a face")

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    def closure(self, ids: Iterable[int]) -> set[int]:
        out = set()
        for i in ids:
            for k in range(1, len(self.simplices[i]) + 1):
                for f in combinations(self.simplices[i], k):
                    out.add(self.index[f])
        return out

    def faces_of(self, i: int) -> list[int]:
        """All faces (including ``i`` itself)."""
        return sorted(self.closure([i]))

    def subcomplex(self, ids: Iterable[int]) -> "SimplicialComplex":
        return SimplicialComplex(self.n_vertices, [self.simplices[i] for i in ids])

    def to_json(self) -> dict:
        maximal = [s for i, s in enumerate(self.simplices) if not self.cofaces_of[i]]
        return {"vertices": self.n_vertices, "facets": [list(s) for s in maximal]}


def from_facets(n_vertices: int, facets) -> SimplicialComplex:
    return SimplicialComplex.from_facets(n_vertices, facets)


# -- constructions -----------------------------------------------------------

@dataclass(frozen=True)
class Link:
    """``Lk(σ)`` on re-indexed vertices with the join map back into ``K``."""

    complex: SimplicialComplex
    vertex_map: tuple[int, ...]          # new vertex -> original vertex
    join: tuple[int, ...]                # simplex id in link -> id of ρ∗σ in K


def link(k: SimplicialComplex, sigma: Sequence[int]) -> Link:
    sigma = tuple(sorted(sigma))
    if sigma not in k.index:
        raise ComplexError(f"{list(sigma)} is not a simplex")
    ss = set(sigma)
    found = []
    for s in k.simplices:
        if ss <= set(s) and len(s) > len(sigma):
            found.append(tuple(v for v in s if v not in ss))
    verts = sorted({v for r in found for v in r})
    renum = {v: i for i, v in enumerate(verts)}
    lk = SimplicialComplex(len(verts), [tuple(renum[v] for v in r) for r in found])
    join = tuple(k.index[tuple(sorted(tuple(verts[v] for v in r) + sigma))] for r in lk.simplices)
    return Link(lk, tuple(verts), join)


@dataclass(frozen=True)
class Subdivision:
    complex: SimplicialComplex
    carrier: tuple[int, ...]             # new vertex -> simplex id of the original


def _chains(k: SimplicialComplex, allowed: Sequence[int]) -> list[tuple[int, ...]]:
    allowed_set = set(allowed)
    up = {i: [j for j in allowed if j != i and len(k.simplices[j]) > len(k.simplices[i])
              and k.is_face(i, j)] for i in allowed}
    out = []

    def grow(chain):
        out.append(chain)
        for j in up[chain[-1]]:
            grow(chain + (j,))

    for i in sorted(allowed_set):
        grow((i,))
    return out


def _flag_complex(k: SimplicialComplex, allowed: Sequence[int]) -> Subdivision:
    allowed = sorted(allowed)
    pos = {s: i for i, s in enumerate(allowed)}
    chains = _chains(k, allowed)
    cx = SimplicialComplex(len(allowed), [tuple(sorted(pos[c] for c in ch)) for ch in chains])
    return Subdivision(cx, tuple(allowed))


def barycentric_subdivision(k: SimplicialComplex) -> Subdivision:
    return _flag_complex(k, range(len(k)))


def open_complement_retract(k: SimplicialComplex, a: Iterable[int]) -> Subdivision:
    """Full subcomplex of ``Sd(K)`` on barycentres of simplices outside ``A``.

    ``A`` is given by simplex ids and must be face-closed.
    """
    a = set(a)
    if k.closure(a) != a:
        raise ComplexError("A is not a subcomplex")
    return _flag_complex(k, [i for i in range(len(k)) if i not in a])


# -- cohomology --------------------------------------------------------------

def _coboundary(k: SimplicialComplex, d: int, keep: set[int], field: Field):
    rows = [i for i in k.of_dim(d + 1) if i in keep]
    cols = [i for i in k.of_dim(d) if i in keep]
    col_pos = {c: j for j, c in enumerate(cols)}
    m = []
    for r in rows:
        row = [0] * len(cols)
        for f in k.facets_of[r]:
            j = col_pos.get(f)
            if j is not None:
                row[j] = field(k.incidence(f, r))
        m.append(row)
    return m, len(cols)


def cohomology(k: SimplicialComplex, a: Iterable[int] = (), field: Field = QQ) -> list[int]:
    """Dimensions of ``H^d(K, A; field)`` for ``d = 0..dim K``.

    ``A`` is a subcomplex given by simplex ids (empty for absolute cohomology).
    """
    a = set(a)
    if k.closure(a) != a:
        raise ComplexError("A is not a subcomplex")
    keep = set(range(len(k))) - a
    n = k.dim
    if n < 0:
        return []
    ranks = []
    sizes = []
    for d in range(n + 1):
        m, c = _coboundary(k, d, keep, field)
        sizes.append(c)
        ranks.append(rank(m, field, c) if m else 0)
    return [sizes[d] - ranks[d] - (ranks[d - 1] if d else 0) for d in range(n + 1)]


@dataclass(frozen=True)
class SimplexSet:
    """A set of open simplices of ``complex`` (by id)."""

    complex: SimplicialComplex
    ids: frozenset

    @cached_property
    def closure(self) -> frozenset:
        return frozenset(self.complex.closure(self.ids))

    @property
    def is_subcomplex(self) -> bool:
        return self.closure == self.ids

    @property
    def is_open(self) -> bool:
        """Coface-closed inside its closure."""
        cl = self.closure
        return all(c in self.ids for i in self.ids for c in self.complex.cofaces_of[i] if c in cl)

    @property
    def is_locally_closed(self) -> bool:
        rest = self.closure - self.ids
        return self.complex.closure(rest) == rest

    @property
    def dim(self) -> int:
        return max((self.complex.sdim(i) for i in self.ids), default=-1)

    def is_connected(self) -> bool:
        ids = set(self.ids)
        if not ids:
            return True
        start = min(ids)
        seen = {start}
        stack = [start]
        cx = self.complex
        while stack:
            i = stack.pop()
            for j in cx.facets_of[i] + cx.cofaces_of[i]:
                if j in ids and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen == ids


def _closure_complex(s: SimplexSet):
    """Closure as a standalone complex plus the ids of ``closure \\ S`` in it."""
    cx = s.complex
    cl = sorted(s.closure)
    sub = SimplicialComplex(cx.n_vertices, [cx.simplices[i] for i in cl])
    rest = [sub.index[cx.simplices[i]] for i in cl if i not in s.ids]
    return sub, rest


def cohomology_locally_closed(s: SimplexSet, field: Field = QQ) -> tuple[list[int], list[int]]:
    """``(H^*(L), H_c^*(L))`` for a locally closed set of open simplices.

    ``H^*`` is taken on the barycentric retract of ``closure(L) \\ (closure(L) \\ L)``;
    ``H_c^*`` is the relative cohomology of the pair ``(closure(L), closure(L) \\ L)``.
    Both lists are indexed by degree ``0..dim closure(L)``.
    """
    if not s.is_locally_closed:
        raise ComplexError("simplex set is not locally closed")
    if not s.ids:
        return [], []
    sub, rest = _closure_complex(s)
    n = sub.dim
    retract = open_complement_retract(sub, rest).complex
    h = cohomology(retract, (), field)
    h = (h + [0] * (n + 1))[: n + 1]
    hc = cohomology(sub, rest, field)
    return h, hc


# -- stratifications ---------------------------------------------------------

@dataclass
class Stratum:
    name: str
    cells: SimplexSet

    @property
    def dim(self) -> int:
        return self.cells.dim


@dataclass
class Stratification:
    complex: SimplicialComplex
    strata: list[Stratum]
    of_simplex: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        cx = self.complex
        self.of_simplex = {}
        for si, st in enumerate(self.strata):
            for i in st.cells.ids:
                if i in self.of_simplex:
                    raise ComplexError(f"simplex {list(cx.simplices[i])} lies in two strata")
                self.of_simplex[i] = si
        missing = [list(cx.simplices[i]) for i in range(len(cx)) if i not in self.of_simplex]
        if missing:
            raise ComplexError(f"simplices not covered by any stratum: {missing[:5]}")
        for st in self.strata:
            if not st.cells.ids:
                raise ComplexError(f"stratum {st.name} is empty")
            if not st.cells.is_locally_closed:
                raise ComplexError(f"stratum {st.name} is not locally closed")
            if not st.cells.is_connected():
                raise ComplexError(f"stratum {st.name} is not connected")
        n = len(self.strata)
        self._le = [[False] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                self._le[a][b] = self.strata[a].cells.ids <= self.strata[b].cells.closure
        for a in range(n):
            for b in range(n):
                if a != b and self._le[a][b] and self._le[b][a]:
                    raise ComplexError("stratum order is not antisymmetric")

    @classmethod
    def faces(cls, k: SimplicialComplex) -> "Stratification":
        return cls(k, [Stratum(str(list(s)), SimplexSet(k, frozenset([i])))
                       for i, s in enumerate(k.simplices)])

    @classmethod
    def from_cells(cls, k: SimplicialComplex, named: Sequence[tuple[str, Sequence[Sequence[int]]]]):
        strata = []
        for name, cells in named:
            ids = set()
            for c in cells:
                c = tuple(sorted(c))
                if c not in k.index:
                    raise ComplexError(f"stratum {name}: {list(c)} is not a simplex")
                ids.add(k.index[c])
            strata.append(Stratum(name, SimplexSet(k, frozenset(ids))))
        return cls(k, strata)

    @property
    def is_faces(self) -> bool:
        return all(len(s.cells.ids) == 1 for s in self.strata)

    def index_of(self, name: str) -> int:
        for i, s in enumerate(self.strata):
            if s.name == name:
                return i
        raise KeyError(name)

    def le(self, a: int, b: int) -> bool:
        return self._le[a][b]

    def lt(self, a: int, b: int) -> bool:
        return a != b and self._le[a][b]

    def depth(self) -> int:
        """Number of strict inequalities in a longest chain."""
        n = len(self.strata)
        order = sorted(range(n), key=lambda i: self.strata[i].dim)
        best = [0] * n
        for b in order:
            for a in range(n):
                if self.lt(a, b):
                    best[b] = max(best[b], best[a] + 1)
        return max(best, default=0)

    def pairs(self) -> list[tuple[int, int]]:
        n = len(self.strata)
        return [(a, b) for a in range(n) for b in range(n) if self.lt(a, b)]


def depth(strat: Stratification) -> int:
    return strat.depth()


@dataclass(frozen=True)
class PairwiseLink:
    sigma: Simplex                       # realising simplex of S (maximal dimension)
    link: Link
    cells: SimplexSet                    # L_{S<T} inside link.complex


def pairwise_link(strat: Stratification, s: int, t: int) -> list[PairwiseLink]:
    """All realisations of ``L_{S<T}``, one per top-dimensional simplex of ``S``."""
    if not strat.lt(s, t):
        raise ComplexError(f"{strat.strata[s].name} is not below {strat.strata[t].name}")
    k = strat.complex
    st = strat.strata[s]
    top = [i for i in sorted(st.cells.ids) if k.sdim(i) == st.dim]
    if not top:
        raise ComplexError(f"stratum {st.name} has no simplex of its dimension")
    out = []
    for i in top:
        lk = link(k, k.simplices[i])
        ids = frozenset(j for j, full in enumerate(lk.join) if strat.of_simplex[full] == t)
        out.append(PairwiseLink(k.simplices[i], lk, SimplexSet(lk.complex, ids)))
    return out


def reduced(h: Sequence[int]) -> list[int]:
    """Reduced cohomology dimensions from unreduced ones."""
    out = list(h)
    if out:
        out[0] -= 1
    return out


def is_acyclic(s: SimplexSet, field: Field = QQ) -> bool:
    h, _ = cohomology_locally_closed(s, field)
    return bool(h) and h[0] == 1 and not any(h[1:])


def cone_suspension(k: SimplicialComplex) -> SimplicialComplex:
    """Suspension with two new apex vertices ``n`` and ``n+1``."""
    n = k.n_vertices
    facets = [s for i, s in enumerate(k.simplices) if not k.cofaces_of[i]]
    return SimplicialComplex.from_facets(n + 2, [list(f) + [n] for f in facets] + [list(f) + [n + 1] for f in facets])


def full_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets(n + 1, [list(range(n + 1))])


def boundary_of_simplex(n: int) -> SimplicialComplex:
    """``∂Δ^n`` on ``n+1`` vertices."""
    verts = list(range(n + 1))
    return SimplicialComplex.from_facets(n + 1, [[v for v in verts if v != w] for w in verts])


TORUS7_FACETS = [sorted([i, (i + 1) % 7, (i + 3) % 7]) for i in range(7)] + \
    [sorted([i, (i + 2) % 7, (i + 3) % 7]) for i in range(7)]

RP2_6_FACETS = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
                [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5]]


def torus7() -> SimplicialComplex:
    return SimplicialComplex.from_facets(7, TORUS7_FACETS)


def rp2_6() -> SimplicialComplex:
    return SimplicialComplex.from_facets(6, RP2_6_FACETS)


def simplex_ids(k: SimplicialComplex, cells: Iterable[Sequence[int]]) -> list[int]:
    out = []
    for c in cells:
        c = tuple(sorted(c))
        if c not in k.index:
            raise ComplexError(f"{list(c)} is not a simplex")
        out.append(k.index[c])
    return out


def subcomplex_ids(k: SimplicialComplex, facets: Iterable[Sequence[int]]) -> set[int]:
    """Ids of the face closure of ``facets`` inside ``k``."""
    return k.closure(simplex_ids(k, facets))


def closed_simplex(k: SimplicialComplex, i: int) -> SimplexSet:
    return SimplexSet(k, frozenset(k.faces_of(i)))


def open_simplex(k: SimplicialComplex, i: int) -> SimplexSet:
    return SimplexSet(k, frozenset([i]))


def open_star(k: SimplicialComplex, i: int) -> SimplexSet:
    return SimplexSet(k, frozenset(j for j in range(len(k)) if k.is_face(i, j)))


def lowest(values: Sequence[int]) -> Optional[int]:
    for d, x in enumerate(values):
        if x:
            return d
    return None
