"""Bound quivers and their path-class bases."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..scalars import QQ, Field, rref

DEFAULT_PATH_CAP = 64


class AlgebraError(ValueError):
    pass


class NotFiniteDimensional(AlgebraError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class BoundQuiver:
    """Quiver with relations; paths are read left to right (diagrammatic).

    ``relations`` is a list of linear combinations, each a tuple of
    ``(coeff, arrow-index path)`` pairs.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[tuple[object, tuple[int, ...]], ...], ...] = ()

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise AlgebraError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise AlgebraError(f"arrow {a.name} has an endpoint outside the vertex list")
        for rel in self.relations:
            ends = set()
            for _, path in rel:
                if len(path) < 2:
                    raise AlgebraError("relation paths must have length at least 2")
                for x, y in zip(path, path[1:]):
                    if self.arrows[x].target != self.arrows[y].source:
                        raise AlgebraError("relation path is not composable: "
                                           + " ".join(self.arrows[i].name for i in path))
                ends.add((self.arrows[path[0]].source, self.arrows[path[-1]].target))
            if len(ends) > 1:
                raise AlgebraError("relation mixes paths with different endpoints")
            if len({len(p) for _, p in rel}) > 1:
                raise AlgebraError("relation is not length-homogeneous; only homogeneous ideals are supported")

    @classmethod
    def build(cls, vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]],
              relations: Sequence[Sequence[tuple[object, Sequence[str]]]] = ()) -> "BoundQuiver":
        """Construct from names: arrows as ``(name, source, target)``."""
        vpos = {v: i for i, v in enumerate(vertices)}
        arr = []
        for name, s, t in arrows:
            if s not in vpos or t not in vpos:
                raise AlgebraError(f"arrow {name} uses an unknown vertex")
            arr.append(Arrow(name, vpos[s], vpos[t]))
        apos = {a.name: i for i, a in enumerate(arr)}
        rels = []
        for rel in relations:
            terms = []
            for coeff, path in rel:
                try:
                    terms.append((coeff, tuple(apos[x] for x in path)))
                except KeyError as e:
                    raise AlgebraError(f"relation uses unknown arrow {e.args[0]}") from None
            rels.append(tuple(terms))
        return cls(tuple(vertices), tuple(arr), tuple(rels))

    def vertex_index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise AlgebraError(f"unknown vertex {name!r}") from None

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise AlgebraError(f"unknown arrow {name!r}")

    def opposite(self) -> "BoundQuiver":
        arr = tuple(Arrow(a.name, a.target, a.source) for a in self.arrows)
        rels = tuple(tuple((c, tuple(reversed(p))) for c, p in rel) for rel in self.relations)
        return BoundQuiver(self.vertices, arr, rels)

    def out_arrows(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arrows) if a.source == v]

    def in_arrows(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arrows) if a.target == v]


@dataclass(frozen=True)
class BasisPath:
    source: int
    target: int
    arrows: tuple[int, ...]

    def __len__(self):
        return len(self.arrows)


class Algebra:
    """``kQ/I`` with an explicit basis of normal paths.

    ``ext[(b, x)]`` is the expansion of basis path ``b`` followed by arrow
    ``x`` in the basis, as a dict ``{basis index: coeff}``.
    """

    def __init__(self, quiver: BoundQuiver, field: Field = QQ, cap: int = DEFAULT_PATH_CAP):
        self.quiver = quiver
        self.field = field
        self.basis: list[BasisPath] = []
        self.ext: dict[tuple[int, int], dict[int, object]] = {}
        self._normalize(cap)
        self.from_to: dict[tuple[int, int], list[int]] = {}
        for i, b in enumerate(self.basis):
            self.from_to.setdefault((b.source, b.target), []).append(i)
        self.idempotent = [self.basis.index(BasisPath(v, v, ())) for v in range(len(quiver.vertices))]

    # -- construction --------------------------------------------------------

    def _normalize(self, cap: int):
        q, f = self.quiver, self.field
        nv = len(q.vertices)
        layer = []
        for v in range(nv):
            layer.append(len(self.basis))
            self.basis.append(BasisPath(v, v, ()))
        layers = [layer]
        rels_by_len: dict[int, list] = {}
        for rel in q.relations:
            rels_by_len.setdefault(len(rel[0][1]), []).append(rel)
        n = 0
        while layers[-1]:
            n += 1
            if n > cap:
                raise NotFiniteDimensional(
                    f"algebra not verified finite-dimensional: normal paths of length {cap} survive")
            # candidates b·x grouped by endpoints
            cands: dict[tuple[int, int], list[tuple[int, int]]] = {}
            for b in layers[n - 1]:
                bp = self.basis[b]
                for x in q.out_arrows(bp.target):
                    cands.setdefault((bp.source, q.arrows[x].target), []).append((b, x))
            cand_pos = {c: (key, i) for key, lst in cands.items() for i, c in enumerate(lst)}
            # ideal in length n expressed in candidate coordinates
            rows: dict[tuple[int, int], list[list]] = {key: [] for key in cands}
            for length, rels in rels_by_len.items():
                if length > n:
                    continue
                for b in layers[n - length]:
                    bp = self.basis[b]
                    for rel in rels:
                        src = q.arrows[rel[0][1][0]].source
                        if src != bp.target:
                            continue
                        vec: dict[tuple[int, int], object] = {}
                        for coeff, path in rel:
                            c0 = f.parse(coeff)
                            cur = {b: c0}
                            for x in path[:-1]:
                                cur = self._apply(cur, x)
                            last = path[-1]
                            for bb, c in cur.items():
                                vec[(bb, last)] = vec.get((bb, last), 0) + c
                        vec = {k: f.norm(v) for k, v in vec.items() if f.norm(v) != 0}
                        if not vec:
                            continue
                        key = cand_pos[next(iter(vec))][0]
                        row = [0] * len(cands[key])
                        for c, val in vec.items():
                            row[cand_pos[c][1]] = val
                        rows[key].append(row)
            new_layer = []
            for key in sorted(cands):
                lst = cands[key]
                red, piv = rref(rows[key], len(lst), f) if rows[key] else ([], [])
                pivset = set(piv)
                idx = {}
                for j, (b, x) in enumerate(lst):
                    if j not in pivset:
                        bp = self.basis[b]
                        idx[j] = len(self.basis)
                        self.basis.append(BasisPath(bp.source, q.arrows[x].target, bp.arrows + (x,)))
                        new_layer.append(idx[j])
                        self.ext[(b, x)] = {idx[j]: 1}
                for r, c in zip(red, piv):
                    pv = r[c]
                    exp = {}
                    for j, val in enumerate(r):
                        if val and j != c:
                            exp[idx[j]] = f.norm(f.div(-val, pv))
                    self.ext[lst[c]] = exp
            layers.append(new_layer)
        # basis paths whose extension never got listed are killed by length
        for b, bp in enumerate(self.basis):
            for x in q.out_arrows(bp.target):
                self.ext.setdefault((b, x), {})

    def _apply(self, vec: dict, x: int) -> dict:
        out: dict = {}
        f = self.field
        for b, c in vec.items():
            for bb, d in self.ext[(b, x)].items():
                out[bb] = out.get(bb, 0) + c * d
        return {k: f.norm(v) for k, v in out.items() if f.norm(v) != 0}

    # -- queries -------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def n_vertices(self) -> int:
        return len(self.quiver.vertices)

    def paths(self, u: int, v: int) -> list[int]:
        """Basis indices of normal paths ``u -> v``."""
        return self.from_to.get((u, v), [])

    def reduce(self, source: int, arrows: Sequence[int]) -> dict:
        """Expansion of an arbitrary path in the basis."""
        at = source
        for x in arrows:
            if self.quiver.arrows[x].source != at:
                raise AlgebraError("path is not composable")
            at = self.quiver.arrows[x].target
        vec = {self.idempotent[source]: 1}
        for x in arrows:
            vec = self._apply(vec, x)
            if not vec:
                return {}
        return vec

    def times(self, a: int, b: int) -> dict:
        """Product of basis elements ``a · b`` (``a`` first)."""
        pa, pb = self.basis[a], self.basis[b]
        if pa.target != pb.source:
            return {}
        vec = {a: 1}
        for x in pb.arrows:
            vec = self._apply(vec, x)
            if not vec:
                break
        return vec

    def path_name(self, b: int) -> str:
        bp = self.basis[b]
        if not bp.arrows:
            return f"e{self.quiver.vertices[bp.source]}"
        names = [self.quiver.arrows[x].name for x in bp.arrows]
        return "".join(names) if all(len(n) == 1 for n in names) else "·".join(names)

    def opposite(self) -> "Algebra":
        return Algebra(self.quiver.opposite(), self.field)

    def dims_between(self) -> list[list[int]]:
        n = self.n_vertices
        return [[len(self.paths(u, v)) for v in range(n)] for u in range(n)]


def normalize(q: BoundQuiver, field: Field = QQ, cap: int = DEFAULT_PATH_CAP) -> Algebra:
    return Algebra(q, field, cap)


def quotient_by_vertices(alg: Algebra, vertices: Sequence[int]) -> Algebra:
    """``A / A e A`` for ``e`` the sum of the given idempotents.

    The quotient is again a bound quiver algebra: delete the vertices and every
    arrow touching them, and keep the relations whose paths avoid them (paths
    through a deleted vertex are zero in the quotient).
    """
    q = alg.quiver
    drop = set(vertices)
    keep = [v for v in range(len(q.vertices)) if v not in drop]
    vpos = {v: i for i, v in enumerate(keep)}
    arrows = []
    apos = {}
    for i, a in enumerate(q.arrows):
        if a.source in drop or a.target in drop:
            continue
        apos[i] = len(arrows)
        arrows.append(Arrow(a.name, vpos[a.source], vpos[a.target]))
    rels = []
    for rel in q.relations:
        terms = tuple((c, tuple(apos[x] for x in p)) for c, p in rel if all(x in apos for x in p))
        if terms:
            rels.append(terms)
    return Algebra(BoundQuiver(tuple(q.vertices[v] for v in keep), tuple(arrows), tuple(rels)), alg.field)


def vertex_of(alg: Algebra, name_or_index) -> int:
    if isinstance(name_or_index, int):
        return name_or_index
    return alg.quiver.vertex_index(name_or_index)

