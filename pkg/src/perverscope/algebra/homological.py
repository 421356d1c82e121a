"""Projective resolutions, Hom complexes, Ext and global dimension."""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from ..scalars import rank, zeros
from .modules import (Module, cover_from_generators, find_isomorphism, kernel_spans, simple,
                      submodule, top_generators)
from .quiver import Algebra, AlgebraError


class Undetermined(AlgebraError):
    """A resolution was truncated before the requested degree."""


def cap_from_env(default: int) -> int:
    raw = os.environ.get("PERVERSCOPE_CAP")
    if raw is None or raw == "":
        return default
    try:
        cap = int(raw)
    except ValueError:
        raise AlgebraError(f"PERVERSCOPE_CAP must be an integer, got {raw!r}") from None
    if cap < 0:
        raise AlgebraError("PERVERSCOPE_CAP must be non-negative")
    return cap


@dataclass
class Resolution:
    """``... -> P_1 -> P_0 -> M`` stored over the algebra.

    ``tops[j]`` lists the vertex of each generator of ``P_j``; ``diffs[j]``
    (``j >= 1``) maps each generator of ``P_j`` to its image in ``P_{j-1}`` as
    ``{(generator, basis path): coeff}``.
    """

    algebra: Algebra
    module: Module
    tops: list = dc_field(default_factory=list)
    diffs: list = dc_field(default_factory=list)
    syzygies: list = dc_field(default_factory=list)
    truncated: bool = False
    repeat: Optional[tuple[int, int]] = None
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.tops) - 1

    def multiplicities(self) -> list[list[int]]:
        """``[j][v]`` = number of copies of ``P_v`` in ``P_j``."""
        n = self.algebra.n_vertices
        return [[t.count(v) for v in range(n)] for t in self.tops]

    def pattern(self) -> list[str]:
        """Readable term list, e.g. ``["P2", "P1", "P0+P2"]``."""
        names = self.algebra.quiver.vertices
        out = []
        for t in self.tops:
            out.append("+".join(f"P{names[v]}" for v in sorted(t)) or "0")
        return out


def resolve(m: Module, cap: int, minimal: bool = True, detect_repeats: bool = False,
            seed: int = 0) -> Resolution:
    """Projective resolution up to homological degree ``cap``.

    Minimal resolutions cover each syzygy by a lift of its top; otherwise every
    basis vector is taken as a generator.  With ``detect_repeats`` the run
    stops as soon as a nonzero syzygy is isomorphic to an earlier one.
    """
    alg = m.algebra
    res = Resolution(alg, m, minimal=minimal)
    omega = m
    incl = None
    prev_labels = None
    res.syzygies.append(m)
    j = 0
    while not omega.is_zero():
        if j > cap:
            res.truncated = True
            break
        if minimal:
            gens = top_generators(omega)
        else:
            gens = [(v, [1 if i == k else 0 for i in range(omega.dims[v])])
                    for v in range(len(omega.dims)) for k in range(omega.dims[v])]
        cover = cover_from_generators(omega, gens)
        res.tops.append([v for v, _ in gens])
        if j > 0:
            d = []
            for v, vec in gens:
                col = [sum(incl[v][r][c] * vec[c] for c in range(len(vec)) if vec[c]) for r in range(len(incl[v]))]
                d.append({prev_labels[v][r]: alg.field.norm(x) for r, x in enumerate(col) if alg.field.norm(x)})
            res.diffs.append(d)
        else:
            res.diffs.append(None)
        spans = kernel_spans(cover)
        omega = submodule(cover.module, spans)
        incl = spans
        prev_labels = cover.labels
        j += 1
        if omega.is_zero():
            break
        res.syzygies.append(omega)
        if detect_repeats:
            for i in range(len(res.syzygies) - 1):
                earlier = res.syzygies[i]
                if earlier.dims == omega.dims and find_isomorphism(earlier, omega, seed) is not None:
                    res.repeat = (i, j)
                    res.truncated = True
                    return res
    return res


# -- Hom complexes -----------------------------------------------------------

@dataclass
class HomComplex:
    """``Hom(P_•, N)``: ``dims[j]`` and coboundaries ``maps[j]: C^j -> C^{j+1}``."""

    dims: list
    maps: list
    complete: bool
    field: object = None

    def cohomology(self) -> list[int]:
        f_ranks = [rank(m, self.field, self.dims[j]) if m and self.dims[j] else 0
                   for j, m in enumerate(self.maps)]
        out = []
        for j in range(len(self.dims)):
            r_out = f_ranks[j] if j < len(f_ranks) else 0
            r_in = f_ranks[j - 1] if j >= 1 else 0
            out.append(self.dims[j] - r_out - r_in)
        return out


def hom_complex(res: Resolution, n: Module) -> HomComplex:
    alg = res.algebra
    f = alg.field
    offs_all = []
    dims = []
    for t in res.tops:
        offs = []
        o = 0
        for v in t:
            offs.append(o)
            o += n.dims[v]
        offs_all.append(offs)
        dims.append(o)
    maps = []
    path_cache: dict = {}

    def nmat(b):
        if b not in path_cache:
            path_cache[b] = n.basis_matrix(b)
        return path_cache[b]

    for j in range(len(res.tops) - 1):
        m = zeros(dims[j + 1], dims[j])
        for gp, image in enumerate(res.diffs[j + 1]):
            vp = res.tops[j + 1][gp]
            ro = offs_all[j + 1][gp]
            for (g, b), c in image.items():
                co = offs_all[j][g]
                nb = nmat(b)
                for r in range(n.dims[vp]):
                    row = m[ro + r]
                    for s in range(len(nb[r]) if nb else 0):
                        if nb[r][s]:
                            row[co + s] = f.norm(row[co + s] + c * nb[r][s])
        maps.append(m)
    return HomComplex(dims, maps, not res.truncated, f)


def ext_dims(res: Resolution, n: Module, up_to: Optional[int] = None) -> list[int]:
    """``dim Ext^k(M, N)`` for ``k = 0..up_to`` (default: the resolution length)."""
    hc = hom_complex(res, n)
    h = hc.cohomology()
    if res.truncated:
        # the last computed degree lacks its outgoing coboundary
        h = h[:-1]
    if up_to is None:
        return h
    if up_to >= len(h):
        if res.truncated:
            raise Undetermined(f"resolution truncated before degree {up_to}")
        h = h + [0] * (up_to + 1 - len(h))
    return h[: up_to + 1]


def ext(m: Module, n: Module, k: int, cap: Optional[int] = None) -> int:
    if k < 0:
        raise AlgebraError("Ext degree must be non-negative")
    res = resolve(m, cap if cap is not None else k + 1)
    return ext_dims(res, n, k)[k]


# -- global dimension --------------------------------------------------------

@dataclass
class GlobalDimension:
    status: str                       # "finite" | "infinite" | "at-least"
    value: Optional[int]
    witness: Optional[dict] = None
    projective_dimensions: list = dc_field(default_factory=list)
    cap: int = 0

    def __str__(self):
        if self.status == "finite":
            return str(self.value)
        if self.status == "infinite":
            return "infinite"
        return f">= {self.value}"


def global_dimension(alg: Algebra, cap: Optional[int] = None) -> GlobalDimension:
    """Maximum projective dimension of the simples.

    A nonzero syzygy isomorphic to an earlier syzygy of the same simple proves
    infinite projective dimension; the isomorphism is kept as the witness.
    """
    if cap is None:
        cap = cap_from_env(2 * alg.n_vertices)
    pds = []
    atleast = False
    for v in range(alg.n_vertices):
        res = resolve(simple(alg, v), cap, detect_repeats=True)
        if res.repeat is not None:
            i, j = res.repeat
            iso = find_isomorphism(res.syzygies[i], res.syzygies[j])
            witness = {
                "simple": alg.quiver.vertices[v],
                "syzygies": [i, j],
                "dims": list(res.syzygies[j].dims),
                "isomorphism": [[[alg.field.format(x) for x in row] for row in blk] for blk in iso],
            }
            return GlobalDimension("infinite", None, witness, pds + [None], cap)
        if res.truncated:
            atleast = True
            pds.append(None)
        else:
            pds.append(res.length)
    if atleast:
        return GlobalDimension("at-least", cap + 1, None, pds, cap)
    return GlobalDimension("finite", max(pds, default=0), None, pds, cap)


def projective_dimension(m: Module, cap: int) -> Optional[int]:
    res = resolve(m, cap)
    return None if res.truncated else res.length


def euler_form(res: Resolution, n: Module) -> int:
    h = ext_dims(res, n)
    return sum((-1) ** k * x for k, x in enumerate(h))


def differential_in_radical(res: Resolution) -> bool:
    """True if no differential entry is a nonzero multiple of an idempotent."""
    alg = res.algebra
    lazy = set(alg.idempotent)
    for d in res.diffs[1:]:
        for image in d:
            if any(b in lazy for (_, b) in image):
                return False
    return True


def resolution_is_complex(res: Resolution) -> bool:
    """``d∘d = 0`` checked on generators."""
    alg = res.algebra
    f = alg.field
    for j in range(2, len(res.tops)):
        for image in res.diffs[j]:
            total: dict = {}
            for (g, b), c in image.items():
                for (g2, b2), c2 in res.diffs[j - 1][g].items():
                    for bb, c3 in alg.times(b2, b).items():
                        key = (g2, bb)
                        total[key] = f.norm(total.get(key, 0) + c * c2 * c3)
            if any(total.values()):
                return False
    return True


def hom_complex_of_tops(tops: Sequence[Sequence[int]], diffs, alg: Algebra, n: Module) -> HomComplex:
    """Hom complex for an arbitrary projective complex given in resolution form."""
    res = Resolution(alg, n, tops=[list(t) for t in tops], diffs=list(diffs))
    return hom_complex(res, n)
