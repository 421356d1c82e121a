"""Exact scalar fields and dense matrix kernels.

Matrices are plain lists of rows.  Entries are ``int``/``Fraction`` over the
rationals and ``int`` in ``range(p)`` over a prime field; every kernel takes
the :class:`Field` explicitly and never mutates its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Matrix = list  # list of rows; an empty matrix carries its column count separately


class NoSolution(Exception):
    """Raised by :func:`solve` when the right-hand side is not in the image."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``p == 0``) or the prime field of order ``p``."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not (_is_prime(self.p) and self.p < 2**31):
            raise ValueError(f"not a prime below 2^31: {self.p}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        if p <= 0:
            raise ValueError(f"not a prime below 2^31: {p}")
        return cls(p)

    @classmethod
    def from_flag(cls, flag: str) -> "Field":
        """Parse ``q``, ``f2``, ``f<p>`` (as used on the command line)."""
        flag = flag.strip().lower()
        if flag in ("q", "qq", "rationals"):
            return cls(0)
        if flag.startswith("f") and flag[1:].isdigit():
            return cls.prime(int(flag[1:]))
        raise ValueError(f"unknown field flag {flag!r}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def flag(self) -> str:
        return "q" if self.p == 0 else f"f{self.p}"

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def norm(self, x):
        """Canonical representative of ``x``."""
        if self.p:
            return int(x) % self.p
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, str):
            x = Fraction(x)
        return self.norm(Fraction(x))

    def inv(self, x):
        if self.p:
            return pow(x, -1, self.p)
        return self.norm(Fraction(1) / x)

    def div(self, a, b):
        if self.p:
            return (a * pow(b, -1, self.p)) % self.p
        return self.norm(Fraction(a) / b)

    def parse(self, s) -> object:
        """Parse ``"a"``, ``"a/b"`` or an int into this field."""
        if isinstance(s, (int, Fraction)):
            return self(s)
        return self(Fraction(str(s).strip()))

    def format(self, x) -> str:
        x = self.norm(x)
        return str(x)


QQ = Field(0)
GF2 = Field(2)


# -- small helpers -----------------------------------------------------------

def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m: Matrix, ncols: Optional[int] = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix, field: Field, inner: Optional[int] = None, ncols: Optional[int] = None) -> Matrix:
    """Product ``a @ b``; ``ncols`` is needed only when ``b`` has no rows."""
    if not b:
        nc = ncols if ncols is not None else 0
        return [[0] * nc for _ in a]
    nc = len(b[0])
    bt = list(zip(*b)) if nc else []
    out = []
    p = field.p
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        if not nz:
            out.append([0] * nc)
            continue
        new = []
        for col in bt:
            s = 0
            for k, x in nz:
                y = col[k]
                if y:
                    s += x * y
            new.append(s % p if p else field.norm(s))
        out.append(new)
    return out


def matvec(a: Matrix, v: Sequence, field: Field) -> list:
    p = field.p
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s += x * y
        out.append(s % p if p else field.norm(s))
    return out


def is_zero(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def hstack(blocks: Sequence[Matrix], nrows: int) -> Matrix:
    out = [[] for _ in range(nrows)]
    for b in blocks:
        for i in range(nrows):
            out[i].extend(b[i])
    return out


def block_diag(blocks: Sequence[tuple[Matrix, int, int]]) -> Matrix:
    """Block-diagonal matrix from ``(matrix, rows, cols)`` triples."""
    total_c = sum(c for _, _, c in blocks)
    out = []
    off = 0
    for m, r, c in blocks:
        for i in range(r):
            row = [0] * total_c
            row[off:off + c] = m[i]
            out.append(row)
        off += c
    return out


# -- elimination -------------------------------------------------------------

def _content_reduce(row: list) -> list:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _integer_rows(rows: Matrix) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in r])
        else:
            out.append([int(x * den) for x in r])
    return out


def _echelon(rows: Matrix, ncols: int, field: Field, reduced: bool = True):
    """Row echelon form with deterministic pivoting.

    Returns ``(rows, pivots)`` where ``rows`` holds only the nonzero rows.
    Over the rationals the rows are integer vectors (fraction-free
    elimination with content reduction) whose pivot entries are positive but
    not necessarily one; over GF(p) pivots are normalised to one.
    """
    p = field.p
    if p:
        a = [[x % p for x in r] for r in rows]
    else:
        a = [_content_reduce(r) for r in _integer_rows(rows)]
    a = [r for r in a if any(r)]
    nrows = len(a)
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr >= nrows:
            break
        sel = None
        for i in range(pr, nrows):
            if a[i][c]:
                sel = i
                break
        if sel is None:
            continue
        if sel != pr:
            a[pr], a[sel] = a[sel], a[pr]
        prow = a[pr]
        pv = prow[c]
        if p:
            if pv != 1:
                inv = pow(pv, -1, p)
                prow = [(x * inv) % p for x in prow]
                a[pr] = prow
            start = 0 if reduced else pr + 1
            for i in range(start, nrows):
                if i == pr:
                    continue
                f = a[i][c]
                if f:
                    ri = a[i]
                    a[i] = [(x - f * y) % p for x, y in zip(ri, prow)]
        else:
            if pv < 0:
                prow = [-x for x in prow]
                a[pr] = prow
                pv = -pv
            start = 0 if reduced else pr + 1
            for i in range(start, nrows):
                if i == pr:
                    continue
                f = a[i][c]
                if f:
                    g = math.gcd(pv, f)
                    m1, m2 = pv // g, f // g
                    ri = a[i]
                    a[i] = _content_reduce([m1 * x - m2 * y for x, y in zip(ri, prow)])
        pivots.append(c)
        pr += 1
    return a[:pr], pivots


def rref(rows: Matrix, ncols: int, field: Field):
    """Reduced row echelon form; see :func:`_echelon`."""
    return _echelon(rows, ncols, field, reduced=True)


def rank(rows: Matrix, field: Field, ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    n = len(rows[0]) if ncols is None else ncols
    return len(_echelon(rows, n, field, reduced=False)[1])


def kernel_basis(rows: Matrix, ncols: int, field: Field) -> list[list]:
    """Basis of ``{x : rows @ x = 0}`` as a list of vectors."""
    red, piv = rref(rows, ncols, field)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        if field.p:
            v = [0] * ncols
            v[f] = 1
            for r, c in zip(red, piv):
                if r[f]:
                    v[c] = (-r[f]) % field.p
        else:
            scale = 1
            for r, c in zip(red, piv):
                if r[f]:
                    scale = scale * r[c] // math.gcd(scale, r[c])
            v = [0] * ncols
            v[f] = scale
            for r, c in zip(red, piv):
                if r[f]:
                    v[c] = -r[f] * (scale // r[c])
            v = _content_reduce(v)
        basis.append(v)
    return basis


def kernel_matrix(rows: Matrix, ncols: int, field: Field) -> Matrix:
    """Kernel basis as the columns of a ``ncols x nullity`` matrix."""
    return transpose(kernel_basis(rows, ncols, field), ncols)


def solve_many(a: Matrix, b: Matrix, ncols: int, field: Field) -> Optional[Matrix]:
    """Some ``x`` with ``a @ x = b`` (``b`` may have several columns), or None."""
    nb = len(b[0]) if b else 0
    if not a:
        return zeros(ncols, nb) if is_zero(b) else None
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    red, piv = rref(aug, ncols + nb, field)
    if piv and piv[-1] >= ncols:
        return None
    x = zeros(ncols, nb)
    for r, c in zip(red, piv):
        pv = r[c]
        for j in range(nb):
            y = r[ncols + j]
            if y:
                x[c][j] = y if (field.p or pv == 1) else field.norm(Fraction(y, pv))
    return x


def solve(a: Matrix, b: Sequence, field: Field, ncols: Optional[int] = None) -> list:
    """Some ``x`` with ``a @ x = b``; raises :class:`NoSolution` otherwise."""
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    if len(b) != len(a):
        raise ValueError(f"dimension mismatch: {len(a)} rows vs rhs of length {len(b)}")
    x = solve_many(a, [[y] for y in b], n, field)
    if x is None:
        raise NoSolution("right-hand side is not in the image")
    return [row[0] for row in x]


def column_space_basis(m: Matrix, nrows: int, field: Field) -> Matrix:
    """Independent columns spanning the image, as a ``nrows x r`` matrix."""
    if not m or not m[0]:
        return [[] for _ in range(nrows)]
    red, piv = rref(transpose(m), nrows, field)
    return transpose(red, nrows) if red else [[] for _ in range(nrows)]


def complement_units(basis_cols: Matrix, n: int, field: Field) -> list[int]:
    """Coordinates ``j`` whose unit vectors complete ``basis_cols`` to a basis."""
    if not basis_cols or not basis_cols[0]:
        return list(range(n))
    _, piv = rref(transpose(basis_cols), n, field)
    ps = set(piv)
    return [j for j in range(n) if j not in ps]


def inverse(m: Matrix, field: Field) -> Optional[Matrix]:
    n = len(m)
    return solve_many(m, identity(n), n, field) if rank(m, field, n) == n else None
