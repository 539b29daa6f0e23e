"""Exact integer and rational linear algebra for small dense matrices.

Matrices are plain sequences of rows. Entries may be ``int`` or
``Fraction``; results are always exact (``int`` where the value is known to
be integral, ``Fraction`` otherwise).
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Optional, Sequence

from .exceptions import DimensionError, RankError

Matrix = Sequence[Sequence]

__all__ = [
    "RatMatrix",
    "det",
    "rank",
    "rref",
    "solve",
    "kernel_basis",
    "lattice_index",
    "primitive",
    "transpose",
    "ext_gcd",
    "unimodular_to_e1",
    "hermite_2x2",
]


class RatMatrix(tuple):
    """Immutable row-major matrix of ``Fraction`` entries."""

    def __new__(cls, rows: Matrix):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if len({len(r) for r in rows}) > 1:
            raise DimensionError("ragged matrix")
        return super().__new__(cls, rows)

    @property
    def nrows(self) -> int:
        return len(self)

    @property
    def ncols(self) -> int:
        return len(self[0]) if self else 0

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RatMatrix":
        return cls(transpose(columns))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])


def transpose(m: Matrix) -> list[list]:
    return [list(col) for col in zip(*m)]


def _shape(m: Matrix) -> tuple[int, int]:
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if any(len(row) != ncols for row in m):
        raise DimensionError("ragged matrix")
    return nrows, ncols


def det(m: Matrix):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, k = _shape(m)
    if n != k:
        raise DimensionError(f"determinant of a non-square {n}x{k} matrix")
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    prev = Fraction(1)
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev
        prev = a[i][i]
    d = sign * a[n - 1][n - 1]
    return d.numerator if d.denominator == 1 else d


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    nrows, ncols = _shape(m)
    a = [[Fraction(x) for x in row] for row in m]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def solve(a: Matrix, b: Sequence) -> Optional[list[Fraction]]:
    """Solve ``a @ x = b`` exactly.

    Returns ``None`` when the system is inconsistent. For underdetermined
    systems the particular solution with all free variables zero is returned.
    """
    nrows, ncols = _shape(a)
    if len(b) != nrows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {nrows}")
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x


def primitive(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector, keeping its direction."""
    v = [Fraction(x) for x in v]
    den = reduce(lambda x, y: x * y // gcd(x, y), (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return ints
    return [x // g for x in ints]


def kernel_basis(a: Matrix) -> list[list[int]]:
    """Basis of the rational null space of ``a`` as primitive integer vectors.

    Each vector has its first nonzero entry positive.
    """
    nrows, ncols = _shape(a)
    if nrows == 0:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(a)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[free]
        w = primitive(v)
        if next(x for x in w if x != 0) < 0:
            w = [-x for x in w]
        basis.append(w)
    return basis


def lattice_index(vectors: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``vectors`` in its saturation.

    Computed as the gcd of all maximal minors of the k x d matrix whose rows
    are the vectors; for k == d this is ``abs(det)``.
    """
    k = len(vectors)
    if k == 0:
        return 1
    d = len(vectors[0])
    if any(len(v) != d for v in vectors):
        raise DimensionError("vectors of different lengths")
    if k > d:
        raise RankError(f"{k} vectors in dimension {d} are dependent")
    g = 0
    for cols in itertools.combinations(range(d), k):
        g = gcd(g, int(det([[v[c] for c in cols] for v in vectors])))
    if g == 0:
        raise RankError("vectors are linearly dependent")
    return g


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def unimodular_to_e1(x: Sequence[int]) -> list[list[int]]:
    """2x2 integer matrix U, det U = 1, with U x = (1, 0) for primitive x."""
    a, b = x
    g, s, t = ext_gcd(a, b)
    if g != 1:
        raise ValueError(f"{tuple(x)} is not primitive")
    return [[s, t], [-b, a]]


def hermite_2x2(a: Sequence[int], b: Sequence[int]) -> list[list[int]]:
    """U in GL(2, Z) putting the matrix with columns a, b in Hermite normal form.

    ``U @ [a b] = [[g, x], [0, h]]`` with g > 0, h > 0 and 0 <= x < h; this
    U is unique when a and b are independent.
    """
    g, s, t = ext_gcd(a[0], a[1])
    u = [[s, t], [-a[1] // g, a[0] // g]]
    bx = u[0][0] * b[0] + u[0][1] * b[1]
    by = u[1][0] * b[0] + u[1][1] * b[1]
    if by == 0:
        raise RankError("columns are dependent")
    if by < 0:
        u[1] = [-u[1][0], -u[1][1]]
        by = -by
    k = bx // by
    u[0] = [u[0][0] - k * u[1][0], u[0][1] - k * u[1][1]]
    return u
