"""Exact integer/rational linear algebra shared by the lattice and cone modules.

Everything here works on plain Python ints (arbitrary precision) and
``fractions.Fraction``. Vectors are tuples, matrices are tuples of row tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def mat_vec(M: Sequence[Sequence[int]], x: Sequence[int]) -> Vector:
    return tuple(dot(row, x) for row in M)


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(dot(row, c) for c in cols) for row in A)


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*A))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    out = tuple(tuple(int(a) for a in row) for row in rows)
    return out


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for a in v:
        g = gcd(g, a)
    if g <= 1:
        return tuple(v)
    return tuple(a // g for a in v)


def primitive_rational(v: Sequence[Fraction]) -> Vector:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    den = 1
    for a in v:
        den = den * a.denominator // gcd(den, a.denominator)
    return primitive([int(a * den) for a in v])


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank of an integer matrix (Bareiss-style, no fractions)."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    prev = 1
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pivot = M[r][c]
        for i in range(r + 1, len(M)):
            a = M[i][c]
            row_i = M[i]
            row_r = M[r]
            for j in range(c, ncols):
                row_i[j] = (row_i[j] * pivot - a * row_r[j]) // prev
        prev = pivot
        r += 1
        if r == len(M):
            break
    return r


def rref(rows: Sequence[Sequence[int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    M = [[Fraction(a) for a in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def canonical_subspace_basis(rows: Sequence[Sequence[int]]) -> Matrix:
    """Canonical primitive integer basis of the rational span of ``rows``.

    Rows of the RREF, each scaled to a primitive integer vector. Two inputs
    span the same subspace iff their canonical bases are equal.
    """
    R, _ = rref(rows)
    return tuple(primitive_rational(r) for r in R)


class SubspaceReducer:
    """Canonical representatives of vectors modulo a rational subspace."""

    def __init__(self, basis: Sequence[Sequence[int]]):
        self.rows, self.pivots = rref(basis)

    def reduce(self, v: Sequence[int]) -> Vector:
        if not self.rows:
            return primitive(v)
        w = [Fraction(a) for a in v]
        for row, c in zip(self.rows, self.pivots):
            f = w[c]
            if f:
                w = [a - f * b for a, b in zip(w, row)]
        return primitive_rational(w)


def hermite_rows(rows: Sequence[Sequence[int]], pivot_cols: int | None = None) -> tuple[list[list[int]], int]:
    """Row Hermite normal form by unimodular integer row operations.

    Only the first ``pivot_cols`` columns are used for pivoting (all columns
    by default); the remaining columns are carried along, which is how the
    kernel computation tracks the transformation. Returns the transformed
    rows and the number of pivot rows.
    """
    M = [list(r) for r in rows]
    if not M:
        return M, 0
    ncols = len(M[0]) if pivot_cols is None else pivot_cols
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[p] = M[p], M[r]
            clean = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c]:
                        clean = False
            if clean:
                break
        if r < len(M) and M[r][c] != 0:
            if M[r][c] < 0:
                M[r] = [-a for a in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
            if r == len(M):
                break
    return M, r


def integer_kernel(A: Sequence[Sequence[int]], n: int) -> Matrix:
    """Z-basis of {x in Z^n : A x = 0}, Hermite-reduced.

    The basis spans the saturated kernel lattice, not merely a finite-index
    sublattice of it.
    """
    m = len(A)
    aug = [[A[i][j] for i in range(m)] + [int(j == k) for k in range(n)] for j in range(n)]
    H, r = hermite_rows(aug, pivot_cols=m)
    kernel = [row[m:] for row in H[r:]]
    if not kernel:
        return ()
    K, _ = hermite_rows(kernel)
    return tuple(tuple(row) for row in K if any(row))


def solve_integer(w: Sequence[int], k: int) -> Vector | None:
    """One integer solution x of w . x = k, or None if gcd(w) does not divide k."""
    n = len(w)
    aug = [[w[j]] + [int(j == i) for i in range(n)] for j in range(n)]
    H, r = hermite_rows(aug, pivot_cols=1)
    if r == 0:
        return tuple([0] * n) if k == 0 else None
    g = H[0][0]
    if k % g:
        return None
    q = k // g
    return tuple(q * a for a in H[0][1:])


def inverse_rational(A: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(A)
    aug = [list(A[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if len(R) < n or pivots[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def positive_inverse_multiple(A: Sequence[Sequence[int]]) -> Matrix:
    """Integer matrix c * A^{-1} with c > 0 minimal; acts on cones like A^{-1}."""
    inv = inverse_rational(A)
    den = 1
    for row in inv:
        for a in row:
            den = den * a.denominator // gcd(den, a.denominator)
    return tuple(tuple(int(a * den) for a in row) for row in inv)
