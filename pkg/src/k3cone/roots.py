"""(-2)-roots of hyperbolic lattices and the reflections they define.

Roots are enumerated slice by slice: all alpha with alpha^2 = -2 and
inner(alpha, v0) = level for a fixed positive vector v0. On such a slice
the form restricted to v0-perp is negative definite, so the slice is a
finite set found by exact branch-and-bound (Fincke-Pohst with rational
LDL data).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Sequence

from . import _linalg
from ._linalg import Matrix, Vector
from .lattice import GramLattice, Isometry, inner, is_hyperbolic, norm

__all__ = [
    "Root",
    "reflect",
    "reflection_matrix",
    "enumerate_roots_at_level",
    "iter_roots_at_level",
    "LevelSlice",
    "TooManyCandidates",
]


@dataclass(frozen=True)
class Root:
    lattice: GramLattice
    vec: Vector

    def __post_init__(self):
        v = self.lattice.check_vector(self.vec)
        object.__setattr__(self, "vec", v)
        if norm(self.lattice, v) != -2:
            raise ValueError(f"{v} has norm {norm(self.lattice, v)}, not -2")

    def __neg__(self) -> "Root":
        return Root(self.lattice, tuple(-a for a in self.vec))


def _as_root(alpha, lattice: GramLattice | None = None) -> Root:
    if isinstance(alpha, Root):
        return alpha
    if lattice is None:
        raise TypeError("a bare vector needs its lattice")
    return Root(lattice, tuple(alpha))


def reflect(alpha: Root, x: Sequence[int]) -> Vector:
    """s_alpha(x) = x + inner(x, alpha) alpha."""
    L = alpha.lattice
    x = L.check_vector(x)
    c = inner(L, x, alpha.vec)
    return tuple(a + c * b for a, b in zip(x, alpha.vec))


def reflection_matrix(alpha: Root) -> Isometry:
    L = alpha.lattice
    g_alpha = L.gram_times(alpha.vec)
    n = L.rank
    M = tuple(
        tuple(int(i == j) + alpha.vec[i] * g_alpha[j] for j in range(n))
        for i in range(n)
    )
    return Isometry(L, M)


class TooManyCandidates(Exception):
    """Raised when a level holds more roots than the caller's limit."""


class LevelSlice:
    """Precomputed data for enumerating roots with inner(alpha, v0) fixed.

    The integer solutions of inner(alpha, v0) = k form an affine lattice
    p_k + B^T t, with B a basis of the integer kernel of G v0. On that slice
    -alpha^2 is a positive definite quadratic in t, so alpha^2 = -2 becomes
    q(t - c_k) = R_k for a center c_k and radius R_k.
    """

    def __init__(self, L: GramLattice, v0: Sequence[int]):
        v0 = L.check_vector(v0)
        if not is_hyperbolic(L):
            raise ValueError("root enumeration needs a lattice of signature (1, n-1)")
        if norm(L, v0) <= 0:
            raise ValueError("controlling vector must have positive norm")
        self.lattice = L
        self.v0 = v0
        self.w = L.gram_times(v0)
        self.basis: Matrix = _linalg.integer_kernel([self.w], L.rank)
        B = self.basis
        GB = [L.gram_times(b) for b in B]
        # A = -B G B^T, positive definite on v0-perp
        self.A = tuple(tuple(-_linalg.dot(b, gb) for gb in GB) for b in B)
        self._d, self._mu = _fincke_pohst_data(self.A)
        self._Ainv = _linalg.inverse_rational(self.A) if B else []
        self._basis_cols = [[(i, row[k]) for i, row in enumerate(B) if row[k]] for k in range(L.rank)]

    def roots(self, level: int, limit: int | None = None) -> list[Vector]:
        """Roots at this level in search order; raises TooManyCandidates past ``limit``."""
        if level < 0:
            raise ValueError("level must be nonnegative")
        p = _linalg.solve_integer(self.w, level)
        if p is None:
            return []
        L = self.lattice
        B = self.basis
        m = len(B)
        if m == 0:
            return [p] if norm(L, p) == -2 else []
        # -(p + B^T t)^2 = c0 + 2 b.t + t^T A t with b = -B G p, c0 = -p^2
        Gp = L.gram_times(p)
        b = [-_linalg.dot(row, Gp) for row in B]
        c0 = -_linalg.dot(p, Gp)
        Ainv = self._Ainv
        center = [-sum(Ainv[i][j] * b[j] for j in range(m)) for i in range(m)]
        radius = 2 - c0 + sum(b[i] * Ainv[i][j] * b[j] for i in range(m) for j in range(m))
        if radius < 0:
            return []
        out: list[Vector] = []
        cols = self._basis_cols
        n = len(p)

        def emit(t):
            out.append(tuple(p[k] + sum(t[i] * c for i, c in cols[k]) for k in range(n)))
            if limit is not None and len(out) > limit:
                raise TooManyCandidates(level)

        _fincke_pohst_exact(self._d, self._mu, center, radius, emit)
        return out

    def iter_level(self, level: int) -> Iterator[Vector]:
        return iter(self.roots(level))


def _fincke_pohst_data(A: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact decomposition q(y) = sum_i d_i (y_i + sum_{j>i} mu_ij y_j)^2."""
    m = len(A)
    Q = [[Fraction(a) for a in row] for row in A]
    for i in range(m):
        if Q[i][i] <= 0:
            raise ValueError("quadratic form is not positive definite")
        for j in range(i + 1, m):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, m):
            for l in range(k, m):
                Q[k][l] -= Q[k][i] * Q[i][l]
    d = [Q[i][i] for i in range(m)]
    mu = [[Q[i][j] if j > i else Fraction(0) for j in range(m)] for i in range(m)]
    return d, mu


def _lcm_denominators(values) -> int:
    den = 1
    for a in values:
        q = Fraction(a).denominator
        den = den * q // gcd(den, q)
    return den


def _fincke_pohst_exact(d, mu, center, radius, emit) -> None:
    """Call ``emit(t)`` for every integer t with q(t - center) == radius exactly.

    Everything is scaled to integers: with D clearing the denominators of mu
    and center and Q those of d and radius, Z_i = D^2 (y_i + sum mu_ij y_j)
    is an integer and the search region is sum_i (Q d_i) Z_i^2 <= (Q radius) D^4.
    The last coordinate needs no loop: Z_0 is fixed up to sign by the equation.
    """
    m = len(d)
    D = _lcm_denominators([x for row in mu for x in row] + list(center))
    Q = _lcm_denominators(list(d) + [radius])
    M = [[(j, int(mu[i][j] * D)) for j in range(i + 1, m) if mu[i][j]] for i in range(m)]
    C = [int(c * D) for c in center]
    P = [int(x * Q) for x in d]
    D2 = D * D
    total = int(radius * Q) * D2 * D2
    t = [0] * m
    Y = [0] * m  # Y_j = D t_j - C_j

    def rec(i: int, rem: int) -> None:
        base = sum(c * Y[j] for j, c in M[i]) - D * C[i]  # Z_i = D^2 t_i + base
        Pi = P[i]
        if i == 0:
            if rem % Pi:
                return
            z2 = rem // Pi
            z = isqrt(z2)
            if z * z != z2:
                return
            for Z in ((z, -z) if z else (0,)):
                if (Z - base) % D2 == 0:
                    t[0] = (Z - base) // D2
                    emit(t)
            return
        bound = isqrt(rem // Pi)
        lo = -((bound + base) // D2)
        hi = (bound - base) // D2
        for x in range(lo, hi + 1):
            Z = D2 * x + base
            t[i] = x
            Y[i] = D * x - C[i]
            rec(i - 1, rem - Pi * Z * Z)

    if total >= 0:
        rec(m - 1, total)


def iter_roots_at_level(L: GramLattice, v0: Sequence[int], level: int) -> Iterator[Vector]:
    return LevelSlice(L, v0).iter_level(level)


def enumerate_roots_at_level(L: GramLattice, v0: Sequence[int], level: int) -> list[Root]:
    """All roots alpha with inner(alpha, v0) == level, sorted lexicographically."""
    return [Root(L, a) for a in sorted(LevelSlice(L, v0).roots(level))]
