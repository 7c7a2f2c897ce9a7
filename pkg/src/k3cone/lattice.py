"""Integral lattices given by a symmetric integer Gram matrix.

Vectors are plain tuples of ints in the lattice basis. All arithmetic is
exact; nothing here touches floating point.

>>> L = direct_sum([make_standard("DIAG", -4), make_standard("U")])
>>> L.rank, determinant(L), signature(L)
(3, 4, Signature(positive=1, negative=2))
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, NamedTuple, Sequence

from . import _linalg
from ._linalg import Matrix, Vector

__all__ = [
    "GramLattice",
    "Signature",
    "Isometry",
    "make_standard",
    "parse_block",
    "direct_sum",
    "inner",
    "norm",
    "signature",
    "determinant",
    "is_isometry",
    "lattice_from_definition",
    "lattice_to_definition",
    "load_lattice",
]

# E8 Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 attached to node 4.
_E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]

_BLOCK_RE = re.compile(r"^\s*(U|E8MINUS|DIAG\(\s*(-?\d+)\s*\))\s*$")


class Signature(NamedTuple):
    positive: int
    negative: int


@dataclass(frozen=True)
class GramLattice:
    """A nondegenerate integral lattice Z^rank with bilinear form ``gram``.

    Equality is equality of Gram matrices in the given basis; ``label`` is
    informational and ignored by ``==``.
    """

    gram: Matrix
    label: str = ""

    def __post_init__(self):
        gram = _linalg.as_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if n == 0:
            raise ValueError("lattice must have positive rank")
        if any(len(row) != n for row in gram):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")
        if _linalg.determinant(gram) == 0:
            raise ValueError("Gram matrix is degenerate (determinant 0)")

    def __eq__(self, other):
        if not isinstance(other, GramLattice):
            return NotImplemented
        return self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def check_vector(self, x: Sequence[int]) -> Vector:
        if len(x) != self.rank:
            raise ValueError(f"vector of length {len(x)} used with a rank-{self.rank} lattice")
        return tuple(int(a) for a in x)

    def gram_times(self, x: Sequence[int]) -> Vector:
        """The covector G x, i.e. y -> inner(x, y) in coordinates."""
        return _linalg.mat_vec(self.gram, self.check_vector(x))


class Isometry:
    """An integer matrix M with M^T G M = G for a given lattice."""

    __slots__ = ("lattice", "matrix")

    def __init__(self, lattice: GramLattice, matrix: Sequence[Sequence[int]]):
        M = _linalg.as_matrix(matrix)
        if not is_isometry(lattice, M):
            raise ValueError("matrix does not preserve the Gram form")
        self.lattice = lattice
        self.matrix = M

    def __call__(self, x: Sequence[int]) -> Vector:
        return _linalg.mat_vec(self.matrix, self.lattice.check_vector(x))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if other.lattice != self.lattice:
            raise ValueError("isometries of different lattices")
        return Isometry(self.lattice, _linalg.mat_mul(self.matrix, other.matrix))

    def __eq__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        return self.lattice == other.lattice and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.lattice, self.matrix))

    def __repr__(self):
        return f"Isometry({list(map(list, self.matrix))})"

    @property
    def det(self) -> int:
        return _linalg.determinant(self.matrix)


def _e8_minus() -> Matrix:
    G = [[0] * 8 for _ in range(8)]
    for i in range(8):
        G[i][i] = -2
    for i, j in _E8_EDGES:
        G[i][j] = G[j][i] = 1
    return _linalg.as_matrix(G)


def make_standard(name: str, parameter: int | None = None) -> GramLattice:
    """Standard building blocks: ``U``, ``E8MINUS`` and ``DIAG`` (with ``parameter`` n).

    ``name`` may also be a full block token such as ``"DIAG(-4)"``.
    """
    m = _BLOCK_RE.match(name)
    if m and m.group(2) is not None:
        if parameter is not None:
            raise ValueError("DIAG parameter given twice")
        name, parameter = "DIAG", int(m.group(2))
    name = name.strip()
    if name == "U":
        return GramLattice(((0, 1), (1, 0)), label="U")
    if name == "E8MINUS":
        return GramLattice(_e8_minus(), label="E8MINUS")
    if name == "DIAG":
        if parameter is None:
            raise ValueError("DIAG needs an integer parameter")
        if parameter == 0:
            raise ValueError("DIAG(0) is degenerate")
        return GramLattice(((int(parameter),),), label=f"DIAG({int(parameter)})")
    raise ValueError(f"unknown lattice name {name!r}")


def parse_block(token: str) -> GramLattice:
    if not _BLOCK_RE.match(token):
        raise ValueError(f"unknown lattice block token {token!r}")
    return make_standard(token)


def direct_sum(parts: Sequence[GramLattice]) -> GramLattice:
    """Block-diagonal (orthogonal) direct sum; labels are joined with ``+``."""
    if not parts:
        raise ValueError("direct sum of an empty list")
    n = sum(p.rank for p in parts)
    G = [[0] * n for _ in range(n)]
    offset = 0
    for p in parts:
        for i, row in enumerate(p.gram):
            G[offset + i][offset:offset + p.rank] = row
        offset += p.rank
    label = "+".join(p.label for p in parts if p.label)
    return GramLattice(_linalg.as_matrix(G), label=label)


def inner(L: GramLattice, x: Sequence[int], y: Sequence[int]) -> int:
    """x^T G y."""
    return _linalg.dot(L.gram_times(x), L.check_vector(y))


def norm(L: GramLattice, x: Sequence[int]) -> int:
    return inner(L, x, x)


def congruence_diagonal(gram: Sequence[Sequence[int]]) -> list[Fraction]:
    """Diagonal of a rational congruence diagonalization P^T G P = D.

    Symmetric Gaussian elimination; a zero pivot is repaired by a symmetric
    swap with a later nonzero diagonal entry, or failing that by adding a
    row/column with a nonzero off-diagonal entry into the pivot position.
    """
    A = [[Fraction(a) for a in row] for row in gram]
    n = len(A)
    diag: list[Fraction] = []
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    diag.append(Fraction(0))
                    continue
                A[k] = [a + b for a, b in zip(A[k], A[j])]
                for row in A:
                    row[k] += row[j]
        p = A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
        for i in range(k + 1, n):
            A[k][i] = Fraction(0)
        diag.append(p)
    return diag


def signature(L: GramLattice) -> Signature:
    d = congruence_diagonal(L.gram)
    return Signature(sum(1 for a in d if a > 0), sum(1 for a in d if a < 0))


def determinant(L: GramLattice) -> int:
    return _linalg.determinant(L.gram)


def is_isometry(L: GramLattice, M: Sequence[Sequence[int]]) -> bool:
    """True iff M^T G M == G exactly."""
    M = _linalg.as_matrix(M)
    if len(M) != L.rank or any(len(row) != L.rank for row in M):
        raise ValueError(f"expected a {L.rank}x{L.rank} matrix")
    MT = _linalg.transpose(M)
    return _linalg.mat_mul(_linalg.mat_mul(MT, L.gram), M) == L.gram


def is_hyperbolic(L: GramLattice) -> bool:
    return signature(L) == Signature(1, L.rank - 1)


# -- lattice definition documents ------------------------------------------

def lattice_from_definition(doc: dict[str, Any]) -> GramLattice:
    """Build a lattice from ``{"label": ..., "blocks": [...]}`` or ``{"label": ..., "gram": [[...]]}``."""
    has_blocks = "blocks" in doc
    has_gram = "gram" in doc
    if has_blocks == has_gram:
        raise ValueError("lattice definition needs exactly one of 'blocks' or 'gram'")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise ValueError("lattice label must be a string")
    if has_blocks:
        blocks = doc["blocks"]
        if not isinstance(blocks, list) or not blocks:
            raise ValueError("'blocks' must be a nonempty list of tokens")
        L = direct_sum([parse_block(str(t)) for t in blocks])
    else:
        gram = doc["gram"]
        if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
            raise ValueError("'gram' must be a list of integer rows")
        for row in gram:
            for a in row:
                if isinstance(a, bool) or not isinstance(a, int):
                    raise ValueError(f"non-integer Gram entry {a!r}")
        L = GramLattice(_linalg.as_matrix(gram))
    return GramLattice(L.gram, label=label or L.label)


def lattice_to_definition(L: GramLattice) -> dict[str, Any]:
    return {"label": L.label, "gram": [list(r) for r in L.gram]}


def load_lattice(path: str | Path) -> GramLattice:
    with open(path, encoding="utf-8") as fh:
        return lattice_from_definition(json.load(fh))
