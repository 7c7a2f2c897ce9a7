"""Rational polyhedral cones in exact double description.

A cone is stored in both descriptions at once:

* generators: extreme ``rays`` (taken modulo the lineality space) plus a
  basis of the ``lineality`` space,
* inequalities: ``facets`` (pairing >= 0, taken modulo the equation space)
  plus a basis of the ``equations`` (the orthogonal complement of the span).

All four lists are in canonical form (primitive integer vectors, reduced
against the canonical RREF basis of the relevant subspace, sorted), so two
cones are equal iff their descriptions are equal. The single geometry kernel
is the Motzkin double description method on integer vectors.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

from . import _linalg
from ._linalg import Matrix, Vector, dot

__all__ = [
    "DEFAULT_DIM_GUARD",
    "RationalCone",
    "ConeFace",
    "ChamberComplex",
    "OrbitPartition",
    "ComplexReport",
    "double_description",
    "dual_cone",
    "faces",
    "fixed_subspace",
    "intersect_with_subspace",
    "act",
    "orbit_faces",
    "validate_chamber_complex",
]

DEFAULT_DIM_GUARD = 12


def dim_guard() -> int:
    value = os.environ.get("K3CONE_DIM_GUARD")
    return int(value) if value else DEFAULT_DIM_GUARD


def _check_guard(dim: int, guard: int | None = None) -> None:
    limit = dim_guard() if guard is None else guard
    if dim > limit:
        raise ValueError(
            f"ambient dimension {dim} exceeds the guard {limit} (set K3CONE_DIM_GUARD to override)"
        )


def double_description(inequalities: Iterable[Sequence[int]], dim: int) -> tuple[list[Vector], list[Vector]]:
    """Generators of {x in Q^dim : a.x >= 0 for all a}.

    Returns ``(rays, lineality)``: the extreme rays of the cone modulo its
    lineality space, and a basis of the lineality space. Neither list is in
    canonical form yet; see :func:`_canonical_generators`.
    """
    lin: list[Vector] = list(_linalg.identity(dim))
    rays: list[tuple[Vector, int]] = []  # (vector, bitmask of tight inequalities)
    bit = 0
    for a in inequalities:
        a = tuple(a)
        if len(a) != dim:
            raise ValueError("inequality of the wrong length")
        if not any(a):
            continue
        mask = 1 << bit
        bit += 1
        vals = [dot(a, l) for l in lin]
        j = next((k for k, v in enumerate(vals) if v != 0), None)
        if j is not None:
            # a line of the current cone is cut in half: keep the good half as a ray
            l = lin[j] if vals[j] > 0 else tuple(-x for x in lin[j])
            al = abs(vals[j])
            new_lin = []
            for k, lk in enumerate(lin):
                if k != j:
                    new_lin.append(_linalg.primitive(tuple(al * x - vals[k] * y for x, y in zip(lk, l))))
            new_rays = []
            for r, m in rays:
                ar = dot(a, r)
                r2 = _linalg.primitive(tuple(al * x - ar * y for x, y in zip(r, l)))
                new_rays.append((r2, m | mask))
            new_rays.append((l, mask - 1))  # tight on every earlier inequality
            lin = new_lin
            rays = new_rays
            continue
        pos, neg, new_rays = [], [], []
        for r, m in rays:
            v = dot(a, r)
            if v > 0:
                pos.append((r, m, v))
                new_rays.append((r, m))
            elif v < 0:
                neg.append((r, m, v))
            else:
                new_rays.append((r, m | mask))
        if neg:
            masks = [m for _, m in rays]
            need = dim - len(lin) - 2
            for rp, mp, vp in pos:
                for rn, mn, vn in neg:
                    common = mp & mn
                    if need > 0 and common.bit_count() < need:
                        continue
                    if any((mk & common) == common and mk != mp and mk != mn for mk in masks):
                        continue
                    r = _linalg.primitive(tuple(vp * x - vn * y for x, y in zip(rn, rp)))
                    new_rays.append((r, common | mask))
        rays = new_rays
    return [r for r, _ in rays], lin


def _canonical_generators(rays: Iterable[Sequence[int]], lineality: Iterable[Sequence[int]]) -> tuple[Matrix, Matrix]:
    lin = _linalg.canonical_subspace_basis(list(lineality))
    reducer = _linalg.SubspaceReducer(lin)
    out = set()
    for r in rays:
        v = reducer.reduce(r)
        if any(v):
            out.add(v)
    return tuple(sorted(out)), lin


@dataclass(frozen=True)
class RationalCone:
    """A rational polyhedral cone in canonical double description.

    Build with :meth:`from_rays` or :meth:`from_inequalities`; the raw
    constructor trusts its input.
    """

    ambient_dim: int
    rays: Matrix
    facets: Matrix
    lineality: Matrix = ()
    equations: Matrix = ()

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence[int]], dim: int | None = None,
                  lineality: Iterable[Sequence[int]] = (), guard: int | None = None) -> "RationalCone":
        rays = [tuple(int(a) for a in r) for r in rays]
        lineality = [tuple(int(a) for a in r) for r in lineality]
        dim = _infer_dim(dim, rays, lineality)
        _check_guard(dim, guard)
        gens = rays + lineality + [tuple(-a for a in l) for l in lineality]
        H, E = double_description(gens, dim)
        facets, equations = _canonical_generators(H, E)
        ineqs = list(facets) + list(equations) + [tuple(-a for a in e) for e in equations]
        R, Lin = double_description(ineqs, dim)
        rays_c, lin_c = _canonical_generators(R, Lin)
        return cls(dim, rays_c, facets, lin_c, equations)

    @classmethod
    def from_inequalities(cls, inequalities: Iterable[Sequence[int]], dim: int | None = None,
                          equations: Iterable[Sequence[int]] = (), guard: int | None = None) -> "RationalCone":
        ineqs = [tuple(int(a) for a in r) for r in inequalities]
        eqs = [tuple(int(a) for a in r) for r in equations]
        dim = _infer_dim(dim, ineqs, eqs)
        _check_guard(dim, guard)
        R, Lin = double_description(ineqs + eqs + [tuple(-a for a in e) for e in eqs], dim)
        rays, lineality = _canonical_generators(R, Lin)
        gens = list(rays) + list(lineality) + [tuple(-a for a in l) for l in lineality]
        H, E = double_description(gens, dim)
        facets, equations_c = _canonical_generators(H, E)
        return cls(dim, rays, facets, lineality, equations_c)

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    def generators(self) -> list[Vector]:
        """Rays plus both signs of every lineality basis vector."""
        return list(self.rays) + list(self.lineality) + [tuple(-a for a in l) for l in self.lineality]

    def inequalities(self) -> list[Vector]:
        return list(self.facets) + list(self.equations) + [tuple(-a for a in e) for e in self.equations]

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return all(dot(f, x) >= 0 for f in self.facets) and all(dot(e, x) == 0 for e in self.equations)

    def interior_point(self) -> Vector:
        """A point of the relative interior (sum of the extreme rays)."""
        return tuple(sum(col) for col in zip(*self.rays)) if self.rays else tuple([0] * self.ambient_dim)

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "ambient_dim": self.ambient_dim,
            "rays": [list(r) for r in self.rays],
            "facets": [list(f) for f in self.facets],
        }
        if self.lineality:
            doc["lineality"] = [list(r) for r in self.lineality]
        if self.equations:
            doc["equations"] = [list(r) for r in self.equations]
        return doc

    @classmethod
    def from_json(cls, doc: dict[str, Any], guard: int | None = None) -> "RationalCone":
        """Read ``{ambient_dim, rays, facets?}``; the ray description is authoritative.

        If facets are supplied they must describe the same cone.
        """
        dim = int(doc["ambient_dim"])
        cone = cls.from_rays(doc.get("rays", []), dim=dim, lineality=doc.get("lineality", []), guard=guard)
        if "facets" in doc:
            other = cls.from_inequalities(doc["facets"], dim=dim, equations=doc.get("equations", []), guard=guard)
            if other != cone:
                raise ValueError("rays and facets describe different cones")
        return cone


def _infer_dim(dim, *lists) -> int:
    for vecs in lists:
        for v in vecs:
            if dim is None:
                dim = len(v)
            elif len(v) != dim:
                raise ValueError("vectors of different lengths")
    if dim is None or dim < 1:
        raise ValueError("cannot determine the ambient dimension")
    return dim


def dual_cone(rays: Iterable[Sequence[int]], dim: int | None = None, guard: int | None = None) -> RationalCone:
    """The dual {y : y.r >= 0 for every r in rays}."""
    rays = [tuple(r) for r in rays]
    if any(not any(r) for r in rays):
        raise ValueError("zero vector among the rays")
    return RationalCone.from_inequalities(rays, dim=dim, guard=guard)


@dataclass(frozen=True)
class ConeFace:
    cone: RationalCone = field(repr=False)
    active_facets: frozenset[int]
    dim: int

    def rays(self) -> list[Vector]:
        act_ = [self.cone.facets[i] for i in self.active_facets]
        return [r for r in self.cone.rays if all(dot(f, r) == 0 for f in act_)]

    def as_cone(self) -> RationalCone:
        return RationalCone.from_rays(self.rays(), dim=self.cone.ambient_dim,
                                      lineality=self.cone.lineality, guard=self.cone.ambient_dim)


def _face_data(C: RationalCone, active: Iterable[int]) -> tuple[frozenset[int], int]:
    act_ = list(active)
    face_rays = [r for r in C.rays if all(dot(C.facets[i], r) == 0 for i in act_)]
    closure = frozenset(i for i, f in enumerate(C.facets) if all(dot(f, r) == 0 for r in face_rays))
    d = _linalg.rank(face_rays + list(C.lineality))
    return closure, d


def faces(C: RationalCone, codim: int) -> list[ConeFace]:
    """All faces of codimension ``codim`` (relative to dim C), sorted by active set."""
    if codim < 0 or codim > C.dim:
        raise ValueError(f"codimension {codim} out of range for a cone of dimension {C.dim}")
    top, d = _face_data(C, ())
    level = {top}
    for k in range(codim):
        nxt = set()
        for act_ in level:
            for i in range(len(C.facets)):
                if i in act_:
                    continue
                closure, fd = _face_data(C, act_ | {i})
                if fd == C.dim - k - 1:
                    nxt.add(closure)
        level = nxt
    return [ConeFace(C, a, C.dim - codim) for a in sorted(level, key=sorted)]


def fixed_subspace(generators: Sequence[Sequence[Sequence[int]]]) -> Matrix:
    """Hermite-reduced Z-basis of {x : M x = x for every generator M}."""
    mats = [_matrix_of(g) for g in generators]
    if not mats:
        raise ValueError("need at least one generator to fix the dimension")
    n = len(mats[0])
    rows = []
    for M in mats:
        if len(M) != n or any(len(r) != n for r in M):
            raise ValueError("generators must be square matrices of equal size")
        rows.extend(tuple(M[i][j] - int(i == j) for j in range(n)) for i in range(n))
    return _linalg.integer_kernel(rows, n)


def _matrix_of(g) -> Matrix:
    return _linalg.as_matrix(getattr(g, "matrix", g))


def intersect_with_subspace(C: RationalCone, basis: Sequence[Sequence[int]], guard: int | None = None) -> RationalCone:
    """C intersected with span(basis), in coordinates with respect to ``basis``."""
    basis = [tuple(b) for b in basis]
    if not basis:
        raise ValueError("empty basis")
    if any(len(b) != C.ambient_dim for b in basis):
        raise ValueError("basis vectors must live in the cone's ambient space")
    if _linalg.rank(basis) < len(basis):
        raise ValueError("basis vectors are linearly dependent")
    rows = [tuple(dot(f, b) for b in basis) for f in C.inequalities()]
    return RationalCone.from_inequalities(rows, dim=len(basis), guard=guard)


def act(M: Sequence[Sequence[int]], C: RationalCone, guard: int | None = None) -> RationalCone:
    """Image of C under an invertible integer matrix."""
    M = _matrix_of(M)
    if len(M) != C.ambient_dim:
        raise ValueError("dimension mismatch")
    if _linalg.determinant(M) == 0:
        raise ValueError("matrix is singular")
    return RationalCone.from_rays(
        [_linalg.mat_vec(M, r) for r in C.rays],
        dim=C.ambient_dim,
        lineality=[_linalg.mat_vec(M, l) for l in C.lineality],
        guard=guard,
    )


@dataclass
class OrbitPartition:
    """Orbit classes of the input items (indices into the input list)."""

    classes: list[list[int]]
    representatives: list[int]
    complete: list[bool]

    def __len__(self):
        return len(self.classes)


def orbit_faces(items: Sequence[RationalCone | ConeFace], generators: Sequence[Sequence[Sequence[int]]],
                word_budget: int, include_inverses: bool = True) -> OrbitPartition:
    """Partition ``items`` into orbits of the group generated by ``generators``.

    Each item's orbit is explored breadth first by words of length at most
    ``word_budget``. A class is flagged complete when every BFS in it closed
    up before running out of budget; an incomplete class may still merge
    with another one under longer words.
    """
    if word_budget < 1:
        raise ValueError("word budget must be positive")
    cones = [it.as_cone() if isinstance(it, ConeFace) else it for it in items]
    if not cones:
        return OrbitPartition([], [], [])
    dim = cones[0].ambient_dim
    if any(c.ambient_dim != dim for c in cones):
        raise ValueError("items live in different ambient dimensions")
    mats = [_matrix_of(g) for g in generators]
    for M in mats:
        if len(M) != dim or any(len(r) != dim for r in M):
            raise ValueError("generator size does not match the ambient dimension")
        if _linalg.determinant(M) == 0:
            raise ValueError("generator is not invertible")
    if include_inverses:
        inverses = [_linalg.positive_inverse_multiple(M) for M in mats]
        mats = mats + [Mi for Mi in inverses if Mi not in mats]

    index = {}
    for i, c in enumerate(cones):
        index.setdefault(c, i)
    parent = list(range(len(cones)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    closed = [True] * len(cones)
    for i, c in enumerate(cones):
        if index[c] != i:
            parent[find(i)] = find(index[c])
        seen = {c}
        frontier = deque([c])
        depth = 0
        while frontier and depth < word_budget:
            depth += 1
            nxt = deque()
            for cur in frontier:
                for M in mats:
                    img = act(M, cur, guard=dim)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        if frontier:
            # unexplored images remain; check whether applying one more step finds anything new
            grows = any(act(M, cur, guard=dim) not in seen for cur in frontier for M in mats)
            closed[i] = not grows
        for img in seen:
            j = index.get(img)
            if j is not None:
                parent[find(j)] = find(i)

    groups: dict[int, list[int]] = {}
    for i in range(len(cones)):
        groups.setdefault(find(i), []).append(i)
    classes = sorted(groups.values())
    return OrbitPartition(
        classes=classes,
        representatives=[cl[0] for cl in classes],
        complete=[all(closed[i] for i in cl) for cl in classes],
    )


# -- chamber complexes ------------------------------------------------------

@dataclass(frozen=True)
class ChamberComplex:
    """A finite list of chambers sharing a ray, with declared adjacencies."""

    shared_ray: Vector
    chambers: tuple[RationalCone, ...]
    adjacency: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_json(cls, doc: dict[str, Any], guard: int | None = None) -> "ChamberComplex":
        return cls(
            shared_ray=tuple(int(a) for a in doc["shared_ray"]),
            chambers=tuple(RationalCone.from_json(c, guard=guard) for c in doc["chambers"]),
            adjacency=tuple((int(i), int(j)) for i, j in doc.get("adjacency", [])),
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "shared_ray": list(self.shared_ray),
            "chambers": [c.to_json() for c in self.chambers],
            "adjacency": [list(p) for p in self.adjacency],
        }


@dataclass
class CheckOutcome:
    passed: bool
    witnesses: list[dict[str, Any]]


@dataclass
class ComplexReport:
    shared_ray: CheckOutcome
    disjoint_interiors: CheckOutcome
    adjacency: CheckOutcome

    @property
    def passed(self) -> bool:
        return self.shared_ray.passed and self.disjoint_interiors.passed and self.adjacency.passed

    def to_json(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": {
                name: {"passed": c.passed, "witnesses": c.witnesses}
                for name, c in (("shared_ray", self.shared_ray),
                                ("disjoint_interiors", self.disjoint_interiors),
                                ("adjacency", self.adjacency))
            },
        }


def _meet(A: RationalCone, B: RationalCone) -> RationalCone:
    return RationalCone.from_inequalities(A.inequalities() + B.inequalities(), dim=A.ambient_dim,
                                          guard=A.ambient_dim)


def validate_chamber_complex(X: ChamberComplex) -> ComplexReport:
    """Check ray membership, pairwise interior-disjointness and declared adjacencies."""
    missing = [{"chamber": i} for i, c in enumerate(X.chambers) if not c.contains(X.shared_ray)]
    overlaps = []
    for i, j in combinations(range(len(X.chambers)), 2):
        A, B = X.chambers[i], X.chambers[j]
        if A.dim < A.ambient_dim or B.dim < B.ambient_dim:
            overlaps.append({"chambers": [i, j], "reason": "chamber is not full-dimensional"})
            continue
        meet = _meet(A, B)
        if meet.is_full_dimensional:
            overlaps.append({"chambers": [i, j], "point": list(meet.interior_point())})
    bad_adj = []
    for i, j in X.adjacency:
        if not (0 <= i < len(X.chambers) and 0 <= j < len(X.chambers)) or i == j:
            bad_adj.append({"chambers": [i, j], "reason": "invalid chamber index"})
            continue
        A, B = X.chambers[i], X.chambers[j]
        meet = _meet(A, B)
        if meet.dim != A.ambient_dim - 1:
            bad_adj.append({"chambers": [i, j], "reason": f"common part has dimension {meet.dim}"})
            continue
        facet_a = {f.as_cone() for f in faces(A, 1)} if A.dim >= 1 else set()
        facet_b = {f.as_cone() for f in faces(B, 1)} if B.dim >= 1 else set()
        if meet not in facet_a or meet not in facet_b:
            bad_adj.append({"chambers": [i, j], "reason": "common part is not a full facet of both"})
    return ComplexReport(
        shared_ray=CheckOutcome(not missing, missing),
        disjoint_interiors=CheckOutcome(not overlaps, overlaps),
        adjacency=CheckOutcome(not bad_adj, bad_adj),
    )


def common_facet(A: RationalCone, B: RationalCone) -> RationalCone:
    return _meet(A, B)
