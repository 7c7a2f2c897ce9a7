"""Vinberg's algorithm restricted to (-2)-reflections.

Builds the walls of a fundamental chamber of the Weyl group W generated by
reflections in (-2)-roots, one root at a time, starting from a controlling
vector v0 of positive norm. Walls are stored as inward normals: the chamber
is {x : inner(x, alpha) >= 0 for every wall alpha}. After every accepted
wall the chamber is tested for finite hyperbolic volume (all extreme rays of
the polyhedral cone inside the closed light cone); passing that test
certifies that W has finite index in O(L), i.e. L is 2-reflective.

A run that exhausts its budget returns ``NOT_DETECTED``. That is *not* a
proof of non-reflectivity.
"""

from __future__ import annotations

import itertools
import logging
from math import isqrt
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Sequence

from . import _linalg
from ._linalg import Vector
from .cones import RationalCone, double_description
from .lattice import GramLattice, inner, is_hyperbolic, norm, signature
from .roots import LevelSlice, Root, TooManyCandidates

__all__ = [
    "Budget",
    "Verdict",
    "LevelRecord",
    "VinbergResult",
    "AutFinitenessReport",
    "DegenerateChamberError",
    "default_controlling_vector",
    "run_vinberg",
    "finite_volume_check",
    "chamber_rays",
    "aut_finiteness_report",
]

log = logging.getLogger(__name__)

V0_MAX_NORM = 20
V0_COORD_BOUND = 3
V0_MAX_SUPPORT = 4


class Verdict(str, Enum):
    TWO_REFLECTIVE = "TWO_REFLECTIVE"
    NOT_DETECTED = "NOT_DETECTED"


class DegenerateChamberError(ValueError):
    """The wall set cuts out a cone that is not full-dimensional."""


@dataclass(frozen=True)
class Budget:
    max_walls: int = 64
    max_level: int = 20
    max_candidates: int = 10**6

    def __post_init__(self):
        if self.max_walls < 1 or self.max_level < 0 or self.max_candidates < 1:
            raise ValueError(f"invalid budget {self}")


@dataclass
class LevelRecord:
    level: int
    candidates: int
    accepted: list[Vector] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {"level": self.level, "candidates": self.candidates, "accepted": [list(a) for a in self.accepted]}


@dataclass
class VinbergResult:
    lattice: GramLattice
    v0: Vector
    verdict: Verdict
    walls: list[Root]
    transcript: list[LevelRecord]
    budget_spent: dict[str, int]
    budget: Budget
    stop_reason: str = ""

    @property
    def wall_vectors(self) -> list[Vector]:
        return [w.vec for w in self.walls]

    def to_json(self) -> dict[str, Any]:
        return {
            "lattice": {"label": self.lattice.label, "gram": [list(r) for r in self.lattice.gram]},
            "v0": list(self.v0),
            "verdict": self.verdict.value,
            "walls": [list(w) for w in self.wall_vectors],
            "transcript": [r.to_json() for r in self.transcript],
            "budget": {
                "max_walls": self.budget.max_walls,
                "max_level": self.budget.max_level,
                "max_candidates": self.budget.max_candidates,
            },
            "budget_spent": dict(self.budget_spent),
            "stop_reason": self.stop_reason,
        }


def _lex_positive(v: Sequence[int]) -> bool:
    for a in v:
        if a:
            return a > 0
    return False


def default_controlling_vector(L: GramLattice) -> Vector:
    """Small controlling vector: norms 2, 4, ..., 20 are tried in turn.

    Within a norm, vectors with fewer nonzero coordinates win, then the
    lexicographically smallest one whose first nonzero coordinate is
    positive. Coordinates lie in [-3, 3] with at most 4 nonzero entries.
    """
    n = L.rank
    values = [c for c in range(-V0_COORD_BOUND, V0_COORD_BOUND + 1) if c]
    for target in range(2, V0_MAX_NORM + 1, 2):
        for s in range(1, min(n, V0_MAX_SUPPORT) + 1):
            hits = []
            for supp in itertools.combinations(range(n), s):
                for vals in itertools.product(values, repeat=s):
                    if vals[0] < 0:
                        continue
                    v = [0] * n
                    for i, c in zip(supp, vals):
                        v[i] = c
                    if norm(L, v) == target:
                        hits.append(tuple(v))
            if hits:
                return min(hits)
    raise ValueError("no controlling vector found within the default search box")


def _future_isotropic_rays(L: GramLattice, v0: Vector) -> list[Vector] | None:
    """Rank 2 only: the two isotropic rays bounding the future cone, or None if irrational."""
    (a, b), (_, c) = L.gram
    disc = b * b - a * c  # positive for a hyperbolic plane
    s = isqrt(disc)
    if s * s != disc:
        return None
    if a != 0:
        cands = [(-b + s, a), (-b - s, a)]
    else:
        cands = [(1, 0), (-c, 2 * b)]
    rays = []
    for r in cands:
        r = _linalg.primitive(r)
        if inner(L, r, v0) < 0:
            r = tuple(-x for x in r)
        rays.append(r)
    return rays


def chamber_rays(L: GramLattice, walls: Sequence[Root | Sequence[int]], v0: Sequence[int]) -> list[Vector] | None:
    """Extreme rays of the chamber if it passes the finite-volume test, else None.

    The chamber is cut out by the walls inside the future light cone. It
    passes when the cone C = {x : inner(x, a) >= 0 for all walls a,
    inner(x, v0) >= 0} is pointed and full-dimensional and lies in the closed
    light cone. In rank 2 the light cone itself is polyhedral when L is
    isotropic, so C may instead be clipped to it, allowing ideal vertices on
    rational isotropic rays.
    """
    v0 = L.check_vector(v0)
    if norm(L, v0) <= 0:
        raise ValueError("controlling vector must have positive norm")
    roots = [w if isinstance(w, Root) else Root(L, tuple(w)) for w in walls]
    for a, b in itertools.combinations(roots, 2):
        if inner(L, a.vec, b.vec) < 0:
            raise ValueError(f"walls {a.vec} and {b.vec} are obtuse")
    ineqs = [L.gram_times(w.vec) for w in roots] + [L.gram_times(v0)]
    # Fewer than rank independent normals leave a line l in C; l and -l both
    # pair to zero with v0, so l lies in v0-perp and has negative norm.
    if _linalg.rank(ineqs) < L.rank:
        return None
    rays, lineality = double_description(ineqs, L.rank)
    if lineality:
        return None
    if _linalg.rank(rays) < L.rank:
        raise DegenerateChamberError("walls cut out a cone of lower dimension")
    if all(norm(L, r) >= 0 for r in rays):
        return sorted(rays)
    if L.rank != 2:
        return None
    iso = _future_isotropic_rays(L, v0)
    if iso is None:
        return None
    # the future cone is spanned by the two isotropic rays
    future = RationalCone.from_rays(iso, dim=2)
    clipped = RationalCone.from_inequalities(ineqs + list(future.facets), dim=2)
    if not clipped.is_full_dimensional:
        return None
    return list(clipped.rays)


def finite_volume_check(L: GramLattice, walls: Sequence[Root | Sequence[int]], v0: Sequence[int]) -> bool:
    """True iff the chamber of ``walls`` has finite volume; see :func:`chamber_rays`."""
    return chamber_rays(L, walls, v0) is not None


def run_vinberg(
    L: GramLattice,
    v0: Sequence[int] | None = None,
    budget: Budget | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> VinbergResult:
    """Run the (-2)-Vinberg algorithm from ``v0`` (found automatically if omitted).

    ``progress(level, walls_accepted)`` is called after every finished level.
    """
    budget = budget or Budget()
    if not is_hyperbolic(L):
        raise ValueError(f"lattice has signature {tuple(signature(L))}, expected (1, {L.rank - 1})")
    v0 = default_controlling_vector(L) if v0 is None else L.check_vector(v0)
    if norm(L, v0) <= 0:
        raise ValueError("controlling vector must have positive norm")

    slicer = LevelSlice(L, v0)
    walls: list[Root] = []
    wall_covectors: list[Vector] = []
    transcript: list[LevelRecord] = []
    spent = {"walls": 0, "candidates": 0, "levels": 0, "volume_checks": 0}

    def result(verdict: Verdict, reason: str) -> VinbergResult:
        spent["walls"] = len(walls)
        return VinbergResult(L, v0, verdict, list(walls), transcript, dict(spent), budget, reason)

    def certified() -> bool:
        spent["volume_checks"] += 1
        return finite_volume_check(L, walls, v0)

    if certified():
        return result(Verdict.TWO_REFLECTIVE, "certified")

    for level in range(0, budget.max_level + 1):
        remaining = budget.max_candidates - spent["candidates"]
        try:
            candidates = slicer.roots(level, limit=remaining)
        except TooManyCandidates:
            spent["candidates"] = budget.max_candidates
            return result(Verdict.NOT_DETECTED, f"candidate budget exhausted at level {level}")
        spent["candidates"] += len(candidates)
        spent["levels"] = level + 1
        if level == 0:
            # simple roots of the finite root system in v0-perp: lexicographic
            # order is a generic linear order, so take the positive roots in
            # increasing order and keep the ones non-obtuse to all kept so far
            candidates = [a for a in candidates if _lex_positive(a)]
        candidates.sort()
        record = LevelRecord(level, len(candidates))
        transcript.append(record)
        for alpha in candidates:
            g_alpha = L.gram_times(alpha)
            if any(_linalg.dot(g_alpha, w) < 0 for w in wall_covectors):
                continue
            walls.append(Root(L, alpha))
            wall_covectors.append(alpha)
            record.accepted.append(alpha)
            if certified():
                return result(Verdict.TWO_REFLECTIVE, "certified")
            if len(walls) >= budget.max_walls:
                return result(Verdict.NOT_DETECTED, "wall budget exhausted")
        log.debug("level %d: %d candidates, %d walls", level, len(candidates), len(walls))
        if progress is not None:
            progress(level, len(walls))
    return result(Verdict.NOT_DETECTED, "level budget exhausted")


@dataclass(frozen=True)
class AutFinitenessReport:
    finite: bool | None
    summary: str

    def to_json(self) -> dict[str, Any]:
        return {"finite": self.finite, "summary": self.summary}


def aut_finiteness_report(L: GramLattice, result: VinbergResult) -> AutFinitenessReport:
    """What a Vinberg run says about Aut(S) for K3 surfaces S with Pic(S) = L.

    Only a certificate is conclusive; an exhausted budget is reported as
    "not certified", never as "infinite".
    """
    if result.lattice != L:
        raise ValueError("result was computed for a different lattice")
    if result.verdict is Verdict.TWO_REFLECTIVE:
        return AutFinitenessReport(
            True,
            "finite: Aut(S) is finite for any K3 surface S with Pic(S) = L and trivial Galois action "
            f"(Weyl chamber with {len(result.walls)} walls has finite volume)",
        )
    return AutFinitenessReport(
        None,
        f"not certified: no finite-volume chamber found at this budget ({result.stop_reason})",
    )
