"""Numerical surface calculus: Hirzebruch surfaces, K3 Riemann-Roch, adjunction.

Also holds the decision table for Mori's eight types of K-negative extremal
contractions of a smooth 3-fold Y carrying a K3 fibration f: Y -> P^1 with
-K_Y = f^*O(1).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple, Sequence

__all__ = [
    "HirzebruchModel",
    "hirzebruch_class_arith",
    "Multiplicity",
    "FixedComponentAnalysis",
    "fixed_component_analysis",
    "K3Class",
    "k3_riemann_roch",
    "pullback_self_intersection",
    "adjunction_genus_on_k3",
    "ContractionDescriptor",
    "ContractionVerdict",
    "classify_contraction",
    "MORI_TYPES",
]


@dataclass(frozen=True)
class HirzebruchModel:
    """F_n with classes (a, b) = a C0 + b f; C0^2 = -n, C0.f = 1, f^2 = 0."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    @property
    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((-self.n, 1), (1, 0))

    def intersect(self, x: Sequence[int], y: Sequence[int]) -> int:
        (a1, b1), (a2, b2) = x, y
        return -self.n * a1 * a2 + a1 * b2 + b1 * a2

    @property
    def C0(self) -> tuple[int, int]:
        return (1, 0)

    @property
    def f(self) -> tuple[int, int]:
        return (0, 1)

    @property
    def C1(self) -> tuple[int, int]:
        """Positive section C0 + n f."""
        return (1, self.n)

    @property
    def antiK(self) -> tuple[int, int]:
        """-K = C0 + f + C1 + f = 2 C0 + (n + 2) f (the toric boundary)."""
        return (2, self.n + 2)


def hirzebruch_class_arith(n: int, x: Sequence[int], y: Sequence[int]) -> int:
    return HirzebruchModel(n).intersect(x, y)


class Multiplicity(IntEnum):
    """Multiplicity of C0 in the base locus of |-2K|; AT_LEAST_TWO means >= 2."""

    ZERO = 0
    ONE = 1
    AT_LEAST_TWO = 2

    def __str__(self):
        return ">=2" if self is Multiplicity.AT_LEAST_TWO else str(int(self))


class FixedComponentAnalysis(NamedTuple):
    minus_K_dot_C0: int
    residual_dot_C0: int
    multiplicity_of_C0_in_base_locus: Multiplicity
    smooth_K3_cover_possible: bool


def fixed_component_analysis(n: int) -> FixedComponentAnalysis:
    """How often C0 is forced into the branch curve of a double cover of F_n.

    If -K.C0 < 0, C0 is a fixed component of |-2K|. Removing it once, the
    residual system |-2K - C0| meets C0 in -2(K.C0) - C0^2 = -(n - 4); if
    that is negative too, C0 appears twice and the double cover branched
    along a member of |-2K| is singular over C0. Hence n <= 4.
    """
    F = HirzebruchModel(n)
    minus_k = F.intersect(F.antiK, F.C0)
    residual = 2 * minus_k - F.intersect(F.C0, F.C0)
    if minus_k >= 0:
        mult = Multiplicity.ZERO
    elif residual >= 0:
        mult = Multiplicity.ONE
    else:
        mult = Multiplicity.AT_LEAST_TWO
    return FixedComponentAnalysis(minus_k, residual, mult, mult <= Multiplicity.ONE)


@dataclass(frozen=True)
class K3Class:
    self_intersection: int
    nef_and_big: bool = True

    def __post_init__(self):
        if self.self_intersection % 2:
            raise ValueError(f"L^2 = {self.self_intersection} is odd; the K3 lattice is even")


def k3_riemann_roch(L: K3Class) -> int:
    """h^0(L) = 2 + L^2/2 for nef and big L (higher cohomology vanishes)."""
    if not L.nef_and_big or L.self_intersection <= 0:
        raise ValueError("Riemann-Roch count needs a nef and big class with L^2 > 0")
    return 2 + L.self_intersection // 2


def pullback_self_intersection(M_sq: int, cover_degree: int) -> int:
    """(theta^* M)^2 = deg(theta) * M^2 for a finite morphism theta."""
    if cover_degree < 1:
        raise ValueError("cover degree must be positive")
    return cover_degree * M_sq


def adjunction_genus_on_k3(C_sq: int) -> int:
    """Arithmetic genus of an irreducible curve C on a K3 surface: 2g - 2 = C^2."""
    if C_sq % 2 or C_sq < -2:
        raise ValueError(f"no irreducible curve on a K3 surface has C^2 = {C_sq}")
    return 1 + C_sq // 2


MORI_TYPES = {
    1: "blowup of a smooth curve in a smooth 3-fold",
    2: "blowup of a smooth point",
    3: "blowup of an ordinary double point",
    4: "blowup of a point x^2 + y^2 + z^2 + w^3 = 0",
    5: "contraction of a P^2 with normal bundle O(-2) to a quotient singularity",
    6: "conic bundle over a surface",
    7: "del Pezzo fibration over a curve",
    8: "Y is Fano (contraction to a point)",
}

_DIVISOR_TO_POINT = (
    "E goes to a point, yet -K_Y.C = f^*O(1).C > 0 for each curve C in E, so f|E: E -> P^1 "
    "does not contract any curves; impossible for a surface mapping to a curve"
)

_REASONS = {
    1: (True, "allowed: blowup of a smooth curve"),
    6: (True, "allowed: conic bundle g: Y -> S, flat with rational generic fiber"),
    7: (False, "excluded: replace E by a fiber of the del Pezzo fibration; f restricted to it "
               "does not contract any curves"),
    8: (False, "excluded: -K_Y = f^*O(1) is pulled back from P^1, so -K_Y is not ample"),
}
for _t in (2, 3, 4, 5):
    _REASONS[_t] = (False, "excluded: " + _DIVISOR_TO_POINT)


@dataclass(frozen=True)
class ContractionDescriptor:
    mori_type: int
    antiK_is_fiber_pullback: bool = True
    fibration_base_is_P1: bool = True

    def __post_init__(self):
        if self.mori_type not in MORI_TYPES:
            raise ValueError(f"Mori type must be in 1..8, got {self.mori_type}")


class ContractionVerdict(NamedTuple):
    allowed: bool
    reason: str


def classify_contraction(d: ContractionDescriptor) -> ContractionVerdict:
    """Which extremal contraction types survive when -K_Y = f^*O(1) over P^1."""
    if not (d.antiK_is_fiber_pullback and d.fibration_base_is_P1):
        raise ValueError("only the case -K_Y = f^*O(1) with f: Y -> P^1 is modelled")
    allowed, reason = _REASONS[d.mori_type]
    return ContractionVerdict(allowed, reason)
