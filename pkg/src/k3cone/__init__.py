"""Exact computations on hyperbolic lattices, (-2)-reflections and rational cones."""

from .lattice import (
    GramLattice,
    Isometry,
    Signature,
    determinant,
    direct_sum,
    inner,
    is_isometry,
    make_standard,
    signature,
)
from .roots import Root, enumerate_roots_at_level, reflect, reflection_matrix
from .cones import (
    ChamberComplex,
    ConeFace,
    RationalCone,
    act,
    dual_cone,
    faces,
    fixed_subspace,
    intersect_with_subspace,
    orbit_faces,
    validate_chamber_complex,
)
from .vinberg import Budget, Verdict, VinbergResult, aut_finiteness_report, finite_volume_check, run_vinberg

__version__ = "0.1.0"
