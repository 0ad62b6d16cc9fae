"""Exact symmetry detection, Dupin-cyclide classification and symmetric blends
for rational canal surfaces."""

from .blend import (
    BezierCurve3,
    BezierScalar,
    BlendSurface,
    bernstein_eval,
    forward_difference,
    hermite_blend,
    hermite_radius,
    hermite_spine,
    symmetric_blend,
    symmetric_radius_coeffs,
)
from .canal import (
    CanalSurface,
    Symmetry,
    SymmetryReport,
    characteristic_circle,
    check_regularity,
    conjugation_residual,
    isometries_from_moebius,
    isometry_from_moebius,
    sym_canal,
    verify_conjugation,
)
from .curves import Isometry, SpaceCurve, apply_isometry, frenet_frame, kappa_sq, torsion
from .dupin import (
    ConicInfo,
    DupinCyclide,
    DupinFrame,
    Plane,
    classify_conic,
    dupin_frame,
    dupin_symmetries,
    implicit_eval,
    is_super_symmetric,
    ratfunc_extrema,
)
from .errors import (
    CanalSymError,
    DegenerateBlend,
    DegenerateCircle,
    DegenerateConic,
    DegenerateEnvelope,
    DegenerateInput,
    DivisionByZero,
    ExactnessRequired,
    FrameDegenerate,
    InconsistentConstraint,
    InvalidParams,
    LinearSpine,
    NotADupinConfiguration,
    NotPlanar,
    PoleAtInput,
    PoleInWindow,
    SymmetryIncompatible,
)
from .mesh import TriMesh, export_obj, load_obj, normals, sample_surface
from .moebius import Moebius, moebius_like_factors
from .ratpoly import BiPoly, RatFunc, UniPoly, real_roots

__version__ = "0.1.0"

__all__ = [
    "apply_isometry",
    "bernstein_eval",
    "BezierCurve3",
    "BezierScalar",
    "BiPoly",
    "BlendSurface",
    "CanalSurface",
    "CanalSymError",
    "characteristic_circle",
    "check_regularity",
    "classify_conic",
    "ConicInfo",
    "conjugation_residual",
    "DegenerateBlend",
    "DegenerateCircle",
    "DegenerateConic",
    "DegenerateEnvelope",
    "DegenerateInput",
    "DivisionByZero",
    "dupin_frame",
    "dupin_symmetries",
    "DupinCyclide",
    "DupinFrame",
    "ExactnessRequired",
    "export_obj",
    "forward_difference",
    "FrameDegenerate",
    "frenet_frame",
    "hermite_blend",
    "hermite_radius",
    "hermite_spine",
    "implicit_eval",
    "InconsistentConstraint",
    "InvalidParams",
    "is_super_symmetric",
    "Isometry",
    "isometries_from_moebius",
    "isometry_from_moebius",
    "kappa_sq",
    "LinearSpine",
    "load_obj",
    "Moebius",
    "moebius_like_factors",
    "normals",
    "NotADupinConfiguration",
    "NotPlanar",
    "Plane",
    "PoleAtInput",
    "PoleInWindow",
    "RatFunc",
    "ratfunc_extrema",
    "real_roots",
    "sample_surface",
    "SpaceCurve",
    "sym_canal",
    "symmetric_blend",
    "symmetric_radius_coeffs",
    "Symmetry",
    "SymmetryIncompatible",
    "SymmetryReport",
    "torsion",
    "TriMesh",
    "UniPoly",
    "verify_conjugation",
]
