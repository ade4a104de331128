"""Numerical differential geometry of convex curves and their wavefronts.

Closed convex curves in the Euclidean plane, on the unit sphere, and in
the hyperbolic plane (hyperboloid model), with equidistant-front
propagation and numerical verification of the classical mean-curvature
attainment, Sturm-Hurwitz, Steiner, tennis-ball, and torsion statements
-- plus the hyperbolic rounded-semicircle counterexample.
"""

from ._kernels import BACKEND as kernel_backend
from .curves import (
    EUCLIDEAN,
    HYPERBOLIC,
    SPHERICAL,
    CrossingReport,
    CurvatureProfile,
    SampledCurve,
    average_curvature,
    count_mean_crossings,
    curvature_profile,
    defect_value,
    radius_profile,
)
from .errors import (
    AllBelowToleranceError,
    AtCuspError,
    BadParametrizationError,
    CothDomainError,
    DegenerateProfileError,
    DegenerateSamplingError,
    FrenetBreakdownError,
    InvalidSpecError,
    NonConvexError,
    NotBisectingError,
    NotContainedError,
    NotHorocyclicallyConvexError,
    NotInHemisphereError,
    OvalfrontError,
    SpecFormatError,
)
from .harmonics import (
    Spectrum,
    SturmHurwitzReport,
    count_sign_changes,
    first_nontrivial_harmonic,
    spectrum,
    verify_sturm_hurwitz,
)
from .hyperbolic import (
    HyperbolicCurve,
    HyperbolicFront,
    RoundedSemicircleSpec,
    build_rounded_semicircle,
    check_horocyclic_convexity,
    classify_curvature,
    collapse_front,
    counterexample_threshold,
    counterexample_verdict,
    gauss_bonnet_residual_h,
    geodesic_curvature_h,
    hyperbolic_area_green,
    hyperbolic_circle,
    hyperbolic_curve_from_points,
    mean_attainment_front_check_h,
    perturbed_hyperbolic_circle,
    propagate_hyperbolic,
    semicircle_mean_gap,
    semicircle_reference,
)
from .specio import build_curve, load_curve_spec, validate_curve_spec
from .sphere import (
    SphereCurve,
    SphereFront,
    check_regular_embedded,
    equatorial_front,
    gauss_bonnet_residual,
    geodesic_curvature,
    mean_attainment_front_check,
    perturbed_sphere_circle,
    propagate_sphere,
    sphere_circle,
    sphere_curve_from_points,
    spherical_area_fan,
    spherical_area_green,
    spherical_diameter,
    tennis_ball_check,
    tennis_seam,
    total_torsion,
)
from .support import (
    SupportOval,
    build_oval,
    closure_residual,
    ellipse_oval,
    ellipse_support_coeffs,
    euclidean_curve_from_points,
    oval_from_support,
    unit_circle,
)
from .wavefront import (
    Front,
    critical_front,
    enclosure_inequality_check,
    front_curvature,
    isoperimetric_defect,
    propagate,
    propagation_lemma_check,
    steiner_check,
    tangent_winding,
)

__version__ = "0.1.0"

__all__ = [
    "AllBelowToleranceError",
    "AtCuspError",
    "BadParametrizationError",
    "CothDomainError",
    "CrossingReport",
    "CurvatureProfile",
    "DegenerateProfileError",
    "DegenerateSamplingError",
    "EUCLIDEAN",
    "FrenetBreakdownError",
    "Front",
    "HYPERBOLIC",
    "HyperbolicCurve",
    "HyperbolicFront",
    "InvalidSpecError",
    "NonConvexError",
    "NotBisectingError",
    "NotContainedError",
    "NotHorocyclicallyConvexError",
    "NotInHemisphereError",
    "OvalfrontError",
    "RoundedSemicircleSpec",
    "SPHERICAL",
    "SampledCurve",
    "SpecFormatError",
    "Spectrum",
    "SphereCurve",
    "SphereFront",
    "SturmHurwitzReport",
    "SupportOval",
    "average_curvature",
    "build_curve",
    "build_oval",
    "build_rounded_semicircle",
    "check_horocyclic_convexity",
    "classify_curvature",
    "check_regular_embedded",
    "closure_residual",
    "collapse_front",
    "count_mean_crossings",
    "count_sign_changes",
    "counterexample_threshold",
    "counterexample_verdict",
    "critical_front",
    "curvature_profile",
    "defect_value",
    "ellipse_oval",
    "ellipse_support_coeffs",
    "enclosure_inequality_check",
    "equatorial_front",
    "euclidean_curve_from_points",
    "first_nontrivial_harmonic",
    "front_curvature",
    "gauss_bonnet_residual",
    "gauss_bonnet_residual_h",
    "geodesic_curvature",
    "geodesic_curvature_h",
    "hyperbolic_area_green",
    "hyperbolic_circle",
    "hyperbolic_curve_from_points",
    "isoperimetric_defect",
    "kernel_backend",
    "load_curve_spec",
    "mean_attainment_front_check",
    "mean_attainment_front_check_h",
    "oval_from_support",
    "perturbed_hyperbolic_circle",
    "perturbed_sphere_circle",
    "propagate",
    "propagate_hyperbolic",
    "propagate_sphere",
    "propagation_lemma_check",
    "radius_profile",
    "semicircle_mean_gap",
    "semicircle_reference",
    "spectrum",
    "sphere_circle",
    "sphere_curve_from_points",
    "spherical_area_fan",
    "spherical_area_green",
    "spherical_diameter",
    "steiner_check",
    "tangent_winding",
    "tennis_ball_check",
    "tennis_seam",
    "total_torsion",
    "unit_circle",
    "validate_curve_spec",
    "verify_sturm_hurwitz",
]
