"""Exact computation of finite monodromy groups and semi-stability degrees
for the elliptic family y^2 = x^3 + s, Minkowski bounds for GL_n(Q),
p-adic monodromy coverings of the parameter space, and Galois closures of
finite covers as permutation actions.
"""

__version__ = "0.1.0"

from .cover import CoverReport, PadicBall, enumerate_cover, locate
from .curves import (
    CurveInvariants,
    WeierstrassCurve,
    compute_invariants,
    family_curve,
    minimalize_at_p,
    reduction_class_at_p,
)
from .galois import (
    FiniteCover,
    GaloisClosure,
    PermutationGroup,
    Subgroup,
    classify_point,
    enumerate_subgroups,
    fixed_point_check,
    galois_closure,
)
from .minkowski import (
    MinkowskiReport,
    asymptotic_ratio_diagnostic,
    gl_cardinality,
    minkowski_bound,
    minkowski_exponent,
)
from .monodromy import (
    DegreeReport,
    LocalMonodromyResult,
    MonodromyGroup,
    phi_family_at_2,
    phi_family_at_3,
    phi_general_curve,
    phi_tame,
    semistability_degree,
)

__all__ = [
    "CoverReport",
    "CurveInvariants",
    "DegreeReport",
    "FiniteCover",
    "GaloisClosure",
    "LocalMonodromyResult",
    "MinkowskiReport",
    "MonodromyGroup",
    "PadicBall",
    "PermutationGroup",
    "Subgroup",
    "WeierstrassCurve",
    "asymptotic_ratio_diagnostic",
    "classify_point",
    "compute_invariants",
    "enumerate_cover",
    "enumerate_subgroups",
    "family_curve",
    "fixed_point_check",
    "galois_closure",
    "gl_cardinality",
    "locate",
    "minimalize_at_p",
    "minkowski_bound",
    "minkowski_exponent",
    "phi_family_at_2",
    "phi_family_at_3",
    "phi_general_curve",
    "phi_tame",
    "reduction_class_at_p",
    "semistability_degree",
]
