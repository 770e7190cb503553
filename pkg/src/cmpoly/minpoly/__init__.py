"""Generic degree, exact certification and diagnostics of the minimal polynomial."""
from .c0 import C0Witness, c0_witness, skew_basis
from .diagnostics import (
    DivisibilityReport,
    NotInKernel,
    RequiresPositiveDefinite,
    RicciReport,
    RootReport,
    divides,
    ricci_diagnostics,
    root_structure,
    specialized_root_structure,
)
from .solver import (
    CoefficientsNotPolynomial,
    DegreeBoundExceeded,
    MinimalPolynomial,
    PointwiseMinimal,
    RationalRelation,
    VerificationFailed,
    WitnessInvalid,
    default_degree_bound,
    generic_degree,
    minimal_polynomial,
    pointwise_min_poly,
    pointwise_relation,
    rational_relation,
    solve_coefficients,
    verify_exact,
)

__all__ = [
    "C0Witness",
    "CoefficientsNotPolynomial",
    "DegreeBoundExceeded",
    "DivisibilityReport",
    "MinimalPolynomial",
    "NotInKernel",
    "PointwiseMinimal",
    "RationalRelation",
    "RequiresPositiveDefinite",
    "RicciReport",
    "RootReport",
    "VerificationFailed",
    "WitnessInvalid",
    "c0_witness",
    "default_degree_bound",
    "divides",
    "generic_degree",
    "minimal_polynomial",
    "pointwise_min_poly",
    "pointwise_relation",
    "rational_relation",
    "ricci_diagnostics",
    "root_structure",
    "skew_basis",
    "solve_coefficients",
    "specialized_root_structure",
    "verify_exact",
]
