"""Exact arithmetic substrate: rationals, sparse polynomials, exact linear algebra."""
from .bareiss import bareiss_echelon, bareiss_nullspace
from .interp import (
    InsufficientSamples,
    NotPolynomialOfDegree,
    interpolate_homogeneous,
    required_samples,
    sample_points,
)
from .linalg import QMatrix, q_nullspace, rank, rref, solve_affine
from .poly import MultiPoly, NotExactlyDivisible, UsageError, poly_arith, poly_eval, variables
from .polylambda import PolyLambda, polylambda_divmod
from .polymatrix import PolyMatrix
from .ratfunc import RationalFunction
from .rational import format_rational, parse_vector
from .unipoly import RootProfile, UniPoly, gcd, sturm_root_profile, unipoly_divmod

__all__ = [
    "InsufficientSamples", "MultiPoly", "NotExactlyDivisible", "NotPolynomialOfDegree",
    "PolyLambda", "PolyMatrix", "QMatrix", "RationalFunction", "RootProfile", "UniPoly",
    "UsageError", "bareiss_echelon", "bareiss_nullspace", "format_rational", "gcd",
    "interpolate_homogeneous", "parse_vector", "poly_arith", "poly_eval", "polylambda_divmod",
    "q_nullspace", "rank", "required_samples", "rref", "sample_points", "solve_affine",
    "sturm_root_profile", "unipoly_divmod", "variables",
]
