"""Exact curvature data of left-invariant metrics on Lie groups."""
from .curvature import (
    ConnectionMap,
    CurvatureTensor,
    DegenerateMetric,
    curvature_derivatives,
    jet_at,
    koszul,
    symmetrized_jet,
)
from .inttensor import IntTensor
from .presentation import (
    CATALOG_DOC,
    InvalidPresentation,
    LiePresentation,
    catalog,
    from_json,
    load_space_file,
    resolve_space,
)

__all__ = [
    "CATALOG_DOC", "ConnectionMap", "CurvatureTensor", "DegenerateMetric", "IntTensor",
    "InvalidPresentation", "LiePresentation", "catalog", "curvature_derivatives", "from_json",
    "jet_at", "koszul", "load_space_file", "resolve_space", "symmetrized_jet",
]
