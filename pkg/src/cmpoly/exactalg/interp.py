"""Reconstruction of homogeneous polynomials from exact point values."""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .linalg import rref, solve_affine
from .poly import MultiPoly, UsageError, iter_monomial_values, monomials_of_degree


class InsufficientSamples(ValueError):
    pass


class NotPolynomialOfDegree(ValueError):
    """The samples do not lie on any homogeneous polynomial of the given degree."""

    def __init__(self, message: str, residual: list[Fraction], fitted: MultiPoly):
        super().__init__(message)
        self.residual = residual
        self.fitted = fitted


def required_samples(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, degree)


def sample_points(rng: np.random.Generator, nvars: int, count: int, radius: int = 5) -> list[list[Fraction]]:
    """Seeded integer points from {-radius..radius}^n, excluding the origin."""
    pts = []
    while len(pts) < count:
        p = rng.integers(-radius, radius + 1, size=nvars)
        if not p.any():
            continue
        pts.append([Fraction(int(x)) for x in p])
    return pts


def interpolate_homogeneous(degree: int, nvars: int,
                            samples: Sequence[tuple[Sequence[Fraction], Fraction]]) -> MultiPoly:
    if degree < 0:
        raise UsageError("degree must be non-negative")
    points = [tuple(Fraction(x) for x in p) for p, _ in samples]
    if len(set(points)) != len(points):
        raise UsageError("sample points must be pairwise distinct")
    for p in points:
        if len(p) != nvars:
            raise UsageError("sample point has the wrong length")
    values = [Fraction(v) for _, v in samples]
    monos = monomials_of_degree(nvars, degree)
    if len(samples) < len(monos):
        raise InsufficientSamples(f"need {len(monos)} samples for degree {degree}, got {len(samples)}")
    rows = [list(iter_monomial_values(p, monos)) for p in points]

    # independent rows of the monomial matrix are the pivots of its transpose
    _, indep = rref([list(col) for col in zip(*rows)])
    if len(indep) < len(monos):
        raise InsufficientSamples(
            f"monomial matrix has rank {len(indep)} < {len(monos)}; resample"
        )
    sol = solve_affine([rows[i] for i in indep], [values[i] for i in indep])
    assert sol is not None and not sol[1]
    coeffs = sol[0]
    fitted = MultiPoly(nvars, dict(zip(monos, coeffs)))
    residual = [v - sum((a * b for a, b in zip(r, coeffs)), Fraction(0)) for r, v in zip(rows, values)]
    if any(residual):
        raise NotPolynomialOfDegree(
            f"samples are not values of a homogeneous polynomial of degree {degree}",
            residual, fitted,
        )
    return fitted
