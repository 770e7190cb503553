"""Minimal polynomial of a jet sequence.

The degree is detected by sampling (Schwartz-Zippel style) and the result is
then certified exactly: the relation is checked as a polynomial identity and
minimality by an exact independence witness.  A returned verified
:class:`MinimalPolynomial` is therefore correct regardless of the seed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..exactalg.bareiss import bareiss_nullspace
from ..exactalg.interp import (
    InsufficientSamples,
    NotPolynomialOfDegree,
    interpolate_homogeneous,
    required_samples,
    sample_points,
)
from ..exactalg.linalg import q_nullspace, rank
from ..exactalg.poly import MultiPoly, UsageError
from ..exactalg.polylambda import PolyLambda
from ..exactalg.polymatrix import PolyMatrix
from ..exactalg.ratfunc import RationalFunction
from ..exactalg.unipoly import UniPoly
from ..jets import JetOrderUnavailable, JetSequence, check_admissible

SAMPLE_RADIUS = 9


class DegreeBoundExceeded(RuntimeError):
    def __init__(self, bound: int):
        super().__init__(f"no dependence among the jets up to order {bound}")
        self.bound = bound


class CoefficientsNotPolynomial(ValueError):
    def __init__(self, index: int, residual: list[Fraction], fitted: MultiPoly):
        super().__init__(f"coefficient a_{index} is not a homogeneous polynomial of degree {index}")
        self.index = index
        self.residual = residual
        self.fitted = fitted


class VerificationFailed(ValueError):
    def __init__(self, message: str, residual: PolyMatrix | None = None):
        super().__init__(message)
        self.residual = residual


class WitnessInvalid(VerificationFailed):
    pass


@dataclass(frozen=True)
class MinimalPolynomial:
    P: PolyLambda
    witness: tuple[Fraction, ...]
    verified: bool
    seed: int | None = None
    samples: int = 0

    @property
    def k(self) -> int:
        return self.P.degree

    @property
    def coefficients(self) -> list[MultiPoly]:
        """``a_1, ..., a_k``."""
        return list(self.P.coeffs[1:])

    def specialize(self, X: Sequence[Fraction]) -> UniPoly:
        return self.P.specialize(X)


@dataclass(frozen=True)
class PointwiseMinimal:
    X: tuple[Fraction, ...]
    kX: int
    P: UniPoly


@dataclass
class RationalRelation:
    k: int
    coefficients: list[RationalFunction]  # a_1..a_k
    verified: bool = False

    def is_polynomial(self) -> bool:
        return all(a.try_polynomial() is not None for a in self.coefficients)


def default_degree_bound(n: int) -> int:
    return n * (n + 1) // 2


def _flat(m: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    return [x for row in m for x in row]


def _columns_to_rows(cols: list[list[Fraction]]) -> list[list[Fraction]]:
    return [list(r) for r in zip(*cols)]


def pointwise_relation(seq: JetSequence, X: Sequence[Fraction], limit: int) -> tuple[int, list[Fraction]]:
    """Smallest j with ``R^0(X)..R^j(X)`` dependent, and ``a_1..a_j`` of the monic relation.

    Raises DegreeBoundExceeded when the family is still independent at order ``limit``.
    """
    cols: list[list[Fraction]] = []
    for j in range(limit + 1):
        try:
            cols.append(_flat(seq.jet_at(j, X)))
        except JetOrderUnavailable:
            raise DegreeBoundExceeded(j - 1) from None
        null = q_nullspace(_columns_to_rows(cols), len(cols))
        if null:
            # first j columns are independent, so the nullspace is one-dimensional
            v = null[0]
            lead = v[j]
            # ascending v[0..j] -> a_i multiplies R^{j-i}
            return j, [v[j - i] / lead for i in range(1, j + 1)]
    raise DegreeBoundExceeded(limit)


def pointwise_min_poly(seq: JetSequence, X: Sequence[Fraction], limit: int | None = None) -> PointwiseMinimal:
    X = tuple(Fraction(x) for x in X)
    if len(X) != seq.dim:
        raise UsageError(f"direction has length {len(X)}, expected {seq.dim}")
    if limit is None:
        limit = seq.dim * seq.dim
    kX, a = pointwise_relation(seq, X, limit)
    return PointwiseMinimal(X, kX, UniPoly([*reversed(a), Fraction(1)]))


def _independent(seq: JetSequence, X: Sequence[Fraction], k: int) -> bool:
    if k == 0:
        return True
    cols = [_flat(seq.jet_at(j, X)) for j in range(k)]
    return rank(_columns_to_rows(cols)) == k


def generic_degree(seq: JetSequence, max_k: int | None = None, seed: int = 42,
                   samples: int = 64) -> tuple[int, tuple[Fraction, ...]]:
    """Largest pointwise degree over seeded samples, with a point attaining it."""
    if samples < 1:
        raise UsageError("samples must be >= 1")
    if max_k is None:
        max_k = default_degree_bound(seq.dim)
    rng = np.random.default_rng(seed)
    best_k, witness = -1, None
    for X in sample_points(rng, seq.dim, samples, SAMPLE_RADIUS):
        kX, _ = pointwise_relation(seq, X, max_k)
        if kX > best_k:
            best_k, witness = kX, tuple(X)
    return best_k, witness


def _points_in_U(seq: JetSequence, k: int, count: int, rng: np.random.Generator,
                 seen: set | None = None):
    """Distinct sample points with k(X) = k, paired with their pointwise coefficients."""
    seen = set() if seen is None else seen
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 50 * count + 100:
            raise RuntimeError("could not find enough points with maximal pointwise degree")
        X = tuple(sample_points(rng, seq.dim, 1, SAMPLE_RADIUS)[0])
        if X in seen:
            continue
        seen.add(X)
        kX, a = pointwise_relation(seq, X, k)
        if kX == k:
            out.append((X, a))
    return out


def solve_coefficients(seq: JetSequence, k: int, seed: int = 42, samples: int = 64) -> list[MultiPoly]:
    """Reconstruct ``a_1..a_k`` as homogeneous polynomials from pointwise relations.

    Raises CoefficientsNotPolynomial (carrying the exact residual) when the
    pointwise values of some a_i do not lie on a polynomial of degree i.
    """
    n = seq.dim
    if k == 0:
        return []
    need = max(required_samples(n, i) for i in range(1, k + 1))
    count = max(samples, need + max(8, need // 2))
    rng = np.random.default_rng(seed)
    seen: set[tuple[Fraction, ...]] = set()
    pts = _points_in_U(seq, k, count, rng, seen)
    for _ in range(5):
        try:
            coeffs = []
            for i in range(1, k + 1):
                data = [(X, a[i - 1]) for X, a in pts]
                try:
                    coeffs.append(interpolate_homogeneous(i, n, data))
                except NotPolynomialOfDegree as exc:
                    raise CoefficientsNotPolynomial(i, exc.residual, exc.fitted) from exc
            return coeffs
        except InsufficientSamples:
            pts += _points_in_U(seq, k, need, rng, seen)
    raise RuntimeError("monomial matrix stayed rank deficient after resampling")


def verify_exact(seq: JetSequence, P: PolyLambda, witness: Sequence[Fraction], *,
                 seed: int | None = None, samples: int = 0) -> MinimalPolynomial:
    report = check_admissible(seq, P)
    if not report.is_admissible:
        first = report.residual.first_nonzero()
        i, j, p = first
        raise VerificationFailed(
            f"relation fails: residual entry ({i + 1},{j + 1}) = {p}", report.residual
        )
    if not _independent(seq, witness, P.degree):
        raise WitnessInvalid("witness invalid, resample: lower jets are dependent there")
    return MinimalPolynomial(P, tuple(Fraction(x) for x in witness), True, seed, samples)


def minimal_polynomial(seq: JetSequence, seed: int = 42, samples: int = 64,
                       max_k: int | None = None) -> MinimalPolynomial:
    """Full pipeline: degree, coefficients, exact certification."""
    k, witness = generic_degree(seq, max_k, seed, samples)
    coeffs = solve_coefficients(seq, k, seed, samples)
    P = PolyLambda.monic_from_tail(seq.dim, coeffs)
    return verify_exact(seq, P, witness, seed=seed, samples=samples)


def rational_relation(seq: JetSequence, k: int) -> RationalRelation:
    """Coefficients over the rational-function field by fraction-free elimination."""
    if k < 1:
        raise UsageError("k must be >= 1")
    jets = [seq.get_jet(j).flatten() for j in range(k + 1)]
    rows = [list(r) for r in zip(*jets)]
    null = bareiss_nullspace(rows)
    if len(null) != 1 or null[0][k].num != MultiPoly.constant(seq.dim, 1) or not null[0][k].is_polynomial():
        raise UsageError(f"k={k} is not the generic degree: lower jets are dependent over F(V)")
    v = null[0]
    coeffs = [v[k - i] for i in range(1, k + 1)]
    rel = RationalRelation(k, coeffs)
    rel.verified = _check_rational(seq, rel)
    return rel


def _check_rational(seq: JetSequence, rel: RationalRelation) -> bool:
    """Clear denominators and expand ``R^k + sum a_i R^{k-i}`` symbolically."""
    n = seq.dim
    common = MultiPoly.constant(n, 1)
    for a in rel.coefficients:
        if not a.den.is_constant():
            common = common * a.den
    total = seq.get_jet(rel.k).scale(common)
    for i, a in enumerate(rel.coefficients, start=1):
        if a.num:
            scaled = (RationalFunction(common) * a).as_polynomial()
            total = total + seq.get_jet(rel.k - i).scale(scaled)
    return total.is_zero()
