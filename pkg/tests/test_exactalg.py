from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmpoly.exactalg import (
    InsufficientSamples,
    MultiPoly,
    NotPolynomialOfDegree,
    PolyLambda,
    RationalFunction,
    RootProfile,
    UniPoly,
    UsageError,
    bareiss_nullspace,
    interpolate_homogeneous,
    poly_arith,
    poly_eval,
    polylambda_divmod,
    q_nullspace,
    rank,
    sturm_root_profile,
    unipoly_divmod,
    variables,
)
from cmpoly.exactalg.linalg import matvec, min_norm_point, solve_affine
from cmpoly.exactalg.rational import format_rational, parse_vector
from cmpoly.exactalg.unipoly import count_real_roots

from strategies import homogeneous_polys, points, polys, rationals, unipolys

x1, x2 = variables(2)


def test_poly_arith_examples():
    assert poly_arith(x1**2, x2**2, "add") == MultiPoly(2, {(2, 0): 1, (0, 2): 1})
    assert poly_arith(x1 + x2, x1 - x2, "mul") == x1**2 - x2**2
    assert poly_arith(x1 * x2 + 3, MultiPoly.zero(2), "mul").is_zero()
    with pytest.raises(UsageError):
        poly_arith(x1, x2, "div")


def test_poly_eval_examples():
    assert poly_eval(x1**2 + 2 * x1 * x2, [1, 2]) == 5
    assert poly_eval(x1 * x2 - x2**2, [0, 0]) == 0
    p = x1**2 - 3 * x1 * x2
    X = [Fraction(2, 3), Fraction(-5, 2)]
    assert poly_eval(p, [3 * x for x in X]) == 9 * poly_eval(p, X)


def test_poly_printing_and_terms():
    p = x1**2 - x2**2 + Fraction(1, 2) * x1 * x2
    assert str(p) == "x1^2 + 1/2*x1*x2 - x2^2"
    assert MultiPoly.from_term_list(2, p.to_term_list()) == p
    assert str(MultiPoly.zero(2)) == "0"


def test_poly_rejects_mismatched_variables():
    with pytest.raises(UsageError):
        x1 + variables(3)[0]


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), points(2))
def test_eval_is_ring_homomorphism(a, b, X):
    assert poly_eval(a * b, X) == poly_eval(a, X) * poly_eval(b, X)
    assert poly_eval(a + b, X) == poly_eval(a, X) + poly_eval(b, X)


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_multivariate_division_reconstructs(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a


def test_interpolation_examples():
    pts = [[1, 1], [1, 2], [2, 1]]
    samples = [([Fraction(v) for v in p], Fraction(p[0] * p[1])) for p in pts]
    assert interpolate_homogeneous(2, 2, samples) == x1 * x2
    assert interpolate_homogeneous(0, 4, [([1, 2, 3, 4], Fraction(7))]) == MultiPoly.constant(4, 7)
    with pytest.raises(NotPolynomialOfDegree) as info:
        interpolate_homogeneous(1, 2, [([1, 0], 1), ([0, 1], 1), ([1, 1], 3)])
    assert [r for r in info.value.residual if r] == [Fraction(1)]


def test_interpolation_needs_enough_samples():
    with pytest.raises(InsufficientSamples):
        interpolate_homogeneous(2, 2, [([1, 1], 1), ([1, 2], 2)])


@settings(max_examples=25, deadline=None)
@given(st.data(), st.integers(1, 5), st.integers(0, 4))
def test_interpolation_inverts_evaluation(data, n, d):
    p = data.draw(homogeneous_polys(n, d))
    rng = np.random.default_rng(data.draw(st.integers(0, 2**16)))
    from cmpoly.exactalg import required_samples, sample_points

    pts = []
    seen = set()
    while len(pts) < required_samples(n, d) + 4:
        X = tuple(sample_points(rng, n, 1, 5)[0])
        if X not in seen:
            seen.add(X)
            pts.append((list(X), p.eval(X)))
    try:
        assert interpolate_homogeneous(d, n, pts) == p
    except InsufficientSamples:
        pass  # unlucky rank-deficient draw; callers resample


def test_q_nullspace_examples():
    I3 = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert q_nullspace(I3) == []
    assert q_nullspace([[Fraction(1), Fraction(1)]]) == [[Fraction(-1), Fraction(1)]]


def test_q_nullspace_heisenberg_jets(h3):
    X = [Fraction(2), Fraction(-3), Fraction(5)]
    cols = [[x for row in h3.jet_at(j, X) for x in row] for j in range(4)]
    null = q_nullspace([list(r) for r in zip(*cols)], 4)
    assert len(null) == 1
    v = [c / null[0][3] for c in null[0]]
    assert v == [0, 4 + 9 + 25, 0, 1]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_q_nullspace_properties(r, c, data):
    m = [data.draw(st.lists(rationals, min_size=c, max_size=c)) for _ in range(r)]
    null = q_nullspace(m, c)
    assert len(null) == c - rank(m)
    for v in null:
        assert all(x == 0 for x in matvec(m, v))


def test_solve_affine_and_min_norm():
    sol = solve_affine([[Fraction(1), Fraction(1)]], [Fraction(2)])
    p = min_norm_point(*sol)
    assert p == [1, 1]
    assert solve_affine([[Fraction(0)]], [Fraction(1)]) is None


def test_bareiss_examples():
    one, zero = MultiPoly.constant(2, 1), MultiPoly.zero(2)
    assert bareiss_nullspace([[one, zero], [zero, one]]) == []
    v = [Fraction(2), Fraction(-1), Fraction(3)]
    m = [[x1 * a, x2 * a] for a in v]
    null = bareiss_nullspace(m)
    assert len(null) == 1
    u = null[0]
    # proportional to (x2, -x1)
    assert u[0] * RationalFunction(x1) == -u[1] * RationalFunction(x2)


def test_bareiss_diagonal_sequence_against_minors():
    z = MultiPoly.zero(2)
    cols = [[x1**k, z, z, x2**k] for k in (2, 3, 4)]
    null = bareiss_nullspace([list(r) for r in zip(*cols)])
    assert len(null) == 1
    v = null[0]
    # Cramer on rows (1, 4): a1 = -(x1+x2), a2 = x1 x2 for R^2 + a1 R^1 + a2 R^0 = 0
    assert v[2] == RationalFunction(MultiPoly.constant(2, 1))
    assert v[1] == RationalFunction(-(x1 + x2))
    assert v[0] == RationalFunction(x1 * x2)


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_bareiss_agrees_with_pointwise_nullspace(data):
    m = [[data.draw(polys(2, 2, 2)) for _ in range(3)] for _ in range(3)]
    null = bareiss_nullspace(m)
    X = data.draw(points(2))
    dens = [e.den.eval(X) for v in null for e in v]
    if any(d == 0 for d in dens):
        return
    mX = [[e.eval(X) for e in row] for row in m]
    for v in null:
        vX = [e.eval(X) for e in v]
        assert all(x == 0 for x in matvec(mX, vX))
    assert len(q_nullspace(mX, 3)) >= len(null)


def test_rational_function_arithmetic():
    f = RationalFunction(x1, x2)
    g = RationalFunction(x2, x1)
    assert (f * g) == RationalFunction(MultiPoly.constant(2, 1))
    assert (f + g) == RationalFunction(x1**2 + x2**2, x1 * x2)
    assert RationalFunction(x1 * x1 - x2 * x2, x1 - x2).is_polynomial()
    assert not f.is_polynomial()
    with pytest.raises(ValueError):
        f.as_polynomial()


def test_unipoly_divmod_examples():
    lam = UniPoly.monomial(1)
    p = lam**3 + lam
    assert unipoly_divmod(p, lam) == (lam**2 + 1, UniPoly())
    assert unipoly_divmod(p, lam**2 + 1) == (lam, UniPoly())
    q, r = unipoly_divmod(p, lam + 1)
    assert q == lam**2 - lam + 2 and r == UniPoly([-2])
    with pytest.raises(UsageError):
        p.divmod(UniPoly())


@settings(max_examples=60, deadline=None)
@given(unipolys(), unipolys())
def test_unipoly_divmod_reconstructs(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def test_sturm_examples():
    mu = UniPoly.monomial(1)
    assert sturm_root_profile(mu + 1, "negatives") == RootProfile(1, True)
    assert sturm_root_profile((mu + 1) ** 2, "negatives") == RootProfile(1, False)
    assert sturm_root_profile(mu**2 + 3 * mu + 2, "negatives") == RootProfile(2, True)
    assert sturm_root_profile(mu**2 + 1, "all") == RootProfile(0, True)
    # a root at zero is not negative
    assert sturm_root_profile(mu * (mu + 1), "negatives") == RootProfile(1, True)
    assert sturm_root_profile(mu * (mu + 1), "positives") == RootProfile(0, True)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_sturm_matches_rational_roots(roots):
    mu = UniPoly.monomial(1)
    q = UniPoly([1])
    for r in roots:
        q = q * (mu - r)
    prof = sturm_root_profile(q, "all")
    assert prof.num_distinct_real_roots == len(set(roots))
    assert prof.all_simple == (len(set(roots)) == len(roots))
    assert count_real_roots(q, None, 0) == len({r for r in roots if r <= 0})
    neg = sturm_root_profile(q, "negatives")
    assert neg.num_distinct_real_roots == len({r for r in roots if r < 0})


def test_polylambda_divmod_examples():
    n = 2
    norm = x1**2 + x2**2
    lam = PolyLambda.power(n, 1)
    P = PolyLambda.monic_from_tail(n, [MultiPoly.zero(n), norm, MultiPoly.zero(n)])
    assert polylambda_divmod(lam * P, P) == (lam, PolyLambda(n, []))
    Qt = lam * lam + PolyLambda(n, [x1]) * lam
    q, r = polylambda_divmod(Qt * P, P)
    assert q == Qt and r.is_zero()
    q, r = polylambda_divmod(PolyLambda.power(n, 4), P)
    assert q == lam
    assert r == PolyLambda(n, [-norm, MultiPoly.zero(n), MultiPoly.zero(n)])
    with pytest.raises(UsageError):
        polylambda_divmod(P, PolyLambda(n, [x1, x2]))


@settings(max_examples=30, deadline=None)
@given(st.lists(polys(2, 2, 2), min_size=1, max_size=4), st.lists(polys(2, 2, 2), min_size=0, max_size=3))
def test_polylambda_divmod_reconstructs(qc, tail):
    q = PolyLambda(2, qc)
    p = PolyLambda.monic_from_tail(2, tail)
    quot, rem = polylambda_divmod(q, p)
    assert quot * p + rem == q
    assert rem.is_zero() or rem.degree < p.degree


def test_rational_formatting():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(6, 3)) == "2"
    assert parse_vector("1, -2/3 ,0") == [1, Fraction(-2, 3), 0]
    with pytest.raises(ValueError):
        parse_vector("")
