"""Acceptance suite: one PASS/FAIL line per criterion.

Exact criteria compare rational polynomials with ``==``; the numeric
criterion pins its tolerances below.
"""
import json
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from cmpoly import cli
from cmpoly.dynamics import crosscheck
from cmpoly.exactalg import MultiPoly, PolyLambda, PolyMatrix, variables
from cmpoly.exactalg.poly import monomials_of_degree
from cmpoly.jets import JetSequence, check_admissible
from cmpoly.liegroup import resolve_space
from cmpoly.minpoly import (
    CoefficientsNotPolynomial,
    c0_witness,
    divides,
    minimal_polynomial,
    pointwise_min_poly,
    rational_relation,
    root_structure,
    solve_coefficients,
)
from cmpoly.singer import singer_invariant

from conftest import minpoly, sequence

SEED = 20240601
JET_REL_TOL = 1e-5
RELATION_TOL = 1e-5
KILLING_TOL = 1e-8
NEGATIVE_CONTROL_MIN = 1e-3

FLAT = ["flat_1", "flat_2", "flat_3", "flat_4", "torus_3"]
LAMBDA = ["su2_biinvariant", "su2_x_torus(1)", "su2_x_torus(2)"]
HEISENBERG = ["heisenberg3", "heisenberg(5)", "heisenberg_scaled(3,2)", "heisenberg_scaled(3,3)"]
BERGER = ["su2_berger(1/2)", "su2_berger(2)"]
CATALOG = FLAT + LAMBDA + HEISENBERG + BERGER

# a_2 = c2 * (metric norm) on the Berger family, frozen from the pipeline
BERGER_C2 = {"1/2": Fraction(1, 4), "2": Fraction(4)}


@contextmanager
def criterion(n, text):
    try:
        yield
    except BaseException:
        print(f"\nFAIL criterion {n}: {text}")
        raise
    print(f"\nPASS criterion {n}: {text}")


def norm_sq(n):
    return sum((x * x for x in variables(n)), MultiPoly.zero(n))


def rational_points(n, count, seed=SEED):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        num = rng.integers(-20, 21, size=n)
        den = rng.integers(1, 10, size=n)
        if num.any():
            out.append([Fraction(int(a), int(b)) for a, b in zip(num, den)])
    return out


def random_monic_tail(n, degree, rng):
    tail = []
    for i in range(1, degree + 1):
        mons = monomials_of_degree(n, i)
        tail.append(MultiPoly(n, {m: Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
                                  for m in mons}))
    return PolyLambda.monic_from_tail(n, tail)


def test_heisenberg_exactness(capsys):
    with criterion(1, "heisenberg3 gives lambda^3 + |x|^2 lambda exactly in < 10 s"):
        t0 = time.perf_counter()
        code = cli.main(["minpoly", "--space", "heisenberg3"])
        elapsed = time.perf_counter() - t0
        rec = json.loads(capsys.readouterr().out)
        assert code == 0 and rec["verified"] and rec["k"] == 3
        coeffs = [MultiPoly.from_term_list(3, c["terms"]) for c in rec["coefficients"]]
        assert coeffs == [MultiPoly.zero(3), norm_sq(3), MultiPoly.zero(3)]
        assert elapsed < 10


def test_heisenberg_dimension_five():
    with criterion(2, "heisenberg(5) gives lambda^3 + |x|^2 lambda exactly in < 60 s"):
        t0 = time.perf_counter()
        mp = minimal_polynomial(JetSequence.from_presentation(resolve_space("heisenberg(5)")))
        elapsed = time.perf_counter() - t0
        assert mp.verified
        assert mp.P == PolyLambda.monic_from_tail(5, [MultiPoly.zero(5), norm_sq(5), MultiPoly.zero(5)])
        assert elapsed < 60


def test_scaling_law():
    with criterion(3, "heisenberg_scaled(3, c), c in {2, 3}: a_2 = c^2 times the scaled metric norm"):
        for c in (2, 3):
            seq, mp = sequence(f"heisenberg_scaled(3,{c})"), minpoly(f"heisenberg_scaled(3,{c})")
            assert mp.verified and mp.k == 3
            assert mp.coefficients[1] == seq.metric_norm() * (c * c)
            assert mp.coefficients[1] == norm_sq(3)


def test_degenerate_anchors():
    with criterion(4, "flat spaces give P = 1, su2 and su2 x torus give P = lambda"):
        for space in FLAT:
            mp = minpoly(space)
            assert mp.verified and mp.P == PolyLambda.one(mp.P.nvars)
        for space in LAMBDA:
            mp = minpoly(space)
            assert mp.verified and mp.P == PolyLambda.power(mp.P.nvars, 1)


def test_odd_coefficients_and_parity():
    with criterion(5, "heisenberg: a_1 = a_3 = 0, a_2 > 0 on 200 rational X, k odd, trace R^0 != 0"):
        for space, n in (("heisenberg3", 3), ("heisenberg(5)", 5)):
            seq, mp = sequence(space), minpoly(space)
            a1, a2, a3 = mp.coefficients
            assert a1.is_zero() and a3.is_zero()
            assert all(a2.eval(X) > 0 for X in rational_points(n, 200))
            assert mp.k % 2 == 1
            assert not seq.get_jet(0).trace().is_zero()


def test_root_structure():
    with criterion(6, "heisenberg3: roots purely imaginary and simple at 200 rational X"):
        mp = minpoly("heisenberg3")
        for X in rational_points(3, 200):
            assert root_structure(mp.specialize(X)).pure_imaginary_simple


def test_higher_traces_vanish():
    with criterion(7, "trace R^i = 0 for 1 <= i <= 5 on every catalog entry"):
        for space in CATALOG:
            seq = sequence(space)
            assert all(seq.get_jet(i).trace().is_zero() for i in range(1, 6)), space


def test_principal_ideal():
    with criterion(8, "heisenberg3: 20 random multiples Q~ P are admissible and divide back to Q~"):
        seq, mp = sequence("heisenberg3"), minpoly("heisenberg3")
        rng = np.random.default_rng(SEED)
        for _ in range(20):
            Qt = random_monic_tail(3, int(rng.integers(0, 4)), rng)
            Q = Qt * mp.P
            assert check_admissible(seq, Q).is_admissible
            r = divides(seq, Q, mp)
            assert r.divisible and r.remainder.is_zero() and r.quotient == Qt


def test_pointwise_divisibility():
    with criterion(9, "heisenberg3: pointwise P(X) divides P_min(X) at 100 rational X"):
        seq, mp = sequence("heisenberg3"), minpoly("heisenberg3")
        for X in rational_points(3, 100, SEED + 1):
            pw = pointwise_min_poly(seq, X)
            assert (mp.specialize(X) % pw.P).is_zero()


def test_c0_witness():
    with criterion(10, "heisenberg3: feasible G-skew witness with orders = 3 at 20 rational X"):
        seq = sequence("heisenberg3")
        G = seq.metric
        for X in rational_points(3, 20, SEED + 2):
            w = c0_witness(seq, X, 3)
            assert w.feasible and w.orders_satisfied >= 3
            GC = [[sum(G[i][m] * w.C[m][j] for m in range(3)) for j in range(3)] for i in range(3)]
            assert all(GC[i][j] == -GC[j][i] for i in range(3) for j in range(3))


def test_singer_bound():
    with criterion(11, "Singer chain stabilizes at j <= k on every catalog entry, 0 on symmetric ones"):
        for space in CATALOG:
            mp = minpoly(space)
            rep = singer_invariant(sequence(space).curvature, mp)
            assert rep.nested and rep.bound_holds, space
            assert rep.k_singer is not None and rep.k_singer <= mp.k, space
            if space in FLAT + LAMBDA:
                assert rep.k_singer == 0, space


def test_numeric_crossvalidation():
    with criterion(12, "heisenberg3 numeric jets, relation, Killing drift and control in < 30 s"):
        t0 = time.perf_counter()
        seq = JetSequence.from_presentation(resolve_space("heisenberg3"))
        mp = minimal_polynomial(seq)
        rep = crosscheck(seq.curvature.pres, seq.curvature, mp, [1, 0, 1], h=1e-3, t_end=1.0, H=1e-2,
                         max_order=3, jet_rel=JET_REL_TOL, relation_tol=RELATION_TOL,
                         killing_tol=KILLING_TOL)
        elapsed = time.perf_counter() - t0
        assert [o["i"] for o in rep.orders] == [1, 2, 3]
        assert all(o["rel_error"] < JET_REL_TOL for o in rep.orders)
        assert rep.relation_residual < RELATION_TOL
        assert rep.killing_drift[1] < KILLING_TOL
        assert rep.negative_control_drift > NEGATIVE_CONTROL_MIN
        assert rep.ok
        assert elapsed < 30


def test_rational_fallback():
    with criterion(13, "diagonal sequence: rational relation matches 2x2 minors; coefficients flagged non-polynomial"):
        y1, y2 = variables(2)
        z = MultiPoly.zero(2)
        jets = [PolyMatrix([[y1 ** (k + 2), z], [z, y2 ** (k + 2)]], k + 2) for k in range(3)]
        seq = JetSequence.from_list(jets)
        rel = rational_relation(seq, 2)
        assert rel.k == 2 and rel.verified
        # diagonal rows: y^4 + a1 y^3 + a2 y^2 = 0 for y = x1, x2; Cramer with 2x2 minors
        det = y1**3 * y2**2 - y1**2 * y2**3
        a1 = (-(y1**4) * y2**2 + y2**4 * y1**2)
        a2 = (-(y1**3) * y2**4 + y2**3 * y1**4)
        for got, num in zip(rel.coefficients, (a1, a2)):
            assert got.num * det == num * got.den
        with pytest.raises(CoefficientsNotPolynomial):
            solve_coefficients(seq, 2)


def test_berger_shape():
    with criterion(14, "su2_berger(1/2), su2_berger(2): lambda^3 + c2(t) |x|_g^2 lambda, c2 frozen"):
        for t, c2 in BERGER_C2.items():
            seq, mp = sequence(f"su2_berger({t})"), minpoly(f"su2_berger({t})")
            assert mp.verified and mp.k == 3
            a1, a2, a3 = mp.coefficients
            assert a1.is_zero() and a3.is_zero()
            assert c2 > 0 and a2 == seq.metric_norm() * c2
