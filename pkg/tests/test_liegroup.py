import json
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmpoly.exactalg import UsageError, variables
from cmpoly.liegroup import (
    InvalidPresentation,
    LiePresentation,
    catalog,
    curvature_derivatives,
    from_json,
    jet_at,
    koszul,
    resolve_space,
    symmetrized_jet,
)

from strategies import rationals

CATALOG = ["flat_3", "torus_2", "su2_biinvariant", "su2_berger(1/2)", "su2_berger(2)",
           "su2_x_torus(1)", "heisenberg3", "heisenberg(5)", "heisenberg_scaled(3,2)"]
half = Fraction(1, 2)


def inner(g, a, b):
    n = len(a)
    return sum(a[i] * g[i][j] * b[j] for i in range(n) for j in range(n))


def basis(n, i):
    return [Fraction(int(k == i)) for k in range(n)]


def bracket(pres, x, y):
    n = pres.dim
    return [sum(x[i] * y[j] * pres.brackets[i][j][k] for i in range(n) for j in range(n)) for k in range(n)]


def test_koszul_abelian_is_zero():
    alpha = koszul(catalog("flat_n", {"dim": 4}))
    assert alpha.coeffs.is_zero()


def test_koszul_biinvariant_is_half_bracket():
    pres = catalog("su2_biinvariant")
    alpha = koszul(pres)
    for i, j in product(range(3), repeat=2):
        assert alpha(i, j) == [half * c for c in pres.bracket(i, j)]


def test_koszul_heisenberg_hand_values():
    alpha = koszul(catalog("heisenberg"))
    assert alpha(0, 1) == [0, 0, half]
    assert alpha(1, 0) == [0, 0, -half]
    assert alpha(0, 2) == [0, -half, 0]
    assert alpha(2, 0) == [0, -half, 0]
    assert alpha(1, 2) == [half, 0, 0]
    assert alpha(2, 2) == [0, 0, 0]


@pytest.mark.parametrize("space", CATALOG)
def test_koszul_torsion_free_and_metric(space):
    pres = resolve_space(space)
    alpha = koszul(pres)
    n, g = pres.dim, pres.metric
    for i, j in product(range(n), repeat=2):
        diff = [a - b for a, b in zip(alpha(i, j), alpha(j, i))]
        assert diff == list(pres.bracket(i, j))
        for k in range(n):
            assert inner(g, alpha(i, j), basis(n, k)) + inner(g, basis(n, j), alpha(i, k)) == 0


def _d0(D, y, u, v):
    return D.value(0, (), y, u, v)


@pytest.mark.parametrize("space", CATALOG)
def test_curvature_symmetries(space):
    pres = resolve_space(space)
    D = curvature_derivatives(pres, koszul(pres), 0)
    n, g = pres.dim, pres.metric
    for y, u, v in product(range(n), repeat=3):
        a, b, c = _d0(D, y, u, v), _d0(D, u, v, y), _d0(D, v, y, u)
        assert [p + q + r for p, q, r in zip(a, b, c)] == [0] * n  # first Bianchi
        assert [p + q for p, q in zip(a, _d0(D, u, y, v))] == [0] * n
        for z in range(n):
            lhs = inner(g, _d0(D, y, u, v), basis(n, z))
            assert lhs == -inner(g, _d0(D, y, u, z), basis(n, v))
            assert lhs == inner(g, _d0(D, v, z, y), basis(n, u))


def test_curvature_abelian_vanishes():
    pres = catalog("flat_n", {"dim": 3})
    D = curvature_derivatives(pres, koszul(pres), 3)
    assert all(D[k].is_zero() for k in range(4))


def test_curvature_biinvariant():
    pres = catalog("su2_biinvariant")
    D = curvature_derivatives(pres, koszul(pres), 1)
    for y, u, v in product(range(3), repeat=3):
        e = lambda i: basis(3, i)
        expected = [-Fraction(1, 4) * c for c in bracket(pres, bracket(pres, e(y), e(u)), e(v))]
        assert _d0(D, y, u, v) == expected
    assert D[1].is_zero()


def test_heisenberg_sectional_values():
    pres = catalog("heisenberg")
    D = curvature_derivatives(pres, koszul(pres), 0)
    g = pres.metric
    # <R(e1,e2)e2, e1> and <R(e1,e3)e3, e1>
    assert inner(g, _d0(D, 0, 1, 1), basis(3, 0)) == Fraction(-3, 4)
    assert inner(g, _d0(D, 0, 2, 2), basis(3, 0)) == Fraction(1, 4)
    assert inner(g, _d0(D, 1, 2, 2), basis(3, 1)) == Fraction(1, 4)


def test_symmetrized_jets_basic():
    x1, x2, x3 = variables(3)
    flat = catalog("flat_n", {"dim": 3})
    D = curvature_derivatives(flat, koszul(flat), 2)
    assert all(symmetrized_jet(D, k).is_zero() for k in range(3))
    su2 = catalog("su2_biinvariant")
    D = curvature_derivatives(su2, koszul(su2), 1)
    assert symmetrized_jet(D, 1).is_zero()
    h = catalog("heisenberg")
    D = curvature_derivatives(h, koszul(h), 0)
    R0 = symmetrized_jet(D, 0)
    assert R0.trace() == -half * x1**2 - half * x2**2 + half * x3**2
    with pytest.raises(UsageError):
        symmetrized_jet(D, 1)


@settings(max_examples=15, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3), rationals, st.integers(0, 3))
def test_jet_homogeneity_and_fast_path(X, t, k):
    pres = catalog("heisenberg")
    D = curvature_derivatives(pres, koszul(pres), 3)
    jet = symmetrized_jet(D, k)
    tX = [t * x for x in X]
    assert jet.eval(tX) == [[t ** (k + 2) * e for e in row] for row in jet.eval(X)]
    assert jet_at(D, k, X) == jet.eval(X)


def test_catalog_entries():
    flat = catalog("flat_n", {"dim": 3})
    assert flat.dim == 3 and not any(c for p in flat.brackets for r in p for c in r)
    h = catalog("heisenberg", {"dim": 3})
    assert h.bracket(0, 1) == (0, 0, 1) and h.metric == tuple(
        tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3))
    b1, s = catalog("su2_berger", {"t": 1}), catalog("su2_biinvariant")
    assert (b1.brackets, b1.metric) == (s.brackets, s.metric)
    assert resolve_space("heisenberg(5)").dim == 5
    assert resolve_space("heisenberg_scaled(3, 3)").metric[0][0] == Fraction(1, 9)


def test_catalog_errors():
    with pytest.raises(UsageError):
        catalog("nope")
    with pytest.raises(UsageError):
        catalog("heisenberg", {"dim": 4})
    with pytest.raises(UsageError):
        catalog("su2_berger", {"t": -1})
    with pytest.raises(UsageError):
        resolve_space("su2_berger(x)")


def test_presentation_validation():
    with pytest.raises(InvalidPresentation, match="Jacobi"):
        # [e1,e2]=e2, [e2,e3]=e1, [e1,e3]=0 violates Jacobi
        LiePresentation.build("bad", 3, {(0, 1): [0, 1, 0], (1, 2): [1, 0, 0]},
                              [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(InvalidPresentation, match="degenerate"):
        LiePresentation.build("bad", 2, {}, [[1, 1], [1, 1]])
    with pytest.raises(InvalidPresentation, match="positive definite"):
        LiePresentation.build("bad", 2, {}, [[1, 0], [0, -1]])
    ok = LiePresentation.build("lorentz", 2, {}, [[1, 0], [0, -1]], positive_definite=False)
    assert not ok.positive_definite


def test_space_file_roundtrip(tmp_path):
    pres = catalog("su2_berger", {"t": Fraction(1, 3)})
    data = pres.to_json()
    path = tmp_path / "berger.json"
    path.write_text(json.dumps(data))
    again = resolve_space(str(path))
    assert (again.brackets, again.metric) == (pres.brackets, pres.metric)
    with pytest.raises(InvalidPresentation):
        from_json({"dim": 2, "brackets": [[1, 1, ["1", "0"]]], "metric": [[1, 0], [0, 1]]})
    with pytest.raises(InvalidPresentation):
        from_json({"dim": 2})


def test_deep_orders_stay_exact():
    # dimension 5 at order 4 crosses into object arrays without losing exactness
    pres = resolve_space("heisenberg(5)")
    D = curvature_derivatives(pres, koszul(pres), 4)
    X = [Fraction(v) for v in (3, -1, 2, 5, -4)]
    R1, R3 = jet_at(D, 1, X), jet_at(D, 3, X)
    norm = sum(x * x for x in X)
    assert all(R3[i][j] == -norm * R1[i][j] for i in range(5) for j in range(5))
    assert isinstance(D[4].num, np.ndarray)
