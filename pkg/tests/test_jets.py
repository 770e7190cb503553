from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmpoly.exactalg import MultiPoly, PolyLambda, PolyMatrix, UsageError, variables
from cmpoly.jets import (
    C0Generator,
    JetOrderUnavailable,
    JetSequence,
    check_admissible,
    eval_map,
    jet_dump,
    jet_from_dump,
    validate,
)

from conftest import sequence
from strategies import homogeneous_polys

x1, x2, x3 = variables(3)
Z3 = MultiPoly.zero(3)


def heis_P(n=3):
    xs = variables(n)
    norm = sum((x * x for x in xs), MultiPoly.zero(n))
    return PolyLambda.monic_from_tail(n, [MultiPoly.zero(n), norm, MultiPoly.zero(n)])


def test_generator_zero_C():
    y1, y2 = variables(2)
    R0 = PolyMatrix([[y1 * y1, y1 * y2], [y1 * y2, y2 * y2]], 2)
    seq = JetSequence.from_generator(C0Generator(R0, PolyMatrix.zeros(2, 2)))
    assert all(seq.get_jet(k).is_zero() for k in (1, 2, 3))
    assert seq.get_jet(0) == R0


def test_generator_hand_commutator():
    y1, y2 = variables(2)
    z = MultiPoly.zero(2)
    R0 = PolyMatrix([[y1 * y1, z], [z, z]], 2)
    C = PolyMatrix([[z, y1], [-y1, z]], 1)
    seq = JetSequence.from_generator(C0Generator(R0, C, skew_checked=True))
    # [C, R0] = C R0 - R0 C: entry (2,1) is -x1^3, entry (1,2) is -x1^3
    c3 = y1**3
    assert seq.get_jet(1) == PolyMatrix([[z, -c3], [-c3, z]], 3)
    assert seq.get_jet(1).declared_degree == 3
    assert not seq.get_jet(1).trace()


def test_generator_rejects_bad_inputs():
    y1, y2 = variables(2)
    z = MultiPoly.zero(2)
    with pytest.raises(UsageError):
        C0Generator(PolyMatrix([[y1, z], [z, z]]), PolyMatrix.zeros(2, 2))
    sym = PolyMatrix([[z, y1], [y1, z]], 1)
    with pytest.raises(UsageError, match="skew"):
        JetSequence.from_generator(C0Generator(PolyMatrix([[y1 * y1, z], [z, z]], 2), sym, True))


def test_heisenberg_third_jet(h3):
    norm = x1**2 + x2**2 + x3**2
    R3 = h3.get_jet(3)
    assert R3.declared_degree == 5
    assert R3 == h3.get_jet(1).scale(-norm)


def test_eval_map_examples(h3):
    assert eval_map(h3, PolyLambda.power(3, 2)) == h3.get_jet(2)
    flat = sequence("flat_3")
    assert eval_map(flat, PolyLambda.one(3)).is_zero()
    assert eval_map(h3, heis_P()).is_zero()


def test_check_admissible_examples(h3):
    assert check_admissible(sequence("su2_biinvariant"), PolyLambda.power(3, 1)).is_admissible
    assert check_admissible(sequence("su2_x_torus(1)"), PolyLambda.power(4, 1)).is_admissible
    assert check_admissible(h3, heis_P()).is_admissible
    rep = check_admissible(h3, PolyLambda.power(3, 3))
    assert not rep.is_admissible and rep.residual == h3.get_jet(3)


def test_check_admissible_rejects_bad_polynomials(h3):
    with pytest.raises(UsageError, match="monic"):
        check_admissible(h3, PolyLambda(3, [x1, Z3]))
    with pytest.raises(UsageError, match="a_1"):
        check_admissible(h3, PolyLambda.monic_from_tail(3, [x1 * x1]))


@settings(max_examples=10, deadline=None)
@given(st.data())
def test_eval_map_is_module_homomorphism(data):
    seq = sequence("heisenberg3")
    a = data.draw(homogeneous_polys(3, data.draw(st.integers(0, 2))))
    P = PolyLambda(3, [data.draw(homogeneous_polys(3, 1)) for _ in range(2)])
    Q = PolyLambda(3, [data.draw(homogeneous_polys(3, 2)) for _ in range(3)])
    lhs = eval_map(seq, P * a + Q)
    assert lhs == eval_map(seq, P).scale(a) + eval_map(seq, Q)


def test_validate_examples(h3):
    rep = validate(h3, 4)
    assert rep.ok and rep.annihilates_direction
    y1, y2 = variables(2)
    z = MultiPoly.zero(2)
    bad = PolyMatrix([[y1 * y1, y1 * y2], [z, z]], 2)
    rep = validate(JetSequence.from_list([bad]), 0)
    assert rep.self_adjointness == [0]
    assert not rep.ok


@pytest.mark.parametrize("space", ["flat_3", "su2_biinvariant", "su2_berger(1/2)", "heisenberg(5)"])
def test_validate_catalog(space):
    assert validate(sequence(space), 3).ok


def test_explicit_sequence_limits():
    y1, y2 = variables(2)
    z = MultiPoly.zero(2)
    seq = JetSequence.from_list([PolyMatrix([[y1 * y1, z], [z, y2 * y2]], 2)])
    with pytest.raises(JetOrderUnavailable):
        seq.get_jet(1)
    assert seq.available_orders == 0
    with pytest.raises(UsageError):
        JetSequence.from_list([])


def test_get_jet_deterministic(h3):
    a = h3.get_jet(2)
    b = sequence("heisenberg3").get_jet(2)
    fresh = JetSequence.from_presentation(h3.curvature.pres)
    assert a is b and fresh.get_jet(2) == a


def test_jet_dump_roundtrip(h3):
    d = jet_dump(h3, 1)
    assert d["dim"] == 3 and d["order"] == 1
    assert all(1 <= r <= 3 and 1 <= c <= 3 for r, c, _ in d["entries"])
    assert jet_from_dump(d) == h3.get_jet(1)


def test_jet_at_matches_symbolic(h3):
    X = [Fraction(1, 2), Fraction(-3), Fraction(7, 5)]
    fresh = JetSequence.from_presentation(h3.curvature.pres)
    for k in range(4):
        assert fresh.jet_at(k, X) == h3.get_jet(k).eval(X)
