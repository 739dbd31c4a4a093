from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from somosk.curve import (
    INFINITY,
    CurveModel,
    EllipticData,
    Point,
    add_points,
    constants_from_e,
    e_sequence,
    ebar_sequence,
    multiply,
    negate,
    on_curve,
    parse_point,
    verify_corollary,
    verify_prop_basic,
)
from somosk.errors import DegenerateWindow, NonConstantInvariants, PointNotOnCurve
from somosk.exact_field import QuadScalar
from somosk.sequence import INF, TwoSidedSequence


def test_base_point_on_curve(curve5):
    E, M = curve5
    assert on_curve(E, E.S) and on_curve(E, M)
    assert not on_curve(E, Point(1, 1))


def test_discriminant(curve5):
    assert curve5[0].discriminant() == 612


def test_model_requires_a3_or_a4():
    with pytest.raises(ValueError):
        CurveModel(1, 2, 0, 0)


def test_group_law_basics(curve5):
    E, M = curve5
    S = E.S
    assert add_points(E, M, INFINITY) == M
    assert add_points(E, M, negate(E, M)) is INFINITY
    assert add_points(E, M, S) == add_points(E, S, M)
    P = add_points(E, M, S)
    assert on_curve(E, P)
    assert add_points(E, add_points(E, M, S), S) == add_points(E, M, add_points(E, S, S))
    assert multiply(E, S, 3) == add_points(E, S, add_points(E, S, S))
    assert multiply(E, S, -2) == negate(E, multiply(E, S, 2))


def test_chord_is_collinear(curve5):
    E, M = curve5
    S = E.S
    R = negate(E, add_points(E, M, S))  # the third intersection point
    assert (M.y - S.y) * (R.x - S.x) == (R.y - S.y) * (M.x - S.x)


def test_e_values(curve5):
    E, M = curve5
    e = e_sequence(E, M, -3, 3)
    assert [e[h] for h in range(-3, 4)] == [F(9, 4), 4, 3, 2, 3, 4, F(9, 4)]


def test_e_rejects_off_curve_point(curve5):
    with pytest.raises(PointNotOnCurve):
        e_sequence(curve5[0], Point(0, 1), 0, 3)


def test_ebar(curve5):
    E, _ = curve5
    eb = ebar_sequence(E, -1, 2)
    assert eb[-1] == 0 and eb[0] is INF and eb[1] == 0 and eb[2] == 1
    assert eb.items() == e_sequence(E, INFINITY, -1, 2).items()


def test_constants_and_translation_invariance(curve5):
    E, M = curve5
    e = e_sequence(E, M, -8, 8)
    data = constants_from_e(e)
    assert (data.alpha_sq, data.beta, data.gamma) == (36, 36, 30)
    for h0 in (-4, 0, 3):
        assert constants_from_e(e, h0) == data
    shifted = e_sequence(E, add_points(E, M, E.S), -8, 8)
    assert constants_from_e(shifted) == data
    assert verify_prop_basic(e, data).holds
    assert verify_corollary(e, data).holds


def test_wrong_constants_fail(curve5):
    E, M = curve5
    e = e_sequence(E, M, -5, 5)
    rep = verify_prop_basic(e, EllipticData(36, 36, 31))
    assert not rep.holds
    assert {tag for (_, tag), _ in rep.failures} == {"eq2"}
    assert not verify_corollary(e, EllipticData(36, 35, 30)).holds


def test_constant_e_is_degenerate():
    e = TwoSidedSequence({h: 1 for h in range(-5, 6)})
    with pytest.raises(DegenerateWindow):
        constants_from_e(e)


def test_non_constant_invariants():
    e = TwoSidedSequence({h: F(h * h + 1) for h in range(-5, 6)})
    with pytest.raises(NonConstantInvariants):
        constants_from_e(e)


def test_alpha_field():
    assert EllipticData(36, 1, 1).alpha == 6
    a = EllipticData(2, 1, 1).alpha
    assert isinstance(a, QuadScalar) and a * a == 2


def test_parse_point_and_model():
    assert parse_point("-2,-2") == Point(-2, -2)
    assert parse_point("inf") is INFINITY
    assert CurveModel.parse("1,7,6,12") == CurveModel(1, 7, 6, 12)


def test_infinite_e_skipped():
    # S has order 5 on y^2 + y = x^3 - x^2
    E = CurveModel(0, -1, 1, 0)
    e = ebar_sequence(E, 0, 12)
    assert e[0] is INF and e[5] is INF
    assert [e[h] for h in range(1, 5)] == [0, -1, -1, 0]
    rep = verify_prop_basic(e, EllipticData(1, 1, 1), skip_undefined=True)
    assert rep.skipped == [1, 4, 5, 6, 9, 10, 11]


coef = st.integers(-4, 4)
xs = st.fractions(min_value=-5, max_value=5, max_denominator=3).filter(bool)


@settings(max_examples=25, deadline=None)
@given(coef, coef, st.integers(-4, 4).filter(bool), xs, st.fractions(-5, 5, max_denominator=3))
def test_invariants_on_random_curves(a1, a2, a3, x, y):
    a4 = (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x) / x
    E = CurveModel(a1, a2, a3, a4)
    M = Point(x, y)
    assume(E.discriminant() != 0)
    e = e_sequence(E, M, -6, 6)
    try:
        data = constants_from_e(e)
    except DegenerateWindow:
        return
    assert verify_prop_basic(e, data, skip_undefined=True).holds
    assert verify_corollary(e, data, skip_undefined=True).holds
    # the data depends only on the curve: a second orbit gives the same values
    M2 = multiply(E, M, 2)
    if M2 is INFINITY:
        return
    try:
        other = constants_from_e(e_sequence(E, M2, -6, 6))
    except DegenerateWindow:
        return
    assert other == data
