"""Acceptance criteria, each checked exactly (zero tolerance).

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import random
from fractions import Fraction as F

import pytest

from somosk.curve import (
    CurveModel,
    Point,
    add_points,
    constants_from_e,
    e_sequence,
    ebar_sequence,
    multiply,
    verify_corollary,
    verify_prop_basic,
)
from somosk.errors import DegenerateFit, DegenerateWindow, SequenceZeroDivision
from somosk.exact_field import is_rational_square
from somosk.lift import (
    companion_eds,
    elliptic_data_from_somos4,
    fit_somos4,
    lift_somos4,
    somos_k_relation,
    symmetric_kernel_check,
    twist_equivalence,
)
from somosk.sequence import SomosRelation, extend_somos4, extend_somos5, verify_relation
from somosk.somos5 import somos5_data, somos5_from_curve, somos5_odd_gap_relation
from somosk.ward import (
    EdsInitials,
    check_division_property,
    eds_generate,
    random_triples,
    verify_ward_full,
    verify_ward_general,
)

CURVE = CurveModel(1, 7, 6, 12)
M = Point(-2, -2)


def test_criterion_1_sequence_reproduction():
    A = extend_somos4([1, 1, 1, 1], SomosRelation(4, 1, 1), -4, 8)
    assert [A[h] for h in range(4, 9)] == [2, 3, 7, 23, 59]
    assert [A[h] for h in range(-1, 4)] == [2, 1, 1, 1, 1]
    B = extend_somos5([1] * 5, SomosRelation(5, 1, 1), 0, 10)
    assert [B[h] for h in range(5, 11)] == [2, 3, 5, 11, 37, 83]


def test_criterion_2_four_somos_lift():
    A = extend_somos4([1, 1, 1, 1], SomosRelation(4, 1, 1), -25, 25)
    got = {}
    for rel, _ in lift_somos4(A, [5, 6, 8]):
        report = verify_relation(A, rel, -20, 20)
        assert report.holds and len(report.checked) == 41
        got[rel.gap] = (rel.lam, rel.mu)
    assert got == {5: (-1, 5), 6: (1, 5), 8: (25, -4)}


def _random_somos4(rng):
    def nz(lo, hi):
        return rng.choice([x for x in range(lo, hi + 1) if x])
    init = [F(nz(-9, 9), nz(1, 5)) for _ in range(4)]
    rel = SomosRelation(4, F(nz(-12, 12), nz(1, 4)), F(nz(-12, 12), nz(1, 4)))
    return init, rel


def test_criterion_3_every_somos4_is_somos_k():
    rng = random.Random(2024)
    instances = 0
    non_square = 0
    while instances < 25:
        init, rel = _random_somos4(rng)
        try:
            A = extend_somos4(init, rel, -40, 40)
            data = elliptic_data_from_somos4(A, rel)
        except (SequenceZeroDivision, DegenerateWindow, DegenerateFit):
            continue
        W = companion_eds(data, 0, 12)
        non_square += not is_rational_square(data.alpha_sq)
        for k in range(5, 21):
            derived = somos_k_relation(W, k)
            assert type(derived.lam) is F and type(derived.mu) is F
            report = verify_relation(A, derived, -30, 30, skip_undefined=True)
            assert report.holds and report.checked, (rel, k)
        instances += 1
    assert non_square > 0


def test_criterion_4_ward_coherence():
    rng = random.Random(99)
    triples = random_triples(200, 15, seed=7)
    done = 0
    while done < 25:
        try:
            init = EdsInitials(*(F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(3)))
        except ValueError:
            continue
        try:
            W = eds_generate(init, -35, 35)
        except SequenceZeroDivision:
            continue
        for m in range(2, 11):
            assert verify_ward_general(W, m, m, 25).holds, (init, m)
        assert verify_ward_full(W, triples).holds, init
        done += 1


def test_criterion_5_curve_cross_check():
    e = e_sequence(CURVE, M, -12, 12)
    assert (e[0], e[1]) == (2, 3)
    B = somos5_from_curve(CURVE, M, 2, 3, lo=-2, hi=8)
    assert [B[h] for h in range(-2, 9)] == [1, 1, 1, 1, 1, 2, 3, 5, 11, 37, 83]
    data5 = somos5_data(CURVE, M, 2, 3)
    assert data5.v == 6
    assert [data5.W[h] for h in (2, 3, 4)] == [6, 36, -1296]
    data = constants_from_e(e)
    assert verify_prop_basic(e, data, -10, 10, skip_undefined=True).holds
    assert verify_corollary(e, data, -10, 10, skip_undefined=True).holds
    translations = [M, add_points(CURVE, M, multiply(CURVE, CURVE.S, 2)),
                    add_points(CURVE, M, multiply(CURVE, CURVE.S, 5))]
    assert len(set(translations)) == 3
    found = {constants_from_e(e_sequence(CURVE, P, -12, 12)) for P in translations}
    assert found == {data}


def test_criterion_6_somos5_odd_gaps():
    B = extend_somos5([1] * 5, SomosRelation(5, 1, 1), -25, 25)
    B_curve = somos5_from_curve(CURVE, M, 2, 3, lo=-25, hi=25)
    assert all(B[h] == B_curve[h - 2] for h in range(-23, 26))
    data = somos5_data(CURVE, M, 2, 3)
    for m in range(2, 9):
        rel, _ = somos5_odd_gap_relation(data, m)
        assert verify_relation(B, rel, -15, 15).holds, m
        if m == 2:
            assert (rel.lam, rel.mu) == (1, 1)


def test_criterion_7_symmetric_kernel():
    e = e_sequence(CURVE, M, -2, 10)
    ebar = ebar_sequence(CURVE, 0, 10)
    grid = [(h, m) for h in range(2, 7) for m in range(2, 7)]
    report = symmetric_kernel_check(e, ebar, constants_from_e(e), grid)
    assert report.holds and len(report.checked) == 50


def test_criterion_8_division_property():
    W = somos5_data(CURVE, M, 2, 3).W.W
    W.extend(0, 30)
    assert W[4] % W[2] == 0
    report = check_division_property(W, 30)
    if not report.holds:
        (i, j), (g, want) = report.failures[0]
        pytest.fail(f"{len(report.failures)} of {len(report.checked)} pairs fail; first "
                    f"(i, j) = ({i}, {j}): gcd = {g}, |W_gcd(i,j)| = {want}")


def test_criterion_9_twist():
    mu = F(5, 7)
    A = extend_somos4([1, 2, 3, 5], SomosRelation(4, 9, mu), -10, 12)
    T = twist_equivalence(A, 3)
    rel = fit_somos4(T)
    assert (rel.lam, rel.mu) == (F(1, 3), mu / 81)
    assert verify_relation(T, rel).holds
    # the opposite exponent sign gives (alpha^5, -beta alpha^4) instead
    U = A.freeze().map(lambda h, v: F(3) ** (h * (h - 1) // 2) * v)
    assert (fit_somos4(U).lam, fit_somos4(U).mu) == (243, 81 * mu)
