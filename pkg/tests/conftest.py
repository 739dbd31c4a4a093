from fractions import Fraction

import pytest

from somosk.curve import CurveModel, Point
from somosk.sequence import SomosRelation, extend_somos4


def naive_somos(init, lam, mu, gap, count):
    """Forward-only list recurrence; independent of the library engine."""
    a = [Fraction(x) for x in init]
    m = gap // 2
    while len(a) < count:
        n = len(a)
        if gap % 2 == 0:
            h = n - m
            a.append((lam * a[h - 1] * a[h + 1] + mu * a[h] ** 2) / a[h - m])
        else:
            h = n - m - 1
            a.append((lam * a[h - 1] * a[h + 2] + mu * a[h] * a[h + 1]) / a[h - m])
    return a


@pytest.fixture
def somos4():
    """4-Somos (1,1,1,1 at indices 0..3) on [-20, 20]."""
    return extend_somos4([1, 1, 1, 1], SomosRelation(4, 1, 1), -20, 20)


@pytest.fixture
def curve5():
    """The 5-Somos curve y^2 + xy + 6y = x^3 + 7x^2 + 12x with M = (-2, -2)."""
    return CurveModel(1, 7, 6, 12), Point(-2, -2)


_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance.append((report.nodeid.rsplit("::", 1)[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
