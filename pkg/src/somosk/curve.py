"""Curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x and their e-sequences.

S = (0, 0) always lies on such a curve.  For a point M the e-sequence is
e_h = -x(M + hS); with M = S it is the "singular" sequence written ebar.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateWindow, IndexUndefined, NonConstantInvariants, PointNotOnCurve
from .exact_field import QuadScalar, format_rat, parse_rat, rational_sqrt
from .sequence import INF, Report, TwoSidedSequence


class _AtInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"


INFINITY = _AtInfinity()


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __str__(self):
        return f"{format_rat(self.x)},{format_rat(self.y)}"


def parse_point(text: str):
    if text.strip() == "inf":
        return INFINITY
    x, y = text.split(",")
    return Point(parse_rat(x), parse_rat(y))


@dataclass(frozen=True)
class CurveModel:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a3 == 0 and self.a4 == 0:
            raise ValueError("curve is singular at S = (0,0): a3 = a4 = 0")

    @classmethod
    def parse(cls, text: str) -> CurveModel:
        parts = [parse_rat(p) for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected a1,a2,a3,a4, got {text!r}")
        return cls(*parts)

    @property
    def S(self) -> Point:
        return Point(0, 0)

    def discriminant(self) -> Fraction:
        """Discriminant of the model (a6 = 0); diagnostics only."""
        a1, a2, a3, a4 = self.a1, self.a2, self.a3, self.a4
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3
        b8 = -a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def __str__(self):
        return ",".join(format_rat(a) for a in (self.a1, self.a2, self.a3, self.a4))


def on_curve(E: CurveModel, P) -> bool:
    if P is INFINITY:
        return True
    x, y = P.x, P.y
    return y * y + E.a1 * x * y + E.a3 * y == x ** 3 + E.a2 * x * x + E.a4 * x


def negate(E: CurveModel, P):
    if P is INFINITY:
        return P
    return Point(P.x, -P.y - E.a1 * P.x - E.a3)


def add_points(E: CurveModel, P, Q):
    """Chord-and-tangent addition with INFINITY as the identity."""
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + E.a1 * x2 + E.a3 == 0:
            return INFINITY
        slope = (3 * x1 * x1 + 2 * E.a2 * x1 + E.a4 - E.a1 * y1) / (2 * y1 + E.a1 * x1 + E.a3)
    else:
        slope = (y2 - y1) / (x2 - x1)
    nu = y1 - slope * x1
    x3 = slope * slope + E.a1 * slope - E.a2 - x1 - x2
    y3 = -(slope + E.a1) * x3 - nu - E.a3
    return Point(x3, y3)


def multiply(E: CurveModel, P, n: int):
    """n * P by double-and-add."""
    if n < 0:
        return multiply(E, negate(E, P), -n)
    result, base = INFINITY, P
    while n:
        if n & 1:
            result = add_points(E, result, base)
        base = add_points(E, base, base)
        n >>= 1
    return result


def e_sequence(E: CurveModel, M, lo: int, hi: int) -> TwoSidedSequence:
    """e_h = -x(M + hS) for lo <= h <= hi; INF where M + hS is at infinity."""
    if not on_curve(E, M):
        raise PointNotOnCurve(f"{M} is not on {E}")
    S = E.S
    terms = {}

    def e(P):
        return INF if P is INFINITY else -P.x

    P = multiply(E, S, lo) if lo else INFINITY
    P = add_points(E, M, P)
    for h in range(lo, hi + 1):
        terms[h] = e(P)
        P = add_points(E, P, S)
    return TwoSidedSequence(terms)


def ebar_sequence(E: CurveModel, lo: int, hi: int) -> TwoSidedSequence:
    """ebar_m = -x(mS), the e-sequence placed at M = infinity."""
    return e_sequence(E, INFINITY, lo, hi)


@dataclass(frozen=True)
class EllipticData:
    """The invariants (alpha^2, beta, gamma) shared by every e-sequence of a curve."""

    alpha_sq: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha_sq", "beta", "gamma"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def d(self) -> Fraction:
        return self.alpha_sq

    @property
    def alpha(self):
        """alpha as a Fraction (positive root) or as sqrt(d) in Q(sqrt(d))."""
        r = rational_sqrt(self.alpha_sq)
        if r is not None:
            return r
        return QuadScalar.generator(self.alpha_sq)

    def to_json(self) -> dict:
        return {"alpha_sq": format_rat(self.alpha_sq), "beta": format_rat(self.beta),
                "gamma": format_rat(self.gamma)}


def _finite_nonzero(e: TwoSidedSequence, indices) -> bool:
    for i in indices:
        v = e.get(i)
        if v is None or v is INF or v == 0:
            return False
    return True


def _solve_window(e: TwoSidedSequence, h0: int):
    if not _finite_nonzero(e, range(h0 - 1, h0 + 3)):
        return None
    em, e0, e1, e2 = (e.get(i) for i in range(h0 - 1, h0 + 3))
    if e0 == e1:
        return None
    p0 = em * e0 * e0 * e1
    p1 = e0 * e1 * e1 * e2
    alpha_sq = (p0 - p1) / (e0 - e1)
    beta = alpha_sq * e0 - p0
    gamma = ((em + e1) * e0 * e0 + alpha_sq) / e0
    return alpha_sq, beta, gamma


def constants_from_e(e: TwoSidedSequence, h0: int | None = None, verify: bool = True) -> EllipticData:
    """Solve e_{h-1} e_h^2 e_{h+1} = alpha^2 e_h - beta at h0 and h0 + 1,
    then take gamma from (e_{h-1} + e_{h+1}) e_h^2 = gamma e_h - alpha^2 at h0.

    Without ``h0`` the lowest nondegenerate window is used.  With ``verify``
    both identities are rechecked at every finite index of ``e``.
    """
    if h0 is not None:
        found = _solve_window(e, h0)
    else:
        found = None
        for h in range(e.lo + 1, e.hi - 1):
            found = _solve_window(e, h)
            if found is not None:
                break
    if found is None:
        raise DegenerateWindow("no window with e_{h-1}..e_{h+2} finite, nonzero and e_h != e_{h+1}")
    data = EllipticData(*(Fraction(v) if not isinstance(v, QuadScalar) else v.rational_part()
                          for v in found))
    if verify:
        report = verify_prop_basic(e, data, skip_undefined=True)
        if not report.holds:
            raise NonConstantInvariants(
                f"{data} does not hold at h = {report.first_failure}")
    return data


def _checker(e: TwoSidedSequence, lo, hi, span, skip_undefined, fn) -> Report:
    lo = e.lo + span[0] if lo is None else lo
    hi = e.hi - span[1] if hi is None else hi
    report = Report()

    def get(i):
        v = e.get(i)
        if v is None or v is INF:
            raise IndexUndefined(i, "undefined or infinite")
        return v

    for h in range(lo, hi + 1):
        try:
            residuals = fn(get, h)
        except IndexUndefined:
            if not skip_undefined:
                raise
            report.skipped.append(h)
            continue
        for tag, r in residuals:
            report.record((h, tag), r)
    return report


def verify_prop_basic(e: TwoSidedSequence, data: EllipticData, lo: int | None = None,
                      hi: int | None = None, skip_undefined: bool = False) -> Report:
    """e_{h-1} e_h^2 e_{h+1} = alpha^2 e_h - beta and
    (e_{h-1} + e_{h+1}) e_h^2 = gamma e_h - alpha^2 at each h."""
    a2, b, g = data.alpha_sq, data.beta, data.gamma

    def fn(get, h):
        em, e0, ep = get(h - 1), get(h), get(h + 1)
        return [("eq1", em * e0 * e0 * ep - (a2 * e0 - b)),
                ("eq2", (em + ep) * e0 * e0 - (g * e0 - a2))]

    return _checker(e, lo, hi, (1, 1), skip_undefined, fn)


def verify_corollary(e: TwoSidedSequence, data: EllipticData, lo: int | None = None,
                     hi: int | None = None, skip_undefined: bool = False) -> Report:
    """alpha^2 (e_h + e_{h+1}) = e_h e_{h+1} (gamma - e_h e_{h+1}) + beta and
    e_{h-1} e_h^2 e_{h+1}^2 e_{h+2} = beta e_h e_{h+1} + alpha^4 - beta gamma."""
    a2, b, g = data.alpha_sq, data.beta, data.gamma

    def fn(get, h):
        em, e0, e1, e2 = get(h - 1), get(h), get(h + 1), get(h + 2)
        p = e0 * e1
        return [("thus", a2 * (e0 + e1) - (p * (g - p) + b)),
                ("odd", em * e0 * p * e1 * e2 - (b * p + a2 * a2 - b * g))]

    return _checker(e, lo, hi, (1, 2), skip_undefined, fn)
