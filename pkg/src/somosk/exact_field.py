"""Exact scalars: rationals and elements a + b*sqrt(d) of a quadratic extension.

Rationals are plain :class:`fractions.Fraction` objects.  :class:`QuadScalar`
adds the quadratic extension Q(sqrt(d)) for a fixed rational ``d``; when ``d``
is the square of a rational the extension collapses and every element is kept
with a zero irrational part.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import MismatchedDiscriminant, NotInvertible, NotRational

Rat = Fraction
Scalar = Union[int, Fraction, "QuadScalar"]

_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^\s*({_RAT})\s*$")
_QUAD_RE = re.compile(
    rf"^\s*({_RAT})\s*([+-])\s*({_RAT})\s*\*\s*sqrt\(\s*({_RAT})\s*\)\s*$"
)


def rat(x) -> Fraction:
    """Coerce an int, Fraction, rational QuadScalar or text into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, QuadScalar):
        return x.rational_part()
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot make an exact rational from {x!r}")


def parse_rat(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(m.group(1))


def format_rat(x) -> str:
    return str(Fraction(x))


def int_gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


@lru_cache(maxsize=256)
def rational_sqrt(d: Fraction) -> Fraction | None:
    """Return the nonnegative rational square root of ``d`` or None."""
    if d < 0:
        return None
    p, q = d.numerator, d.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def is_rational_square(d) -> bool:
    return rational_sqrt(Fraction(d)) is not None


class QuadScalar:
    """The element ``a + b*sqrt(d)`` with rational a, b, d.

    Scalars only combine with scalars sharing the same ``d`` (or with plain
    ints and Fractions, which embed with ``b = 0``).
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        a, b, d = Fraction(a), Fraction(b), Fraction(d)
        if b:
            r = rational_sqrt(d)
            if r is not None:
                a, b = a + b * r, Fraction(0)
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def generator(cls, d) -> QuadScalar:
        """sqrt(d) itself; the positive root when d is a rational square."""
        return cls(0, 1, d)

    def normalize(self) -> QuadScalar:
        return QuadScalar(self.a, self.b, self.d)

    def _coerce(self, other) -> QuadScalar | None:
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise MismatchedDiscriminant(f"sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(
            self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadScalar:
        return QuadScalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> QuadScalar:
        n = self.norm()
        if n == 0:
            raise NotInvertible(f"{self} has zero norm")
        return QuadScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = QuadScalar(1, 0, self.d)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def rational_part(self) -> Fraction:
        """The value as a Fraction; raises NotRational unless b == 0."""
        if self.b != 0:
            raise NotRational(f"{self} has nonzero sqrt({self.d}) part")
        return self.a

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadScalar({self.a!s}, {self.b!s}, {self.d!s})"

    def __str__(self):
        return format_scalar(self)


def format_scalar(x) -> str:
    """Text form: ``p/q`` (or ``p``) for rationals, ``a+b*sqrt(d)`` otherwise."""
    if isinstance(x, QuadScalar):
        if x.b == 0:
            return format_rat(x.a)
        return f"{format_rat(x.a)}+{format_rat(x.b)}*sqrt({format_rat(x.d)})"
    return format_rat(x)


def parse_scalar(text: str):
    """Parse either text form; rationals come back as Fractions."""
    m = _QUAD_RE.match(text)
    if m:
        a, sign, b, d = m.groups()
        b = Fraction(b)
        return QuadScalar(Fraction(a), b if sign == "+" else -b, Fraction(d))
    return parse_rat(text)


def as_rational(x) -> Fraction:
    """Like :func:`rat` but only accepts scalar types."""
    if isinstance(x, QuadScalar):
        return x.rational_part()
    return Fraction(x)
