"""Somos-5 sequences from a curve: c_h B_{h-1} B_{h+1} = e_h B_h^2.

c_h alternates between c0 (even h) and c1 (odd h), so v = c_h c_{h+1} is
constant.  With W the companion EDS of the curve's e-sequence, for every m

    v^(m(m+1)/2) W_1 W_2 B_{h-m} B_{h+m+1}
        = v W_m W_{m+1} B_{h-1} B_{h+2} - W_{m-1} W_{m+2} B_h B_{h+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .curve import CurveModel, constants_from_e, e_sequence
from .errors import DegenerateFit, InfiniteE, RelationMismatch, RelationVerificationFailed, SequenceZeroDivision
from .lift import CompanionEDS, _rational, companion_eds, fit_somos4
from .sequence import INF, SomosRelation, TwoSidedSequence, fit_three_term, to_scalar, verify_relation


@dataclass(frozen=True)
class Somos5Data:
    v: Fraction
    c0: Fraction
    c1: Fraction
    W: CompanionEDS

    def __post_init__(self):
        if self.v == 0:
            raise ValueError("v must be nonzero")
        if self.c0 * self.c1 != self.v:
            raise ValueError(f"c0 * c1 = {self.c0 * self.c1} != v = {self.v}")


def somos5_data(E: CurveModel, M, c0, c1, window: int = 8) -> Somos5Data:
    """Invariants for the curve-built Somos-5; W comes from e_h = -x(M + hS)."""
    c0, c1 = Fraction(c0), Fraction(c1)
    data = constants_from_e(e_sequence(E, M, -window, window))
    return Somos5Data(c0 * c1, c0, c1, companion_eds(data, 0, 12))


def fit_somos5(seq: TwoSidedSequence, h0: int | None = None) -> SomosRelation:
    return fit_three_term(seq, 5, h0)


def somos5_from_curve(E: CurveModel, M, c0, c1, init=(1, 1), lo: int = 0,
                      hi: int = 10) -> TwoSidedSequence:
    """B with B_0, B_1 = init, via B_{h+1} = e_h B_h^2 / (c_h B_{h-1}) and its mirror."""
    c0, c1 = Fraction(c0), Fraction(c1)
    if c0 == 0 or c1 == 0:
        raise ValueError("c0 and c1 must be nonzero")
    e = e_sequence(E, M, min(lo, 0), max(hi, 1))
    B = {0: to_scalar(init[0]), 1: to_scalar(init[1])}

    def c(h):
        return c0 if h % 2 == 0 else c1

    def ee(h):
        if e[h] is INF:
            raise InfiniteE(h)
        return e[h]

    for n in range(2, hi + 1):
        h = n - 1
        if B[h - 1] == 0:
            raise SequenceZeroDivision(n)
        B[n] = ee(h) * B[h] ** 2 / (c(h) * B[h - 1])
    for n in range(-1, lo - 1, -1):
        h = n + 1
        if B[h + 1] == 0:
            raise SequenceZeroDivision(n)
        B[n] = ee(h) * B[h] ** 2 / (c(h) * B[h + 1])
    return TwoSidedSequence({h: v for h, v in B.items() if lo <= h <= hi})


def somos5_odd_gap_relation(data: Somos5Data, m: int, seq: TwoSidedSequence | None = None,
                            lo: int | None = None, hi: int | None = None
                            ) -> tuple[SomosRelation, int]:
    """Normalized gap-(2m+1) relation and the exponent of v on the outer term.

    With ``seq`` given the relation must verify on it before it is returned.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    W = data.W.W
    v = data.v
    v_exp = m * (m + 1) // 2
    scale = v ** v_exp * W[1] * W[2]
    lam = _rational(v * W[m] * W[m + 1] / scale, f"lambda_{2 * m + 1}")
    mu = _rational(-W[m - 1] * W[m + 2] / scale, f"mu_{2 * m + 1}")
    rel = SomosRelation(2 * m + 1, lam, mu)
    if seq is not None:
        report = verify_relation(seq, rel, lo, hi, skip_undefined=True)
        if not report.holds or not report.checked:
            raise RelationVerificationFailed(rel, report)
    return rel, v_exp


@dataclass
class InterleaveSplit:
    even: TwoSidedSequence
    odd: TwoSidedSequence
    even_fit: SomosRelation | None = None
    odd_fit: SomosRelation | None = None
    errors: dict[str, Any] = field(default_factory=dict)


def interleave_split(B: TwoSidedSequence) -> InterleaveSplit:
    """Split into (B_{2j}) and (B_{2j+1}), each fitted as a Somos-4.

    Fit failures are recorded in ``errors`` rather than raised.
    """
    items = B.items()
    even = TwoSidedSequence({h // 2: v for h, v in items if h % 2 == 0})
    odd = TwoSidedSequence({(h - 1) // 2: v for h, v in items if h % 2 != 0})
    split = InterleaveSplit(even, odd)
    for name, part in (("even", even), ("odd", odd)):
        try:
            setattr(split, f"{name}_fit", fit_somos4(part))
        except (DegenerateFit, RelationMismatch) as exc:
            split.errors[name] = exc
    return split
