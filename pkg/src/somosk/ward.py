"""Elliptic divisibility sequences (W_0 = 0, W_1 = 1, W_{-h} = -W_h)."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Any, Iterable

from .errors import IndexUndefined, NotIntegral, NotRational, SequenceZeroDivision
from .exact_field import as_rational
from .sequence import INF, Report, SomosRelation, TwoSidedSequence, to_scalar


@dataclass(frozen=True)
class EdsInitials:
    w2: Any
    w3: Any
    w4: Any

    def __post_init__(self):
        for name in ("w2", "w3", "w4"):
            object.__setattr__(self, name, to_scalar(getattr(self, name)))
        if self.w2 == 0 or self.w3 == 0:
            raise ValueError("W_2 and W_3 must be nonzero")


class EllipticDivisibilitySequence(TwoSidedSequence):
    """Ward's sequence grown by the m = 2 recurrence.

    Negative indices come from antisymmetry.  When W_{n-4} vanishes the term
    W_n is filled in from the gap-2m relation
    W_{h-m} W_{h+m} = W_m^2 W_{h-1} W_{h+1} - W_{m-1} W_{m+1} W_h^2
    for the smallest usable m > 2.
    """

    def __init__(self, w2, w3, w4):
        w2, w3, w4 = (to_scalar(w) for w in (w2, w3, w4))
        zero, one = w2 * 0, w2 * 0 + 1
        terms = {0: zero, 1: one, 2: w2, 3: w3, 4: w4}
        terms.update({-h: -terms[h] for h in range(1, 5)})
        super().__init__(terms, relation=SomosRelation(4, w2 * w2, -w3))

    @classmethod
    def from_initials(cls, init: EdsInitials):
        return cls(init.w2, init.w3, init.w4)

    def _ward_relation(self, m: int) -> SomosRelation:
        t = self._terms
        return SomosRelation(2 * m, t[m] * t[m], -t[m - 1] * t[m + 1])

    def _solve(self, n: int, top: bool):
        get = self._terms.get
        v = self.relation.solve_outer(get, n, top=True)
        m = 3
        while v is None and m + 1 < n:
            v = self._ward_relation(m).solve_outer(get, n, top=True)
            m += 1
        if v is None:
            self._blocked_above = n
            self._blocked_below = -n
            raise SequenceZeroDivision(n)
        return v

    def extend(self, lo: int, hi: int):
        top = max(hi, -lo)
        while self.hi < top:
            n = self.hi + 1
            v = self._solve(n, top=True)
            self._put(n, v)
            self._put(-n, -v)
        return self


def eds_generate(init: EdsInitials | Iterable, lo: int, hi: int) -> EllipticDivisibilitySequence:
    """EDS with W_2, W_3, W_4 = init, filled on [lo, hi] (and its mirror)."""
    if not isinstance(init, EdsInitials):
        init = EdsInitials(*init)
    return EllipticDivisibilitySequence.from_initials(init).extend(lo, hi)


def with_antisymmetry(seq: TwoSidedSequence) -> TwoSidedSequence:
    """Frozen copy with W_{-h} = -W_h filled in wherever only one side is known."""
    terms = dict(seq.items())
    for h, v in list(terms.items()):
        if -h not in terms and v is not INF:
            terms[-h] = -v
    return TwoSidedSequence(terms)


def _get(W: TwoSidedSequence):
    def get(i):
        v = W[i]
        if v is INF:
            raise IndexUndefined(i, "infinite")
        return v
    return get


def verify_ward_general(W: TwoSidedSequence, m: int, lo: int | None = None,
                        hi: int | None = None, skip_undefined: bool = False) -> Report:
    """Check W_{h-m} W_{h+m} = W_m^2 W_{h-1} W_{h+1} - W_{m-1} W_{m+1} W_h^2."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if lo is None:
        lo = W.lo + max(m, 1)
    if hi is None:
        hi = W.hi - max(m, 1)
    get = _get(W)
    report = Report()
    for h in range(lo, hi + 1):
        try:
            r = (get(h - m) * get(h + m)
                 - get(m) ** 2 * get(h - 1) * get(h + 1)
                 + get(m - 1) * get(m + 1) * get(h) ** 2)
        except IndexUndefined:
            if not skip_undefined:
                raise
            report.skipped.append(h)
            continue
        report.record(h, r)
    return report


def ward_full_residual(W: TwoSidedSequence, h: int, m: int, n: int):
    get = _get(W)
    return (get(h - m) * get(h + m) * get(n) ** 2
            + get(n - h) * get(n + h) * get(m) ** 2
            + get(m - n) * get(m + n) * get(h) ** 2)


def verify_ward_full(W: TwoSidedSequence, triples: Iterable[tuple[int, int, int]]) -> Report:
    """The symmetric relation, one exact zero test per (h, m, n)."""
    report = Report()
    for t in triples:
        report.record(tuple(t), ward_full_residual(W, *t))
    return report


def random_triples(count: int, bound: int, seed: int | None = None,
                   rng: random.Random | None = None) -> list[tuple[int, int, int]]:
    """Triples (h, m, n) drawn uniformly from [-bound, bound]^3.

    The sequence must be known on [-2*bound, 2*bound].
    """
    rng = rng or random.Random(seed)
    return [tuple(rng.randint(-bound, bound) for _ in range(3)) for _ in range(count)]


def _as_int(v, h) -> int:
    try:
        q = as_rational(v)
    except NotRational as exc:
        raise NotIntegral(f"W_{h} = {v} is not rational") from exc
    if q.denominator != 1:
        raise NotIntegral(f"W_{h} = {q} is not an integer")
    return q.numerator


def check_division_property(W: TwoSidedSequence, bound: int) -> Report:
    """gcd(|W_i|, |W_j|) == |W_gcd(i,j)| for 1 <= i, j <= bound.

    Failures are keyed by (i, j) with residual (gcd, |W_gcd(i,j)|).
    """
    vals = {h: abs(_as_int(W[h], h)) for h in range(1, bound + 1)}
    report = Report()
    for i in range(1, bound + 1):
        for j in range(i, bound + 1):
            g = math.gcd(vals[i], vals[j])
            want = vals[math.gcd(i, j)]
            report.checked.append((i, j))
            if g != want:
                report.failures.append(((i, j), (g, want)))
    return report
