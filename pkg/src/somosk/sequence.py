"""Two-sided memoized sequences and three-term Somos recurrences."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator

from .errors import (
    DegenerateFit,
    IndeterminateQuotient,
    IndexUndefined,
    RelationMismatch,
    SequenceZeroDivision,
)
from .exact_field import QuadScalar, format_scalar, parse_scalar


class _Infinite:
    """Marker for an infinite term, e.g. e_h when A_h = 0."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __mul__(self, other):
        if other is not self and other == 0:
            raise IndeterminateQuotient("infinite times zero")
        return self

    __rmul__ = __mul__

    def __add__(self, other):
        if other is self:
            raise IndeterminateQuotient("infinite plus infinite")
        return self

    __radd__ = __add__

    def __neg__(self):
        return self

    def __reduce__(self):
        return (_Infinite, ())


INF = _Infinite()


def is_finite(v) -> bool:
    return v is not INF


def to_scalar(v):
    """Normalize user input (int, str, Fraction, QuadScalar) to a term value."""
    if v is INF:
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not sequence values")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return INF if v.strip() == "inf" else parse_scalar(v)
    if isinstance(v, (Fraction, QuadScalar)):
        return v
    raise TypeError(f"unsupported sequence value {v!r}")


@dataclass(frozen=True)
class SomosRelation:
    """A three-term relation of gap k.

    For k = 2m:   D[h-m] D[h+m]   = lam D[h-1] D[h+1] + mu D[h]^2
    For k = 2m+1: D[h-m] D[h+m+1] = lam D[h-1] D[h+2] + mu D[h] D[h+1]
    """

    gap: int
    lam: Any
    mu: Any

    def __post_init__(self):
        if self.gap < 2:
            raise ValueError(f"gap must be at least 2, got {self.gap}")
        object.__setattr__(self, "lam", to_scalar(self.lam))
        object.__setattr__(self, "mu", to_scalar(self.mu))

    @property
    def half(self) -> int:
        return self.gap // 2

    @property
    def is_even(self) -> bool:
        return self.gap % 2 == 0

    def terms(self, h: int):
        """Index pairs (outer, lam pair, mu pair) for the instance centred at h."""
        m = self.half
        if self.is_even:
            return (h - m, h + m), (h - 1, h + 1), (h, h)
        return (h - m, h + m + 1), (h - 1, h + 2), (h, h + 1)

    def span(self, h: int) -> tuple[int, int]:
        m = self.half
        return h - m, h + self.gap - m

    def centers(self, lo: int, hi: int) -> range:
        """Centres h whose whole instance lies inside [lo, hi]."""
        m = self.half
        return range(lo + m, hi - (self.gap - m) + 1)

    def residual(self, get: Callable[[int], Any], h: int):
        (i, j), (p, q), (r, s) = self.terms(h)
        return get(i) * get(j) - self.lam * get(p) * get(q) - self.mu * get(r) * get(s)

    def solve_outer(self, get: Callable[[int], Any], n: int, top: bool = True):
        """Solve the instance with n as its top (or bottom) outer index.

        ``get`` returns None for unknown indices.  Returns None when some
        needed term is unknown or infinite, or the other outer term is zero.
        """
        h = n - (self.gap - self.half) if top else n + self.half
        (i, j), (p, q), (r, s) = self.terms(h)
        partner = i if top else j
        if n in (p, q, r, s):
            return None
        vals = [get(k) for k in (partner, p, q, r, s)]
        if any(v is None or v is INF for v in vals):
            return None
        d, vp, vq, vr, vs = vals
        if d == 0:
            return None
        return (self.lam * vp * vq + self.mu * vr * vs) / d

    def __str__(self):
        return f"{self.gap}:{format_scalar(self.lam)},{format_scalar(self.mu)}"

    @classmethod
    def parse(cls, text: str) -> SomosRelation:
        gap, _, coeffs = text.partition(":")
        lam, sep, mu = coeffs.partition(",")
        if not sep:
            raise ValueError(f"bad relation {text!r}; expected k:lambda,mu")
        return cls(int(gap), parse_scalar(lam), parse_scalar(mu))

    def to_json(self) -> dict:
        return {"gap": self.gap, "lambda": format_scalar(self.lam), "mu": format_scalar(self.mu)}

    @classmethod
    def from_json(cls, obj: dict) -> SomosRelation:
        return cls(int(obj["gap"]), parse_scalar(obj["lambda"]), parse_scalar(obj["mu"]))


@dataclass
class Report:
    """Outcome of an exact verification pass."""

    checked: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures

    @property
    def first_failure(self):
        return self.failures[0][0] if self.failures else None

    def __bool__(self):
        return self.holds

    def record(self, key, residual):
        self.checked.append(key)
        if residual != 0:
            self.failures.append((key, residual))


class TwoSidedSequence:
    """A map from integer index to term, optionally extendable by recurrence.

    Terms are write-once.  With a ``relation`` the sequence grows on demand in
    either direction; ``fallbacks`` are longer relations tried when the
    primary one would divide by zero.
    """

    def __init__(self, terms=None, relation: SomosRelation | None = None, fallbacks=()):
        self._terms: dict[int, Any] = {}
        for h, v in dict(terms or {}).items():
            self._terms[int(h)] = to_scalar(v)
        self.relation = relation
        self.fallbacks = tuple(fallbacks)
        self._blocked_above: int | None = None
        self._blocked_below: int | None = None

    @property
    def extensible(self) -> bool:
        return self.relation is not None

    @property
    def lo(self) -> int:
        return min(self._terms)

    @property
    def hi(self) -> int:
        return max(self._terms)

    def __len__(self):
        return len(self._terms)

    def __contains__(self, h):
        return h in self._terms

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._terms))

    def items(self):
        return [(h, self._terms[h]) for h in sorted(self._terms)]

    def get(self, h: int, default=None):
        """Known term at h without triggering extension."""
        return self._terms.get(h, default)

    def __getitem__(self, h: int):
        try:
            return self._terms[h]
        except KeyError:
            pass
        if not self.extensible:
            raise IndexUndefined(h)
        if (self._blocked_above is not None and h >= self._blocked_above) or (
            self._blocked_below is not None and h <= self._blocked_below
        ):
            raise IndexUndefined(h, "past a hole")
        try:
            self.extend(min(h, self.lo), max(h, self.hi))
        except SequenceZeroDivision as exc:
            raise IndexUndefined(h, f"past a hole at {exc.index}") from exc
        return self._terms[h]

    def window(self, lo: int, hi: int) -> list:
        return [self[h] for h in range(lo, hi + 1)]

    def _put(self, h: int, v):
        old = self._terms.get(h)
        if old is not None and old != v:
            raise ValueError(f"term {h} already set to {old}, refusing {v}")
        self._terms[h] = v

    def _relations(self):
        return (self.relation, *self.fallbacks)

    def _solve(self, n: int, top: bool):
        for rel in self._relations():
            v = rel.solve_outer(self._terms.get, n, top=top)
            if v is not None:
                return v
        if top:
            self._blocked_above = n
        else:
            self._blocked_below = n
        raise SequenceZeroDivision(n)

    def extend(self, lo: int, hi: int) -> TwoSidedSequence:
        """Fill every index in [lo, hi] outward from the known window."""
        if not self.extensible:
            raise ValueError("frozen sequence cannot be extended")
        while self.hi < hi:
            n = self.hi + 1
            self._put(n, self._solve(n, top=True))
        while self.lo > lo:
            n = self.lo - 1
            self._put(n, self._solve(n, top=False))
        return self

    def freeze(self) -> TwoSidedSequence:
        """Immutable snapshot of the known terms (no generator)."""
        return TwoSidedSequence(self._terms)

    def map(self, fn: Callable[[int, Any], Any]) -> TwoSidedSequence:
        return TwoSidedSequence({h: fn(h, v) for h, v in self._terms.items()})

    def __repr__(self):
        if not self._terms:
            return "TwoSidedSequence({})"
        return f"TwoSidedSequence(lo={self.lo}, hi={self.hi}, relation={self.relation})"


def _generate(init: Iterable, relation: SomosRelation, gap: int, lo: int, hi: int,
              start: int, fallbacks) -> TwoSidedSequence:
    init = [to_scalar(v) for v in init]
    if relation.gap != gap:
        raise ValueError(f"expected a gap-{gap} relation, got gap {relation.gap}")
    if len(init) != gap:
        raise ValueError(f"need {gap} initial values, got {len(init)}")
    if any(v is INF for v in init):
        raise ValueError("initial values must be finite")
    seq = TwoSidedSequence(
        {start + i: v for i, v in enumerate(init)}, relation=relation, fallbacks=fallbacks
    )
    return seq.extend(lo, hi)


def extend_somos4(init, relation: SomosRelation, lo: int, hi: int, start: int = 0,
                  fallbacks=()) -> TwoSidedSequence:
    """Somos-4 sequence from four consecutive values at ``start``..``start+3``."""
    return _generate(init, relation, 4, lo, hi, start, fallbacks)


def extend_somos5(init, relation: SomosRelation, lo: int, hi: int, start: int = 0,
                  fallbacks=()) -> TwoSidedSequence:
    return _generate(init, relation, 5, lo, hi, start, fallbacks)


def verify_relation(seq: TwoSidedSequence, rel: SomosRelation, lo: int | None = None,
                    hi: int | None = None, skip_undefined: bool = False) -> Report:
    """Check ``rel`` exactly at every centre h in [lo, hi].

    Without bounds, every centre whose instance lies in the known window is
    checked.  Undefined or infinite terms raise IndexUndefined unless
    ``skip_undefined`` is set.
    """
    if lo is None or hi is None:
        centers = rel.centers(seq.lo, seq.hi)
        lo = centers.start if lo is None else lo
        hi = centers.stop - 1 if hi is None else hi
    report = Report()

    def get(i):
        v = seq[i]
        if v is INF:
            raise IndexUndefined(i, "infinite")
        return v

    for h in range(lo, hi + 1):
        try:
            r = rel.residual(get, h)
        except IndexUndefined:
            if not skip_undefined:
                raise
            report.skipped.append(h)
            continue
        report.record(h, r)
    return report


def e_of(seq: TwoSidedSequence, h: int):
    """The quotient A[h-1] A[h+1] / A[h]^2."""
    num = seq[h - 1] * seq[h + 1]
    den = seq[h] * seq[h]
    if den == 0:
        if num == 0:
            raise IndeterminateQuotient(f"e_{h} is 0/0")
        return INF
    return num / den


def e_sequence_of(seq: TwoSidedSequence, lo: int | None = None,
                  hi: int | None = None) -> TwoSidedSequence:
    """Frozen sequence of e_h over the window (indeterminate entries left out)."""
    lo = seq.lo + 1 if lo is None else lo
    hi = seq.hi - 1 if hi is None else hi
    terms = {}
    for h in range(lo, hi + 1):
        try:
            terms[h] = e_of(seq, h)
        except (IndeterminateQuotient, IndexUndefined):
            continue
    return TwoSidedSequence(terms)


def fit_three_term(seq: TwoSidedSequence, gap: int, h0: int | None = None,
                   mismatch=RelationMismatch) -> SomosRelation:
    """Recover (lam, mu) of a gap-4 or gap-5 relation from two instances.

    Uses the instances centred at h0-1 and h0, then checks the fit on every
    centre in the known window.
    """
    probe = SomosRelation(gap, 0, 0)

    def row(h):
        (i, j), (p, q), (r, s) = probe.terms(h)
        vals = [seq.get(k) for k in (i, j, p, q, r, s)]
        if any(v is None or v is INF or v == 0 for v in vals):
            return None
        vi, vj, vp, vq, vr, vs = vals
        return vp * vq, vr * vs, vi * vj

    def solve(h):
        r1, r2 = row(h - 1), row(h)
        if r1 is None or r2 is None:
            return None
        a1, b1, c1 = r1
        a2, b2, c2 = r2
        det = a1 * b2 - a2 * b1
        if det == 0:
            return None
        return (c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det

    if h0 is not None:
        found = solve(h0)
        if found is None:
            raise DegenerateFit(f"window at h0 = {h0} is degenerate or incomplete")
    else:
        found = None
        for h in probe.centers(seq.lo, seq.hi):
            found = solve(h + 1)
            if found is not None:
                break
        if found is None:
            raise DegenerateFit(f"no nondegenerate gap-{gap} window in the sequence")
    rel = SomosRelation(gap, *found)
    report = verify_relation(seq if not seq.extensible else seq.freeze(), rel,
                             skip_undefined=True)
    if not report.holds:
        raise mismatch(f"fitted relation {rel} fails at h = {report.first_failure}")
    return rel
