"""From a Somos-4 to its invariants, companion EDS and every Somos-k relation.

A Somos-4 A[h-2] A[h+2] = lam A[h-1] A[h+1] + mu A[h]^2 has
alpha^2 = lam and beta = -mu.  Its companion EDS W starts
0, 1, alpha, beta, -alpha^5 + alpha beta gamma and lives in Q(alpha); the
gap-k coefficients are built from W and are always rational.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import EllipticData, constants_from_e, verify_prop_basic
from .errors import (
    DegenerateWindow,
    IndexUndefined,
    NonConstantInvariants,
    NonRationalCoefficient,
    NotRational,
    NotSomos4,
    SequenceZeroDivision,
)
from .exact_field import QuadScalar, as_rational
from .sequence import (
    INF,
    Report,
    SomosRelation,
    TwoSidedSequence,
    e_sequence_of,
    fit_three_term,
    to_scalar,
    verify_relation,
)
from .ward import EllipticDivisibilitySequence


def fit_somos4(seq: TwoSidedSequence, h0: int | None = None) -> SomosRelation:
    return fit_three_term(seq, 4, h0, mismatch=NotSomos4)


def elliptic_data_from_somos4(seq: TwoSidedSequence, rel: SomosRelation | None = None) -> EllipticData:
    """(alpha^2, beta, gamma) of a Somos-4, with gamma checked at three or more h."""
    if rel is None:
        rel = fit_somos4(seq)
    if rel.gap != 4:
        raise ValueError("need a gap-4 relation")
    lam, mu = as_rational(rel.lam), as_rational(rel.mu)
    e = e_sequence_of(seq.freeze() if seq.extensible else seq)
    data = constants_from_e(e)
    if data.alpha_sq != lam or data.beta != -mu:
        raise NonConstantInvariants(
            f"e-sequence gives ({data.alpha_sq}, {data.beta}) but relation says ({lam}, {-mu})")
    windows = sum(
        1 for h in range(e.lo + 1, e.hi)
        if all(e.get(i) not in (None, INF) for i in (h - 1, h, h + 1)) and e.get(h) != 0
    )
    if windows < 3:
        raise DegenerateWindow(f"gamma checked at only {windows} indices; need 3")
    return data


@dataclass
class CompanionEDS:
    W: EllipticDivisibilitySequence
    source: EllipticData

    def __getitem__(self, h):
        return self.W[h]


def companion_eds(data: EllipticData, lo: int = 0, hi: int = 8) -> CompanionEDS:
    """Seed W_0..W_4 = 0, 1, alpha, beta, -alpha^5 + alpha beta gamma and extend.

    alpha is the positive rational root when alpha^2 is a square, otherwise
    the generator of Q(sqrt(alpha^2)); the other sign only flips W at even
    indices.
    """
    alpha = data.alpha
    w4 = -alpha ** 5 + alpha * data.beta * data.gamma
    beta = QuadScalar(data.beta, 0, data.d) if isinstance(alpha, QuadScalar) else data.beta
    W = EllipticDivisibilitySequence(alpha, beta, w4)
    try:
        W.extend(lo, hi)
    except SequenceZeroDivision:
        pass  # the hole resurfaces as IndexUndefined on access
    return CompanionEDS(W, data)


def parity_structure_holds(W, h: int) -> bool:
    """Odd-index terms rational, even-index terms rational multiples of alpha."""
    v = W[h]
    if not isinstance(v, QuadScalar):
        return True
    return v.a == 0 if h % 2 == 0 else v.b == 0


def _rational(x, what):
    try:
        return as_rational(x)
    except NotRational as exc:
        raise NonRationalCoefficient(f"{what} = {x} is not rational") from exc


def somos_k_relation(W, k: int) -> SomosRelation:
    """The three-term gap-k relation satisfied by every sequence sharing W's data."""
    if isinstance(W, CompanionEDS):
        W = W.W
    if k < 2:
        raise ValueError("gap must be at least 2")
    m = k // 2
    if k % 2 == 0:
        scale = W[1] * W[1]
        lam = W[m] * W[m] / scale
        mu = -W[m - 1] * W[m + 1] / scale
    else:
        scale = W[1] * W[2]
        lam = W[m] * W[m + 1] / scale
        mu = -W[m - 1] * W[m + 2] / scale
    return SomosRelation(k, _rational(lam, f"lambda_{k}"), _rational(mu, f"mu_{k}"))


def fill_in_relations(data: EllipticData, kmax: int = 10) -> list[SomosRelation]:
    """Gap 5..kmax relations, for leapfrogging zero terms during extension."""
    W = companion_eds(data, 0, kmax // 2 + 2)
    return [somos_k_relation(W, k) for k in range(5, kmax + 1)]


def twist_equivalence(seq: TwoSidedSequence, alpha) -> TwoSidedSequence:
    """A'_h = alpha^(-h(h-1)/2) A_h on the known window.

    If A has gap-4 coefficients (alpha^2, -beta) then A' has
    (1/alpha, -beta/alpha^4); its e-sequence is e_h / alpha.
    """
    alpha = to_scalar(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    inv = 1 / alpha
    return seq.map(lambda h, v: v if v is INF else inv ** (h * (h - 1) // 2) * v)


def ebar_from_eds(W, lo: int = 1, hi: int = 8) -> TwoSidedSequence:
    """ebar_m = W_{m-1} W_{m+1} / W_m^2 (INF where W_m = 0)."""
    if isinstance(W, CompanionEDS):
        W = W.W
    W.extend(lo - 1, hi + 1)
    return e_sequence_of(W.freeze(), lo, hi)


def _finite(seq, i):
    v = seq[i] if seq.extensible else seq.get(i)
    if v is None or v is INF:
        raise IndexUndefined(i, "undefined or infinite")
    return v


def symmetric_kernel_check(e: TwoSidedSequence, ebar: TwoSidedSequence,
                           data: EllipticData | None, pairs) -> Report:
    """The two identities whose symmetry in e_h <-> ebar_m drives the induction.

    Failures are keyed (h, m, "even") or (h, m, "odd").  When ``data`` is
    given, both sequences are first checked against it.
    """
    if data is not None:
        for seq in (e, ebar):
            pre = verify_prop_basic(seq, data, skip_undefined=True)
            if not pre.holds:
                raise NonConstantInvariants(f"sequence does not satisfy {data}")

    def E(i):
        return _finite(e, i)

    def B(i):
        return _finite(ebar, i)

    report = Report()
    for h, m in pairs:
        lhs = (E(h - 1) - B(m)) * E(h) ** 2 * (E(h + 1) - B(m))
        rhs = (B(m - 1) - E(h)) * B(m) ** 2 * (B(m + 1) - E(h))
        report.record((h, m, "even"), lhs - rhs)
        pb = B(m) * B(m + 1)
        pe = E(h) * E(h + 1)
        lhs = (E(h - 1) * E(h) - pb) * pe * (E(h + 1) * E(h + 2) - pb)
        rhs = (B(m - 1) * B(m) - pe) * pb * (B(m + 1) * B(m + 2) - pe)
        report.record((h, m, "odd"), lhs - rhs)
    return report


def lift_somos4(seq: TwoSidedSequence, ks) -> list[tuple[SomosRelation, Report]]:
    """End to end: fit, extract invariants, build W, derive and verify each gap."""
    rel = fit_somos4(seq)
    data = elliptic_data_from_somos4(seq, rel)
    W = companion_eds(data, 0, max(ks) // 2 + 2)
    frozen = seq.freeze() if seq.extensible else seq
    out = []
    for k in ks:
        derived = somos_k_relation(W, k)
        out.append((derived, verify_relation(frozen, derived, skip_undefined=True)))
    return out

