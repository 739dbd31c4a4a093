"""somosk command line: gen, fit, lift, curve, verify.

Exit codes: 0 ok, 2 bad input, 3 zero division during generation,
4 not a Somos-4 (or not fittable), 5 verification failure, 6 point not on curve.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fileformat
from .curve import (
    CurveModel,
    constants_from_e,
    e_sequence,
    parse_point,
    verify_corollary,
    verify_prop_basic,
)
from .errors import (
    DegenerateFit,
    DegenerateWindow,
    IndexUndefined,
    NonConstantInvariants,
    PointNotOnCurve,
    RelationMismatch,
    SequenceZeroDivision,
)
from .exact_field import format_rat, format_scalar, parse_scalar
from .lift import fit_somos4, lift_somos4
from .sequence import (
    SomosRelation,
    TwoSidedSequence,
    extend_somos4,
    extend_somos5,
    verify_relation,
)
from .somos5 import fit_somos5
from .ward import (
    eds_generate,
    random_triples,
    verify_ward_full,
    verify_ward_general,
    with_antisymmetry,
)

EXIT_PARSE = 2
EXIT_ZERO_DIVISION = 3
EXIT_NOT_SOMOS4 = 4
EXIT_VERIFY = 5
EXIT_NOT_ON_CURVE = 6

# options whose values may start with '-' (e.g. --M -2,-2)
_VALUE_OPTS = {"--range", "--init", "--coeffs", "--M", "--model", "--k", "--relation",
               "--ward-m", "--start", "--h0", "--seed"}


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"bad range {text!r}; expected a..b")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a..b") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def parse_list(text: str) -> list:
    try:
        return [parse_scalar(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_int_list(text: str) -> list[int]:
    if ".." in text:
        lo, hi = parse_range(text)
        return list(range(lo, hi + 1))
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def _read(path: str):
    try:
        if path == "-":
            return fileformat.loads(sys.stdin.read())
        return fileformat.load(path)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _emit(text: str):
    sys.stdout.write(text)


def cmd_gen(args) -> int:
    lo, hi = parse_range(args.range)
    init = parse_list(args.init)
    if args.eds:
        if len(init) != 3:
            raise UsageError("--eds takes --init W2,W3,W4")
        try:
            W = eds_generate(init, lo, hi)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        seq = TwoSidedSequence({h: v for h, v in W.items() if lo <= h <= hi})
        _emit(fileformat.dumps(seq, args.format))
        return 0
    coeffs = parse_list(args.coeffs or "")
    if len(coeffs) != 2:
        raise UsageError("--coeffs takes lambda,mu")
    if args.gap not in (4, 5):
        raise UsageError("--gap must be 4 or 5")
    if len(init) != args.gap:
        raise UsageError(f"--init needs {args.gap} values")
    rel = SomosRelation(args.gap, *coeffs)
    start = args.start if args.start is not None else lo
    engine = extend_somos4 if args.gap == 4 else extend_somos5
    seq = engine(init, rel, min(lo, start), max(hi, start + args.gap - 1), start=start)
    seq = TwoSidedSequence({h: v for h, v in seq.items() if lo <= h <= hi})
    _emit(fileformat.dumps(seq, args.format, relation=rel))
    return 0


def cmd_fit(args) -> int:
    seq, _ = _read(args.input)
    fit = fit_somos4 if args.gap == 4 else fit_somos5
    rel = fit(seq, args.h0)
    if args.format == "json":
        _emit(json.dumps(rel.to_json()) + "\n")
    else:
        _emit(f"{rel}\n")
    return 0


def cmd_lift(args) -> int:
    seq, _ = _read(args.input)
    ks = parse_int_list(args.k)
    if min(ks) < 4:
        raise UsageError("gaps must be at least 4")
    results = lift_somos4(seq, ks)
    ok = all(report.holds and report.checked for _, report in results)
    if args.format == "json":
        rows = [dict(rel.to_json(), verified=bool(rep.holds and rep.checked),
                     checked=len(rep.checked)) for rel, rep in results]
        _emit(json.dumps({"relations": rows}, indent=2) + "\n")
    else:
        for rel, rep in results:
            verdict = "verified" if rep.holds and rep.checked else (
                f"failed at h={rep.first_failure}" if rep.failures else "unchecked")
            _emit(f"{rel}\t{verdict}\n")
    return 0 if ok else EXIT_VERIFY


def cmd_curve(args) -> int:
    try:
        E = CurveModel.parse(args.model)
        M = parse_point(args.M)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lo, hi = parse_range(args.range)
    e = e_sequence(E, M, lo, hi)
    constants = None
    verified = None
    if args.constants:
        wide = e_sequence(E, M, lo - 3, hi + 3)
        constants = constants_from_e(wide)
        verified = bool(verify_prop_basic(wide, constants, skip_undefined=True)
                        and verify_corollary(wide, constants, skip_undefined=True))
    if args.format == "json":
        obj = json.loads(fileformat.dump_json(e))
        del obj["relation"]
        if constants is not None:
            obj["constants"] = constants.to_json()
            obj["verified"] = verified
        _emit(json.dumps(obj, indent=2) + "\n")
    else:
        _emit(fileformat.dump_tsv(e))
        if constants is not None:
            _emit(f"# alpha_sq={format_rat(constants.alpha_sq)} beta={format_rat(constants.beta)} "
                  f"gamma={format_rat(constants.gamma)}\n")
            _emit(f"# invariant identities {'verified' if verified else 'FAILED'}\n")
    return 0 if verified in (None, True) else EXIT_VERIFY


def cmd_verify(args) -> int:
    seq, stored = _read(args.input)
    lines = []
    ok = True
    try:
        relations = [SomosRelation.parse(r) for r in args.relation or []]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not relations and stored is not None and not (args.ward_m or args.ward_full):
        relations = [stored]
    for rel in relations:
        rep = verify_relation(seq, rel, skip_undefined=True)
        ok &= rep.holds
        lines.append(_summary(f"relation {rel}", rep))
    if args.ward_m or args.ward_full:
        W = with_antisymmetry(seq)
        if args.ward_m:
            for m in parse_int_list(args.ward_m):
                rep = verify_ward_general(W, m, skip_undefined=True)
                ok &= rep.holds
                lines.append(_summary(f"ward m={m}", rep))
        if args.ward_full:
            bound = min(-W.lo, W.hi) // 2
            triples = random_triples(args.samples, bound, seed=args.seed)
            rep = verify_ward_full(W, triples)
            ok &= rep.holds
            bad = {key for key, _ in rep.failures}
            for t in triples:
                lines.append(f"{t[0]},{t[1]},{t[2]}\t{'fail' if t in bad else 'ok'}")
            lines.append(_summary(f"ward full ({len(triples)} triples)", rep))
    if not lines:
        raise UsageError("nothing to verify: give --relation, --ward-m or --ward-full")
    if args.format == "json":
        _emit(json.dumps({"ok": ok, "report": lines}, indent=2) + "\n")
    else:
        _emit("\n".join(lines) + "\n")
    return 0 if ok else EXIT_VERIFY


def _summary(label, rep) -> str:
    if rep.holds:
        return f"{label}\tok\t{len(rep.checked)} checked"
    key, residual = rep.failures[0]
    return (f"{label}\tFAIL\t{len(rep.failures)} of {len(rep.checked)} failed; "
            f"first at {key} (residual {format_scalar(residual)})")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="somosk", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a Somos-4/5 or EDS")
    g.add_argument("--gap", type=int, default=4)
    g.add_argument("--coeffs", help="lambda,mu")
    g.add_argument("--init", required=True)
    g.add_argument("--start", type=int, help="index of the first initial value (default: range start)")
    g.add_argument("--eds", action="store_true", help="--init is W2,W3,W4 of an EDS")
    g.add_argument("--range", required=True)
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("fit", parents=[common], help="fit a gap-4 or gap-5 relation")
    f.add_argument("input")
    f.add_argument("--gap", type=int, choices=(4, 5), default=4)
    f.add_argument("--h0", type=int)
    f.set_defaults(func=cmd_fit)

    lf = sub.add_parser("lift", parents=[common], help="derive Somos-k relations from a Somos-4")
    lf.add_argument("input")
    lf.add_argument("--k", required=True, help="gaps, e.g. 5,6,8 or 5..12")
    lf.set_defaults(func=cmd_lift)

    c = sub.add_parser("curve", parents=[common], help="e_h = -x(M + hS) on a curve")
    c.add_argument("--model", required=True, help="a1,a2,a3,a4")
    c.add_argument("--M", required=True, help="x,y or inf")
    c.add_argument("--range", default="0..10")
    c.add_argument("--constants", action="store_true")
    c.set_defaults(func=cmd_curve)

    v = sub.add_parser("verify", parents=[common], help="check relations or Ward identities")
    v.add_argument("input")
    v.add_argument("--relation", action="append", help="k:lambda,mu (repeatable)")
    v.add_argument("--ward-m", help="m values, e.g. 2..6")
    v.add_argument("--ward-full", action="store_true")
    v.add_argument("--samples", type=int, default=200)
    v.set_defaults(func=cmd_verify)
    return p


def _join_values(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_join_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"somosk: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SequenceZeroDivision as exc:
        print(f"somosk: zero division at index {exc.index}", file=sys.stderr)
        return EXIT_ZERO_DIVISION
    except (DegenerateFit, RelationMismatch, DegenerateWindow, NonConstantInvariants) as exc:
        print(f"somosk: not a Somos-4: {exc}", file=sys.stderr)
        return EXIT_NOT_SOMOS4
    except PointNotOnCurve as exc:
        print(f"somosk: {exc}", file=sys.stderr)
        return EXIT_NOT_ON_CURVE
    except IndexUndefined as exc:
        print(f"somosk: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
