"""Command-line interface.

Subcommands:
    construct   build all formal endomorphisms from an alpha or beta seed
    verify      test an x-part against the defining functional equation
    identify    apply a coordinate map pointwise and look for a scalar
    example     run one of the four bundled worked examples (1..4)

Exit codes: 0 success, 1 verification failure / example mismatch,
2 incompatible seed, 3 parse or usage error, 4 invalid curve parameters.

With --format records the output is line-oriented key=value pairs, one
solution block per admissible constant term.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .curve import apply_map, check_map, enumerate_points, identify_scalar, on_curve
from .errors import (
    IncompatibleSeed,
    InvalidCurveParameters,
    ParseError,
    SeedError,
    ZeroDenominator,
)
from .exprparse import parse_field_element, parse_rational_function
from .gf3field import DEFAULT_MODULI, FieldParams
from .isocore import (
    CurveParams,
    Seed,
    construct,
    construct_with_report,
    verify_functional_equation,
)
from .ratrec import Polynomial, RationalFunction, derive_map_pair, pade

PREC_MIN, PREC_MAX = 16, 8192
TEXT_TERMS_SHOWN = 10


@dataclass(frozen=True)
class JobSpec:
    """A fully parsed command invocation."""

    field: FieldParams
    curve: CurveParams
    prec: int
    fmt: str


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 means IncompatibleSeed
    # here, so route usage problems to the parse-error code instead.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _add_common(p, need_curve=True):
    p.add_argument("--field", default="3^1", metavar="3^K",
                   help="field order as 3^k (default 3^1)")
    p.add_argument("--modulus", default=None, metavar="TEXT",
                   help="monic irreducible modulus in t (default: built-in table)")
    if need_curve:
        p.add_argument("--A", required=True, metavar="TEXT", help="curve coefficient A")
        p.add_argument("--B", default="0", metavar="TEXT", help="curve coefficient B")
        p.add_argument("--c", default="1", metavar="TEXT",
                       help="scale constant of the y-coordinate map")
    p.add_argument("--prec", type=int, default=64, metavar="N",
                   help=f"working precision in [{PREC_MIN}, {PREC_MAX}]")
    p.add_argument("--format", choices=("text", "records"), default="text",
                   help="human text or machine key=value records")


def build_parser():
    parser = _Parser(prog="char3iso",
                     description="Formal endomorphisms of y^2 = x^3 + A x + B "
                                 "in characteristic three.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("construct", help="build endomorphisms from a seed")
    _add_common(p)
    p.add_argument("--seed-alpha", metavar="TEXT",
                   help="alpha seed as a rational function in x")
    p.add_argument("--seed-beta", metavar="TEXT",
                   help="beta seed as a rational function in x")
    p.add_argument("--seed-coeffs", metavar="LIST",
                   help="polynomial seed as comma-separated coefficients, "
                        "constant term first")
    p.add_argument("--seed-kind", choices=("alpha", "beta"), default="alpha",
                   help="which part --seed-coeffs describes (default alpha)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check an x-part against the defining equation")
    _add_common(p)
    p.add_argument("--eta", metavar="TEXT", help="x-part as a rational function")
    p.add_argument("--eta-coeffs", metavar="LIST",
                   help="x-part polynomial as comma-separated coefficients")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identify", help="apply a map pointwise and find its scalar")
    _add_common(p)
    p.add_argument("--fx", required=True, metavar="TEXT",
                   help="x-coordinate map as a rational function")
    p.add_argument("--fy-factor", required=True, metavar="TEXT",
                   help="multiplier of y in the second coordinate")
    p.add_argument("--max-scalar", type=int, default=10, metavar="M",
                   help="largest scalar to try (default 10)")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("example", help="reproduce a bundled worked example")
    p.add_argument("n", type=int, choices=(1, 2, 3, 4), help="example number")
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.set_defaults(func=cmd_example)

    return parser


# ---- shared construction of a JobSpec ------------------------------------

def _parse_field(args):
    text = args.field.strip()
    if not text.startswith("3^"):
        raise ParseError(0, "field must be written as 3^k")
    try:
        k = int(text[2:])
    except ValueError:
        raise ParseError(2, "field degree must be an integer") from None
    if k < 1:
        raise ParseError(2, "field degree must be positive")
    if args.modulus is not None:
        modulus = _parse_modulus(args.modulus, k)
        return FieldParams(k, modulus)
    if k not in DEFAULT_MODULI:
        raise ParseError(0, f"no default modulus for degree {k}; pass --modulus")
    return FieldParams(k)


def _parse_modulus(text, degree):
    """A monic degree-k polynomial in t, as coefficients low to high."""
    prime = FieldParams(1)
    rf = parse_rational_function(text.replace("t", "x"), prime)
    if rf.den != Polynomial.one(prime):
        raise ParseError(0, "modulus must be a polynomial")
    coeffs = [c.coeffs[0] for c in rf.num.coeffs]
    if len(coeffs) != degree + 1:
        raise ParseError(0, f"modulus must have degree {degree}")
    return coeffs


def _job_from_args(args):
    field = _parse_field(args)
    A = parse_field_element(args.A, field)
    B = parse_field_element(args.B, field)
    c = parse_field_element(args.c, field)
    curve = CurveParams(field, A, B, c)
    if not PREC_MIN <= args.prec <= PREC_MAX:
        raise ParseError(0, f"prec must lie in [{PREC_MIN}, {PREC_MAX}]")
    return JobSpec(field=field, curve=curve, prec=args.prec, fmt=args.format)


def _seed_from_args(args, field):
    given = [s for s in (args.seed_alpha, args.seed_beta, args.seed_coeffs)
             if s is not None]
    if len(given) != 1:
        raise ParseError(0, "give exactly one of --seed-alpha, --seed-beta, "
                            "--seed-coeffs")
    if args.seed_alpha is not None:
        return Seed.alpha(parse_rational_function(args.seed_alpha, field))
    if args.seed_beta is not None:
        return Seed.beta(parse_rational_function(args.seed_beta, field))
    coeffs = [parse_field_element(part.strip(), field)
              for part in args.seed_coeffs.split(",")]
    poly = Polynomial(field, coeffs)
    src = RationalFunction.from_polynomial(poly)
    return Seed.alpha(src) if args.seed_kind == "alpha" else Seed.beta(src)


def modulus_text(field):
    parts = []
    for i in range(field.degree, -1, -1):
        c = field.modulus[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            ts = "t" if i == 1 else f"t^{i}"
            parts.append(ts if c == 1 else f"{c}*{ts}")
    return "+".join(parts)


def _terms_text(series):
    return " ".join(f"{e}:{c}" for e, c in series.nonzero_terms()) or "0"


def _emit_header(out, job, command):
    out(f"command={command}")
    out(f"field=3^{job.field.degree}")
    out(f"modulus={modulus_text(job.field)}")
    out(f"A={job.curve.A}")
    out(f"B={job.curve.B}")
    out(f"c={job.curve.c}")
    out(f"prec={job.prec}")


# ---- construct ------------------------------------------------------------

def _solution_rows(job, endo):
    bound = max(1, job.prec // 2 - 2)
    rational = pade(endo.eta, bound, bound)
    rows = {
        "gamma0": str(endo.gamma0),
        "eta_coeffs": _terms_text(endo.eta),
        "certified_prec": str(endo.prec),
        "rational": "none",
        "y_factor": "none",
    }
    if rational is not None:
        fx, fy = derive_map_pair(job.curve, rational)
        rows["rational"] = str(fx)
        rows["y_factor"] = str(fy)
    return rows


def _print_construct_records(job, seed, report, endos, out):
    _emit_header(out, job, "construct")
    out(f"seed_kind={seed.kind}")
    out(f"seed={seed.source}")
    out(f"status={'ok' if endos else 'incompatible'}")
    out(f"psi0={report.psi0}")
    out(f"principal_part_ok={str(report.principal_part_ok).lower()}")
    out(f"beta_minus1={report.beta_minus1}")
    out(f"alpha1={report.alpha1}")
    out(f"num_solutions={len(endos)}")
    for i, endo in enumerate(endos):
        out(f"solution={i}")
        for key, value in _solution_rows(job, endo).items():
            out(f"{key}={value}")


def _print_construct_text(job, seed, report, endos, out):
    curve = job.curve
    out(f"curve: y^2 = x^3 + ({curve.A})*x + ({curve.B}) over "
        f"GF(3^{job.field.degree}), modulus {modulus_text(job.field)}, c = {curve.c}")
    out(f"seed ({seed.kind}): {seed.source}")
    out(f"psi(0) = {report.psi0}; principal part ok: {report.principal_part_ok}; "
        f"[x^-1]beta = {report.beta_minus1}; [x^1]alpha = {report.alpha1}")
    out(f"solutions: {len(endos)}")
    for i, endo in enumerate(endos):
        rows = _solution_rows(job, endo)
        out(f"  #{i}: gamma0 = {rows['gamma0']}")
        shown = list(endo.eta.nonzero_terms())[:TEXT_TERMS_SHOWN]
        body = " + ".join(f"({c})*x^{e}" for e, c in shown) or "0"
        more = "" if len(list(endo.eta.nonzero_terms())) <= TEXT_TERMS_SHOWN else " + ..."
        out(f"      eta = {body}{more}  (exact to x^{endo.prec})")
        if rows["rational"] != "none":
            out(f"      rational form: {rows['rational']}")
            out(f"      y-multiplier:  y * {rows['y_factor']}")
        else:
            out(f"      no rational form within degree {max(1, job.prec // 2 - 2)}")


def cmd_construct(args):
    job = _job_from_args(args)
    seed = _seed_from_args(args, job.field)
    out = print
    try:
        report, endos = construct_with_report(job.curve, seed, job.prec)
    except IncompatibleSeed as exc:
        if exc.report is not None and job.fmt == "records":
            _print_construct_records(job, seed, exc.report, [], out)
        else:
            out(f"incompatible seed: {exc}")
        return 2
    if job.fmt == "records":
        _print_construct_records(job, seed, report, endos, out)
    else:
        _print_construct_text(job, seed, report, endos, out)
    return 0 if endos else 2


# ---- verify ---------------------------------------------------------------

def cmd_verify(args):
    job = _job_from_args(args)
    field = job.field
    given = [s for s in (args.eta, args.eta_coeffs) if s is not None]
    if len(given) != 1:
        raise ParseError(0, "give exactly one of --eta, --eta-coeffs")
    if args.eta is not None:
        eta_rf = parse_rational_function(args.eta, field)
        eta_text = str(eta_rf)
    else:
        coeffs = [parse_field_element(p.strip(), field)
                  for p in args.eta_coeffs.split(",")]
        eta_rf = RationalFunction.from_polynomial(Polynomial(field, coeffs))
        eta_text = str(eta_rf)
    eta = eta_rf.expand(job.prec)
    if not eta.is_zero and eta.val < -1:
        print("FAIL: eta has a pole of order greater than one")
        return 1
    report = verify_functional_equation(job.curve, eta)
    out = print
    if job.fmt == "records":
        _emit_header(out, job, "verify")
        out(f"eta={eta_text}")
        out(f"status={'pass' if report.ok else 'fail'}")
        out(f"checked_prec={report.checked_prec}")
        out(f"first_bad_exponent={report.first_bad_exponent if not report.ok else 'none'}")
        out(f"first_bad_coefficient={report.first_bad_coefficient if not report.ok else 'none'}")
    else:
        out(f"eta = {eta_text} on y^2 = x^3 + ({job.curve.A})*x + ({job.curve.B}), "
            f"c = {job.curve.c}")
        if report.ok:
            out(f"functional equation holds to x^{report.checked_prec}")
        else:
            out(f"FAIL at x^{report.first_bad_exponent}: residual coefficient "
                f"{report.first_bad_coefficient}")
    return 0 if report.ok else 1


# ---- identify ---------------------------------------------------------------

def cmd_identify(args):
    job = _job_from_args(args)
    fx = parse_rational_function(args.fx, job.field)
    fy = parse_rational_function(args.fy_factor, job.field)
    points = enumerate_points(job.curve)
    report = check_map(job.curve, fx, fy)
    scalar = None
    if report.all_on_curve:
        scalar = identify_scalar(job.curve, fx, fy, args.max_scalar)
    out = print
    if job.fmt == "records":
        _emit_header(out, job, "identify")
        out(f"fx={fx}")
        out(f"fy_factor={fy}")
        out(f"points={len(points)}")
        out(f"all_on_curve={str(report.all_on_curve).lower()}")
        out(f"homomorphism={str(report.homomorphism_ok).lower()}")
        out(f"scalar={scalar if scalar is not None else 'none'}")
    else:
        out(f"map (x, y) -> ({fx}, y * ({fy})) on {len(points)} points")
        out(f"all images on curve: {report.all_on_curve}")
        out(f"homomorphism on rational points: {report.homomorphism_ok} "
            f"({report.pairs_checked} pairs)")
        if scalar is not None:
            out(f"scalar: {scalar}")
        elif report.all_on_curve and report.homomorphism_ok:
            out("scalar: none (no multiplication map matches pointwise)")
        else:
            out("scalar: none")
    return 0


# ---- bundled worked examples ------------------------------------------------

_EXAMPLES = {
    1: dict(field="3^1", A="1", B="1", c="1", seed=("alpha", "x"), prec=64,
            expected_etas=("x",)),
    2: dict(field="3^1", A="2", B="0", c="1", seed=("alpha", "x"), prec=64,
            expected_etas=("x", "x+1", "x+2")),
    3: dict(field="3^1", A="2", B="0", c="1", seed=("beta", "-1/x"), prec=64,
            expected_etas=("(2)/(x)", "(x+2)/(x)", "(2*x+2)/(x)")),
    4: dict(field="3^2", A="1", B="2", c="1",
            seed=("beta", "x^2/(x^9+x^3-1)"), prec=128,
            expected_etas=None),
}


def cmd_example(args):
    n = args.n
    cfg = _EXAMPLES[n]
    field = FieldParams(int(cfg["field"][2:]))
    A = parse_field_element(cfg["A"], field)
    B = parse_field_element(cfg["B"], field)
    c = parse_field_element(cfg["c"], field)
    curve = CurveParams(field, A, B, c)
    kind, seed_text = cfg["seed"]
    rf = parse_rational_function(seed_text, field)
    seed = Seed.alpha(rf) if kind == "alpha" else Seed.beta(rf)
    job = JobSpec(field=field, curve=curve, prec=cfg["prec"], fmt=args.format)
    endos = construct(curve, seed, job.prec)
    out = print
    ok = True

    records = job.fmt == "records"
    if records:
        _emit_header(out, job, "example")
        out(f"example={n}")
        out(f"seed_kind={kind}")
        out(f"seed={rf}")
        out(f"num_solutions={len(endos)}")
    else:
        out(f"worked example {n}: y^2 = x^3 + ({A})*x + ({B}) over "
            f"GF(3^{field.degree}), seed {kind} = {rf}, prec {job.prec}")
        out(f"solutions found: {len(endos)}")

    bound = max(1, job.prec // 2 - 2)
    rationals = []
    for i, endo in enumerate(endos):
        rational = pade(endo.eta, bound, bound)
        rationals.append(rational)
        if records:
            out(f"solution={i}")
            out(f"gamma0={endo.gamma0}")
            out(f"rational={rational if rational is not None else 'none'}")
            if rational is not None:
                _, fy = derive_map_pair(curve, rational)
                out(f"y_factor={fy}")
            else:
                out("y_factor=none")
        else:
            desc = str(rational) if rational is not None else "(not rational at this degree bound)"
            out(f"  gamma0 = {endo.gamma0}: eta = {desc}")

    if n == 1:
        expected = 1
        ok &= len(endos) == 1 and str(rationals[0]) == "x"
        report = verify_functional_equation(
            curve, parse_rational_function("x+1", field).expand(job.prec))
        ok &= not report.ok
        note = ("only c0 = 0 solves c0^3 + c0 = 0 over GF(3), so x is the only "
                "translate; x+1 fails the defining equation at x^0")
        if records:
            out(f"expected_solutions={expected}")
            out(f"verify_x_plus_1={'fail' if not report.ok else 'pass'}")
            out(f"note={note}")
        else:
            out(f"check: x+1 satisfies the defining equation: {report.ok} "
                f"(first residual at x^{report.first_bad_exponent})")
            out(f"note: {note}")
    elif n in (2, 3):
        expected = cfg["expected_etas"]
        got = tuple(str(r) if r is not None else "none" for r in rationals)
        ok &= got == expected
        if n == 3:
            points = enumerate_points(curve)
            for i, rational in enumerate(rationals):
                if rational is None:
                    ok = False
                    continue
                fx, fy = derive_map_pair(curve, rational)
                all_on = all(on_curve(curve, apply_map(curve, fx, fy, p))
                             for p in points)
                ok &= all_on
                if records:
                    out(f"map_{i}_y_factor={fy}")
                    out(f"map_{i}_pointwise_on_curve={str(all_on).lower()}")
                else:
                    out(f"  map #{i}: (x, y) -> ({fx}, y * ({fy})); "
                        f"images on curve for all {len(points)} points: {all_on}")
        if records:
            out(f"expected_etas={' '.join(expected)}")
            out(f"etas_match={str(got == expected).lower()}")
        else:
            out(f"expected x-parts: {', '.join(expected)}; match: {got == expected}")
    else:
        expected_eta = "(x^4+x^2+2*x+1)/(x^3+x+2)"
        chosen = next((i for i, e in enumerate(endos)
                       if str(e.gamma0) == "2"), None)
        rational = rationals[chosen] if chosen is not None else None
        ok &= rational is not None and str(rational) == expected_eta
        scalar = None
        if rational is not None:
            fx, fy = derive_map_pair(curve, rational)
            scalar = identify_scalar(curve, fx, fy, 10)
        ok &= scalar == 2
        if records:
            out(f"expected_rational={expected_eta}")
            out(f"rational_match={str(rational is not None and str(rational) == expected_eta).lower()}")
            out(f"scalar={scalar if scalar is not None else 'none'}")
        else:
            out(f"gamma0 = 2 solution reconstructs to {rational} "
                f"(expected {expected_eta})")
            out(f"pointwise scalar over E(GF(9)): {scalar}")

    if records:
        out(f"status={'ok' if ok else 'mismatch'}")
    else:
        out(f"overall: {'ok' if ok else 'MISMATCH'}")
    return 0 if ok else 1


# ---- entry point ------------------------------------------------------------

def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except ZeroDenominator as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except SeedError as exc:
        print(f"invalid seed: {exc}", file=sys.stderr)
        return 2
    except IncompatibleSeed as exc:
        print(f"incompatible seed: {exc}", file=sys.stderr)
        return 2
    except InvalidCurveParameters as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
