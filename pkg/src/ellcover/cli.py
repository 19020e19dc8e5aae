"""Command-line interface.

Exit codes: 0 success, 1 domain error (invalid regime, invalid parameters,
empty stratum, exceeded budget), 2 usage error, 3 verification failure
(a cross-check or invariant did not hold).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .charsum import (
    INFINITY,
    chi_class,
    fiber_count,
    fiber_count_oracle,
    projective_points,
    twisted_model,
)
from .coverparam import (
    CoverParams,
    count_tuples,
    enumerate_tuples,
    make_regime,
    validate_params,
)
from .ensemble import (
    exhaustive_distribution,
    monte_carlo_distribution,
    theoretical_distribution,
)
from .errors import CrossCheckMismatch, EllcoverError
from .fqpoly import Poly
from .verify import run_checks


def _parse_poly(ctx, text: str) -> Poly:
    try:
        coeffs = [int(part.strip()) for part in text.split(",")]
        return Poly(ctx, coeffs)
    except ValueError as exc:
        raise UsageError(f"bad polynomial literal {text!r}: {exc}") from None


def _parse_tuple(ctx, text: str) -> tuple[Poly, ...]:
    return tuple(_parse_poly(ctx, part) for part in text.split(";"))


class UsageError(Exception):
    pass


def _poly_str(f: Poly) -> str:
    return str(f)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if getattr(args, "json", False):
        out = json.dumps(payload, indent=2) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    path = getattr(args, "out", None)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _regime_dict(regime) -> dict:
    return {
        "q": regime.q,
        "ell": regime.ell,
        "n_q": regime.n_q,
        "p": regime.p,
        "k": regime.k,
        "modulus": ",".join(str(c) for c in regime.ext.modulus),
    }


def _cmd_info(args) -> int:
    regime = make_regime(args.q, args.ell)
    theo = theoretical_distribution(regime)
    payload = {
        "regime": _regime_dict(regime),
        "base_modulus": ",".join(str(c) for c in regime.base.modulus),
        "base_generator": regime.base.generator,
        "ext_generator": regime.ext.generator,
        "twist_exponents": list(regime.v_exps),
        "theoretical": [
            {"N": n, "num": theo.mass(n).numerator, "den": theo.mass(n).denominator}
            for n in theo.lattice()
        ],
    }
    lines = [
        f"regime: q={regime.q}, ell={regime.ell}, n_q={regime.n_q} "
        f"(base F_{regime.base.order}, extension F_{regime.ext.order})",
        f"base modulus: {payload['base_modulus']}",
        f"extension modulus: {payload['regime']['modulus']}",
        f"twist exponents v_j = q**(1-j) mod ell: {payload['twist_exponents']}",
        "limit law P(N = n):",
    ]
    for row in payload["theoretical"]:
        lines.append(f"  N={row['N']:>3}: {row['num']}/{row['den']}")
    _emit(args, payload, lines)
    return 0


def _cmd_enumerate(args) -> int:
    regime = make_regime(args.q, args.ell)
    total = count_tuples(regime, args.degree)
    shown: list[str] = []
    if not args.count_only:
        stream = enumerate_tuples(regime, args.degree)
        for i, fs in enumerate(stream):
            if args.limit is not None and i >= args.limit:
                break
            shown.append(";".join(_poly_str(f) for f in fs))
    payload = {
        "regime": _regime_dict(regime),
        "degree": args.degree,
        "count": total,
        "tuples": shown,
    }
    lines = [f"degree {args.degree}: {total} branch tuples"] + shown
    _emit(args, payload, lines)
    return 0


def _cmd_count_points(args) -> int:
    regime = make_regime(args.q, args.ell)
    fs = _parse_tuple(regime.base, args.tuple)
    b = regime.ext.elem(args.b)
    params = CoverParams(regime, fs, b)
    validate_params(params)
    model = twisted_model(params, args.labeling)
    rows = []
    total = 0
    oracle_total = 0
    for x in projective_points(regime):
        cls = chi_class(model, x)
        fast = fiber_count(model, x)
        slow = fiber_count_oracle(model, x)
        if fast != slow:
            raise CrossCheckMismatch(
                f"fiber count at x={x}: class gives {fast}, scan gives {slow}")
        total += fast
        oracle_total += slow
        label = "inf" if x is INFINITY else str(x)
        rows.append({"x": label, "class": "0-class" if cls.is_zero_class else cls.e,
                     "fiber": fast})
    payload = {
        "regime": _regime_dict(regime),
        "tuple": args.tuple,
        "b": args.b,
        "labeling": args.labeling,
        "twisted": _poly_str(model.f_v0),
        "fibers": rows,
        "total": total,
        "oracle_total": oracle_total,
    }
    lines = [
        f"tuple {args.tuple} with b={args.b} over q={args.q}, ell={args.ell}",
        f"twisted polynomial: {payload['twisted']}",
    ]
    for row in rows:
        lines.append(f"  x={row['x']:>4}: class {row['class']}, fiber {row['fiber']}")
    lines.append(f"total points: {total} (oracle agrees: {oracle_total})")
    _emit(args, payload, lines)
    return 0


def _cmd_lseries(args) -> int:
    from .lseries import l_polynomial, root_magnitudes

    regime = make_regime(args.q, args.ell)
    points = [regime.base.elem(int(s.strip())) for s in args.points.split(",")]
    w = [int(s.strip()) for s in args.w.split(",")]
    coeffs = l_polynomial(regime, points, w)
    mags = root_magnitudes(coeffs)
    payload = {
        "regime": _regime_dict(regime),
        "points": [str(x) for x in points],
        "w": w,
        "coefficients": [list(c.coords) for c in coeffs],
        "root_magnitudes": mags,
    }
    lines = [
        f"character at points {payload['points']} with weights {w}",
        f"polynomial coefficients (basis 1, zeta, ..., zeta**{args.ell - 2}): "
        + "; ".join(str(list(c.coords)) for c in coeffs),
        f"zero magnitudes: {mags}",
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_ensemble(args) -> int:
    regime = make_regime(args.q, args.ell)
    if args.mode == "exhaustive":
        report = exhaustive_distribution(regime, args.genus, args.labeling,
                                         args.threads)
    else:
        report = monte_carlo_distribution(regime, args.genus, args.samples,
                                          args.seed, args.labeling, args.threads)
    if args.format == "csv":
        out = report.to_csv()
    else:
        out = json.dumps(report.to_json_dict(), indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def _cmd_verify(args) -> int:
    results = run_checks(args.q, args.ell, max_D=args.max_degree)
    payload = {
        "q": args.q,
        "ell": args.ell,
        "max_degree": args.max_degree,
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
    }
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"CHECK {r.name}: {status} — {r.detail}")
    ok = all(r.passed for r in results)
    lines.append(f"verify: {'all checks passed' if ok else 'FAILURES PRESENT'}")
    _emit(args, payload, lines)
    return 0 if ok else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellcover",
        description="Prime-order cyclic covers of the projective line in the "
                    "non-Kummer regime: enumeration, point counts, character "
                    "series, and point-count statistics.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_regime_args(p):
        p.add_argument("--q", type=int, required=True,
                       help="base field size (prime power)")
        p.add_argument("--ell", type=int, required=True,
                       help="prime cover order")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--out", help="write output to this file")

    p_info = sub.add_parser("info", help="describe a regime and its limit law")
    add_regime_args(p_info)
    p_info.set_defaults(fn=_cmd_info)

    p_enum = sub.add_parser("enumerate", help="list branch tuples of a degree")
    add_regime_args(p_enum)
    p_enum.add_argument("--degree", type=int, required=True)
    p_enum.add_argument("--limit", type=int, default=None,
                        help="print at most this many tuples")
    p_enum.add_argument("--count-only", action="store_true")
    p_enum.set_defaults(fn=_cmd_enumerate)

    p_count = sub.add_parser("count-points",
                             help="count rational points of one cover")
    add_regime_args(p_count)
    p_count.add_argument("--tuple", required=True,
                         help="branch tuple literal, e.g. '1,1,1;1'")
    p_count.add_argument("--b", type=int, default=1,
                         help="twisting unit literal in the extension field")
    p_count.add_argument("--labeling", choices=["least", "greatest"],
                         default="least")
    p_count.set_defaults(fn=_cmd_count_points)

    p_l = sub.add_parser("lseries", help="character sums over monic polynomials")
    add_regime_args(p_l)
    p_l.add_argument("--points", required=True,
                     help="comma-separated base-field literals")
    p_l.add_argument("--w", required=True,
                     help="comma-separated integer weights")
    p_l.set_defaults(fn=_cmd_lseries)

    p_ens = sub.add_parser("ensemble",
                           help="measure the point-count distribution at a genus")
    add_regime_args(p_ens)
    p_ens.add_argument("--genus", type=int, required=True)
    p_ens.add_argument("--mode", choices=["exhaustive", "monte-carlo"],
                       default="exhaustive")
    p_ens.add_argument("--samples", type=int, default=1000)
    p_ens.add_argument("--seed", type=int, default=0)
    p_ens.add_argument("--labeling", choices=["least", "greatest"],
                       default="least")
    p_ens.add_argument("--threads", type=int, default=1)
    p_ens.add_argument("--format", choices=["json", "csv"], default="json")
    p_ens.set_defaults(fn=_cmd_ensemble)

    p_ver = sub.add_parser("verify", help="run the consistency battery")
    add_regime_args(p_ver)
    p_ver.add_argument("--max-degree", type=int, default=4)
    p_ver.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CrossCheckMismatch as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3
    except EllcoverError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    raise SystemExit(main())
