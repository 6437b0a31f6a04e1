"""Command-line entry point: ``galoiscert {bound,certify,ap,twist,distinguish}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .arith import is_prime, radical
from .bounds import isogeny_bound, serre_bound
from .curve import parse_curve, profile, quadratic_twist
from .galois_image import Mode
from .isogeny import distinguishing_prime, joint_radical, twist_pair
from .pipeline import RunConfig, report_to_json, run_report
from .reduction import Strategy, ap

log = logging.getLogger("galoiscert")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galoiscert",
        description="GRH-conditional bounds and surjectivity certificates for "
                    "mod-ell Galois representations of elliptic curves over Q.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def curve_arg(p, many=False):
        p.add_argument("--curve", required=True, action="append" if many else "store",
                       metavar="A1,A2,A3,A4,A6", help="Weierstrass coefficients")

    p = sub.add_parser("bound", help="print the bound on non-surjective primes")
    curve_arg(p)
    p.add_argument("--isogeny", action="store_true",
                   help="print the distinguishing-prime bound for E and itself instead")

    p = sub.add_parser("certify", help="certify surjectivity for every prime up to the bound")
    curve_arg(p)
    p.add_argument("--pmax", type=_positive_int, default=10**5)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="full")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    p.add_argument("--cache-dir", type=Path)
    p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("ap", help="Frobenius trace a_p at a good prime")
    curve_arg(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="auto")

    p = sub.add_parser("twist", help="minimal model of the quadratic twist by D")
    curve_arg(p)
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("distinguish", help="least prime where two curves' traces differ")
    curve_arg(p, many=True)
    p.add_argument("--d", type=int, help="compare the curve with its twist by D")
    p.add_argument("--pmax", type=_positive_int, help="scan cap (default: min(bound, 1e8))")
    return parser


def _cmd_bound(args) -> int:
    prof = profile(parse_curve(args.curve))
    r = radical(2 * prof.conductor_radical)
    report = isogeny_bound(r) if args.isogeny else serre_bound(r)
    print(report.integer_bound)
    return 0


def _cmd_certify(args) -> int:
    config = RunConfig(
        pmax_witness=args.pmax, mode=args.mode, cache_dir=args.cache_dir,
        use_cache=not args.no_cache, output="json" if args.json else "text")
    report = run_report(args.curve, config)
    if args.json == "-":
        sys.stdout.write(report_to_json(report))
    else:
        if args.json:
            Path(args.json).write_text(report_to_json(report))
        print(report.to_text())
    return 0


def _cmd_ap(args) -> int:
    if not is_prime(args.p):
        raise ValueError(f"{args.p} is not prime")
    print(ap(profile(parse_curve(args.curve)), args.p, Strategy(args.strategy)))
    return 0


def _cmd_twist(args) -> int:
    twisted = profile(quadratic_twist(parse_curve(args.curve), args.d))
    print(twisted.curve)
    return 0


def _cmd_distinguish(args) -> int:
    curves = args.curve
    if args.d is not None:
        if len(curves) != 1:
            raise ValueError("--d takes exactly one --curve")
        prof1, prof2 = twist_pair(parse_curve(curves[0]), args.d)
    elif len(curves) == 2:
        prof1, prof2 = (profile(parse_curve(c)) for c in curves)
    else:
        raise ValueError("give two --curve options, or one --curve with --d")
    res = distinguishing_prime(prof1, prof2, args.pmax)
    if res is None:
        bound = isogeny_bound(joint_radical(prof1, prof2))
        print(json.dumps({"p": None, "bound": bound.integer_bound,
                          "note": "no distinguishing prime found up to the cap"}))
    else:
        print(json.dumps({"p": res.p, "ap1": res.ap1, "ap2": res.ap2,
                          "bound": res.bound.integer_bound, "within_bound": res.within_bound}))
    return 0


_COMMANDS = {
    "bound": _cmd_bound,
    "certify": _cmd_certify,
    "ap": _cmd_ap,
    "twist": _cmd_twist,
    "distinguish": _cmd_distinguish,
}


def cmd_dispatch(argv=None) -> int:
    """Run one subcommand; 0 on success, 1 on domain errors, 2 on usage errors."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"galoiscert: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cmd_dispatch())
