"""spinid command line: generate spin matrices, synthesize and verify
reduction identities, reduce expressions, print coefficient tables.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from .charid import (
    b_coeffs,
    build_identity,
    char_coeffs,
    identity_to_json,
    identity_to_latex,
    power_sum,
    verify_identity,
)
from .rewrite import ParseError, parse, reduce_degree, render, to_json_dict
from .spinrep import build_generators


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="spinid",
        description="Exact spin-matrix algebra and reduction identities.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit the three D-dimensional generators")
    gen.add_argument("dim", type=int)
    gen.add_argument("--format", choices=("json", "latex"), default="json")
    gen.set_defaults(func=cmd_gen)

    ident = sub.add_parser("identity", help="emit (and optionally verify) the dimension-D identity")
    ident.add_argument("dim", type=int)
    ident.add_argument("--normalization", choices=("monic", "integral"), default="monic")
    ident.add_argument("--format", choices=("json", "latex"), default="json")
    ident.add_argument(
        "--verify",
        metavar="MODE",
        help="exhaustive, or sampled:COUNT:SEED (seed is mandatory)",
    )
    ident.add_argument(
        "--rep-dim",
        type=int,
        default=None,
        help="verify against this representation dimension (default: dim)",
    )
    ident.add_argument("--jobs", type=int, default=1, help="parallel verification workers")
    ident.add_argument(
        "--expand",
        action="store_true",
        help="spell out every similar term in latex output",
    )
    ident.set_defaults(func=cmd_identity)

    red = sub.add_parser("reduce", help="rewrite an expression to its canonical reduced form")
    red.add_argument("expr")
    red.add_argument("--dim", type=int, required=True)
    red.add_argument("--format", choices=("plain", "latex", "json"), default="plain")
    red.set_defaults(func=cmd_reduce)

    co = sub.add_parser("coeffs", help="characteristic and identity coefficients a_p, b_p")
    co.add_argument("dim", type=int)
    co.set_defaults(func=cmd_coeffs)

    sm = sub.add_parser("sums", help="power sum 0^r + 1^r + ... + n^r")
    sm.add_argument("r", type=int)
    sm.add_argument("n", type=int)
    sm.set_defaults(func=cmd_sums)

    return ap


def cmd_gen(args: argparse.Namespace) -> int:
    rep = build_generators(args.dim)
    if args.format == "json":
        payload = {"dim": rep.dim, "spin": str(rep.spin)}
        for axis in (1, 2, 3):
            payload[f"S{axis}"] = rep.matrix(axis).to_strings()
        print(json.dumps(payload))
    else:
        for axis in (1, 2, 3):
            print(f"S_{axis} = " + rep.matrix(axis).latex())
    return 0


def _parse_verify_mode(value: str) -> tuple[str, int | None, int | None]:
    if value == "exhaustive":
        return "exhaustive", None, None
    if value.startswith("sampled:"):
        parts = value.split(":")
        if len(parts) == 3:
            return "sampled", int(parts[1]), int(parts[2])
    raise ValueError(
        f"bad --verify value {value!r}: use 'exhaustive' or 'sampled:COUNT:SEED'"
    )


def cmd_identity(args: argparse.Namespace) -> int:
    ident = build_identity(args.dim)
    if args.format == "json":
        print(json.dumps(identity_to_json(ident, args.normalization)))
    else:
        print(identity_to_latex(ident, args.normalization, expand=args.expand))
    if args.verify is None:
        return 0

    mode, count, seed = _parse_verify_mode(args.verify)
    rep = build_generators(args.rep_dim if args.rep_dim is not None else args.dim)
    report = verify_identity(rep, ident, mode=mode, count=count, seed=seed, jobs=args.jobs)
    if args.format == "json":
        print(json.dumps(report.to_json()))
    else:
        status = "ok" if report.ok else f"{len(report.failures)} failures"
        print(
            f"% verify rep_dim={report.rep_dim}: {report.tuples_checked} tuples checked, {status}"
        )
        for tup, (r, c, v) in report.failures[:5]:
            print(f"%   failure at tuple {tup}: entry ({r},{c}) = {v}")
    return 0 if report.ok else 1


def cmd_reduce(args: argparse.Namespace) -> int:
    nf = reduce_degree(parse(args.expr), args.dim)
    if args.format == "json":
        print(json.dumps(to_json_dict(nf)))
    else:
        print(render(nf, args.format))
    return 0


def cmd_coeffs(args: argparse.Namespace) -> int:
    a = char_coeffs(args.dim).a
    b = b_coeffs(args.dim)
    print("a = (" + ", ".join(str(x) for x in a) + ")")
    print("b = (" + ", ".join(str(x) for x in b) + ")")
    return 0


def cmd_sums(args: argparse.Namespace) -> int:
    print(power_sum(args.r, args.n))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"spinid: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"spinid: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
