"""Command-line front end.

Subcommands:

    invariants EXPR       exact (e, sigma, b1) and friends for a connected sum
    spinc EXPR            spin^c status after the blow-ups / S1xS3 summands
    obstructions EXPR     all obstruction rules with exact certificates
    construct -e M -s N   certified non-Einstein witnesses hitting (e, sigma)
    geography             boundary-curve tables (csv) or plots (svg)

Exit codes: 0 on success, 1 when a rule or search legitimately fails
(inadmissible target, unmet hypotheses, exhausted search, write failure),
2 on usage or expression syntax errors.  Identical invocations print
identical bytes; --json emits machine-readable output whose numbers
round-trip exactly (integers in full decimal, rationals as 'p/q').
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .blocks import (
    block_invariants,
    connected_sum_invariants,
    mkl_decomposition,
)
from .geography import ChenParams, emit_geography
from .obstructions import HypothesisUnmetError, evaluate_all
from .parser import ParseError, format_expr, parse_expr
from .spinc import blow_up, canonical_spinc_of_kahler, s1s3_sum
from .witness import NotAdmissibleError, SearchExhaustedError, solve


def _emit_json(data) -> None:
    print(json.dumps(data, indent=2))


def _parse_argv_expr(text: str):
    # Any failure while reading the expression argument is a usage error.
    try:
        return parse_expr(text)
    except ParseError:
        raise
    except ValueError as err:
        raise ParseError(str(err), 0)


def _chen_params(args) -> ChenParams:
    return ChenParams(C=args.chen_C, precision_bits=args.precision_bits)


def _cmd_invariants(args) -> int:
    expr = _parse_argv_expr(args.expr)
    inv = connected_sum_invariants(expr)
    split = inv.b2_plus_minus()
    if args.json:
        _emit_json({
            "expr": format_expr(expr),
            "e": inv.e,
            "sigma": inv.sigma,
            "b1": inv.b1,
            "two_e_plus_3sigma": inv.two_e_plus_3sigma,
            "chi_h": str(inv.chi_h),
            "b2_plus": None if split is None else split[0],
            "b2_minus": None if split is None else split[1],
        })
        return 0
    print(f"expression:      {format_expr(expr)}")
    print(f"e:               {inv.e}")
    print(f"sigma:           {inv.sigma}")
    print(f"b1:              {inv.b1}")
    print(f"2e + 3 sigma:    {inv.two_e_plus_3sigma}")
    print(f"chi_h:           {inv.chi_h}")
    if split is None:
        print("b2+/b2-:         not computed (needs b1 = 0 and b2 >= |sigma|)")
    else:
        print(f"b2+/b2-:         {split[0]}/{split[1]}")
    return 0


def _spinc_chain(expr, deg_K_positive: bool):
    decomposition = mkl_decomposition(expr)
    if decomposition is None:
        raise HypothesisUnmetError(
            "spin^c tracking needs base # k*~CP2 # l*(S1xS3) with a unique base"
        )
    base, k, l = decomposition
    base_inv = block_invariants(base)
    desc = canonical_spinc_of_kahler(
        base_inv, base_inv.two_e_plus_3sigma, deg_K_positive)
    desc, inv = blow_up(desc, base_inv, k)
    if l > 0:
        desc, inv = s1s3_sum(desc, inv, l)
    return desc, inv


def _cmd_spinc(args) -> int:
    expr = _parse_argv_expr(args.expr)
    desc, inv = _spinc_chain(expr, args.deg_K_positive)
    if args.json:
        _emit_json(desc.to_json(inv))
        return 0
    print(f"c1^2:            {desc.c1_sq}")
    print(f"status:          {desc.status.value}")
    print(f"formal dim d:    {desc.d(inv)}")
    if desc.holonomy_count is not None:
        print(f"holonomy count:  {desc.holonomy_count}")
    print("provenance:")
    for note in desc.provenance:
        print(f"  - {note}")
    return 0


def _cmd_obstructions(args) -> int:
    expr = _parse_argv_expr(args.expr)
    volume = None
    if args.simplicial_volume is not None:
        try:
            volume = Fraction(args.simplicial_volume)
        except (ValueError, ZeroDivisionError):
            raise ParseError(
                f"cannot read simplicial volume {args.simplicial_volume!r}", 0)
    spinc = None
    if args.deg_K_positive and mkl_decomposition(expr) is not None:
        spinc, _ = _spinc_chain(expr, True)
    inv = connected_sum_invariants(expr)
    verdicts = evaluate_all(expr, spinc=spinc, simplicial_volume=volume)
    if args.json:
        _emit_json({
            "expr": format_expr(expr),
            "invariants": {"e": inv.e, "sigma": inv.sigma, "b1": inv.b1},
            "verdicts": [v.to_json() for v in verdicts],
        })
        return 0
    print(f"expression:  {format_expr(expr)}")
    print(f"invariants:  e = {inv.e}, sigma = {inv.sigma}, b1 = {inv.b1}")
    for verdict in verdicts:
        line = f"{verdict.rule.value}: {verdict.status.value}"
        cert = verdict.certificate
        if cert is not None:
            left = cert.left if cert.left.denominator > 1 else int(cert.left)
            right = cert.right if cert.right.denominator > 1 else int(cert.right)
            line += f"  [{left} {cert.comparison} {right}: {cert.holds}]"
        print(line)
        for note in verdict.notes:
            print(f"    note: {note}")
    return 0


def _cmd_construct(args) -> int:
    params = _chen_params(args)
    witnesses = solve(args.e, args.sigma, count=args.count, params=params)
    if args.json:
        _emit_json([w.to_json() for w in witnesses])
        return 0
    for i, witness in enumerate(witnesses, 1):
        inv = witness.invariants
        print(f"witness {i}: {format_expr(witness.expr)}")
        print(f"  e = {inv.e}, sigma = {inv.sigma}, b1 = {inv.b1}")
        print(f"  chen_x = {witness.chen_x}, chen_y = {witness.chen_y}, "
              f"k = {witness.k}, l = {witness.l}")
        obstruction = witness.verdicts[0]
        cert = obstruction.certificate
        print(f"  {obstruction.rule.value}: {obstruction.status.value} "
              f"[{int(cert.left)} {cert.comparison} {int(cert.right)}]")
        print(f"  region threshold C = {witness.chen_C_used}")
    return 0


def _cmd_geography(args) -> int:
    params = _chen_params(args)
    document = emit_geography(
        args.x_min, args.x_max, args.step, args.format, params,
        out_path=args.output,
    )
    if args.output is None:
        sys.stdout.write(document)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="einstein4",
        description="Exact Einstein-metric obstruction calculator for "
                    "connected sums of 4-manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariants", help="exact invariants of a connected sum")
    p_inv.add_argument("expr", help="e.g. 'K3 # 2*~CP2 # S1xS3'")
    p_inv.add_argument("--json", action="store_true")
    p_inv.set_defaults(handler=_cmd_invariants)

    p_spinc = sub.add_parser("spinc", help="spin^c status bookkeeping")
    p_spinc.add_argument("expr")
    p_spinc.add_argument("--deg-K-positive", action="store_true",
                         dest="deg_K_positive",
                         help="assert the base canonical degree is positive")
    p_spinc.add_argument("--json", action="store_true")
    p_spinc.set_defaults(handler=_cmd_spinc)

    p_obs = sub.add_parser("obstructions", help="run all obstruction rules")
    p_obs.add_argument("expr")
    p_obs.add_argument("--simplicial-volume", metavar="P/Q",
                       help="exact simplicial volume, e.g. 51200 or 3/2")
    p_obs.add_argument("--deg-K-positive", action="store_true",
                       dest="deg_K_positive")
    p_obs.add_argument("--json", action="store_true")
    p_obs.set_defaults(handler=_cmd_obstructions)

    p_con = sub.add_parser("construct", help="search for non-Einstein witnesses")
    p_con.add_argument("-e", type=int, required=True, help="target Euler characteristic")
    p_con.add_argument("-s", "--sigma", type=int, required=True, dest="sigma",
                       help="target signature")
    p_con.add_argument("--count", type=int, default=1)
    p_con.add_argument("--chen-C", type=int, default=1, dest="chen_C")
    p_con.add_argument("--precision-bits", type=int, default=64)
    p_con.add_argument("--json", action="store_true")
    p_con.set_defaults(handler=_cmd_construct)

    p_geo = sub.add_parser("geography", help="emit boundary curves as csv or svg")
    p_geo.add_argument("--x-min", type=int, required=True)
    p_geo.add_argument("--x-max", type=int, required=True)
    p_geo.add_argument("--step", type=int, default=1)
    p_geo.add_argument("--format", choices=("csv", "svg"), required=True)
    p_geo.add_argument("-o", "--output", default=None)
    p_geo.add_argument("--chen-C", type=int, default=1, dest="chen_C")
    p_geo.add_argument("--precision-bits", type=int, default=64)
    p_geo.set_defaults(handler=_cmd_geography)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (NotAdmissibleError, HypothesisUnmetError, SearchExhaustedError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
