"""Command-line front end.

Exit codes: 0 success, 1 check failure (rank mismatch or invalid
complex), 2 usage error.  Output is line oriented for shell use; pass
--format json for machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cfk import CfkComplex, FlipRequiredError
from .f2 import InvalidComplexError
from .knots import BUILTIN_NAMES, RandomSpec, UnknownBuiltinError, builtin, random_complex
from .obstructions import complement_check, cosmetic_pair_check
from .surgery import (
    RankReport,
    Slope,
    compute_rank_report,
    cone_rank_chain,
    coprime_slopes,
    hypothesis_holds,
    nu_surrogate,
    rank_formula,
)


class UsageError(Exception):
    pass


def _load_complex(source: str) -> CfkComplex:
    """Resolve an input argument: a JSON file path or a builtin name."""
    if os.path.exists(source):
        with open(source) as handle:
            try:
                return CfkComplex.from_json(handle.read())
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise UsageError(f"cannot parse complex file {source!r}: {exc}") from exc
    try:
        return builtin(source)
    except UnknownBuiltinError:
        raise UsageError(
            f"{source!r} is neither a file nor a builtin "
            f"(builtins: {', '.join(BUILTIN_NAMES)})"
        ) from None


def _cmd_validate(args) -> int:
    c = _load_complex(args.input)
    report = c.validate()
    if args.format == "json":
        print(json.dumps(
            {"name": c.name, "valid": report.ok,
             "issues": [{"code": i.code, "message": i.message} for i in report.issues]},
            indent=2))
    else:
        print(f"name={c.name}")
        print(f"valid={'yes' if report.ok else 'no'}")
        for issue in report.issues:
            print(f"issue\t{issue.code}\t{issue.message}")
    return 0 if report.ok else 1


def _cmd_info(args) -> int:
    c = _load_complex(args.input)
    c.require_valid()
    profile = c.hfk_profile()
    b = c.b_rank()
    nu = nu_surrogate(c) if b == 1 else None
    hyp = hypothesis_holds(c) if c.has_flip else None
    if args.format == "json":
        print(json.dumps(
            {"name": c.name, "genus": c.genus(), "b": b,
             "hfk": {str(s): n for s, n in profile.items()},
             "nu": nu,
             "hypothesis": hyp},
            indent=2))
    else:
        print(f"name={c.name}")
        print(f"genus={c.genus()}")
        print(f"b={b}")
        print("hfk=" + ",".join(f"{s}:{n}" for s, n in profile.items()))
        print(f"nu={nu if nu is not None else '-'}")
        if hyp is None:
            print("hypothesis=no-flip")
        else:
            print(f"hypothesis={'pass' if hyp else 'fail'}")
    return 0


def _cmd_rank(args) -> int:
    c = _load_complex(args.input)
    slope = Slope(args.p, args.q)
    if args.method == "oracle":
        value = cone_rank_chain(c, slope)
        print(f"oracle={value}")
        return 0
    if args.method == "formula":
        value = rank_formula(c, slope)
        print(f"formula={value}")
        return 0
    report = compute_rank_report(c, slope)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
    elif args.format == "tsv":
        print(RankReport.TSV_HEADER)
        print(report.tsv_row())
    else:
        formula = report.formula_rank if report.formula_rank is not None else "-"
        print(f"oracle={report.oracle_rank} formula={formula}")
    return 0 if report.consistent else 1


def _cmd_scan(args) -> int:
    c = _load_complex(args.input)
    reports = [compute_rank_report(c, slope) for slope in coprime_slopes(args.pmax, args.qmax)]
    if args.format == "json":
        print(json.dumps([r.to_json_dict() for r in reports], indent=2))
    else:
        print(RankReport.TSV_HEADER)
        for report in reports:
            print(report.tsv_row())
    if args.check:
        bad = [r for r in reports if r.formula_rank is None or not r.consistent]
        if bad:
            for r in bad:
                print(
                    f"check failed at {r.slope}: oracle={r.oracle_rank} "
                    f"formula={r.formula_rank}",
                    file=sys.stderr,
                )
            return 1
    return 0


def _cmd_cosmetic(args) -> int:
    c = _load_complex(args.input)
    verdict = cosmetic_pair_check(c, Slope.parse(args.r), Slope.parse(args.s))
    if args.format == "json":
        print(json.dumps(verdict.to_json_dict(), indent=2))
    else:
        print(verdict)
    return 0


def _cmd_complement(args) -> int:
    c = _load_complex(args.input)
    verdict = complement_check(c, args.q)
    if args.format == "json":
        print(json.dumps(verdict.to_json_dict(), indent=2))
    else:
        print(verdict)
    return 0


def _cmd_gen(args) -> int:
    if args.builtin is not None:
        c = builtin(args.builtin)
    else:
        spec = RandomSpec(
            seed=args.seed,
            dots=args.dots,
            boxes=args.boxes,
            max_side=args.max_side,
            max_offset=args.max_offset,
        )
        c = random_complex(spec)
    if args.name:
        c = c.renamed(args.name)
    sys.stdout.write(c.to_json())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hfsurgery",
        description=(
            "Surgery ranks, rank formulas and cosmetic-surgery obstructions "
            "for bifiltered knot Floer complexes over GF(2)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("plain", "tsv", "json"), default="plain")

    p = sub.add_parser("validate", help="check the complex axioms")
    p.add_argument("input")
    add_format(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("info", help="genus, b, hfk profile, nu, hypothesis verdict")
    p.add_argument("input")
    add_format(p)
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("rank", help="surgery rank at one slope")
    p.add_argument("input")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--method", choices=("oracle", "formula", "both"), default="both")
    add_format(p)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("scan", help="rank table over a coprime slope grid")
    p.add_argument("input")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--check", action="store_true",
                   help="exit 1 unless formula and oracle agree everywhere")
    add_format(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("cosmetic", help="rank obstruction for a slope pair")
    p.add_argument("input")
    p.add_argument("-r", required=True, metavar="P/Q")
    p.add_argument("-s", required=True, metavar="P/Q")
    add_format(p)
    p.set_defaults(func=_cmd_cosmetic)

    p = sub.add_parser("complement", help="compare 1/q surgery with the ambient rank")
    p.add_argument("input")
    p.add_argument("-q", type=int, required=True)
    add_format(p)
    p.set_defaults(func=_cmd_complement)

    p = sub.add_parser("gen", help="write a complex as JSON to stdout")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--builtin", choices=BUILTIN_NAMES)
    group.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dots", type=int, default=1)
    p.add_argument("--boxes", type=int, default=1)
    p.add_argument("--max-side", type=int, default=2)
    p.add_argument("--max-offset", type=int, default=2)
    p.add_argument("--name", default=None)
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidComplexError, FlipRequiredError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
