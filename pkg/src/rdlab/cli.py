"""Command line interface: ``rdlab rd|enumerate|filtration|verify``.

stdout carries data only; diagnostics go to stderr.  Exit codes: 0 ok,
1 failed verification, 2 bad input, 3 unsupported field spec, 4 the
enumeration search space is above the ceiling.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from rdlab.arith import factor, is_prime, parse_bound
from rdlab.enumerator import EnumerationParams, SearchSpaceExceeded, enumerate_abelian_fields
from rdlab.fields import (
    AbelianField,
    discriminant,
    field_conductor,
    field_degree,
    ramified_primes,
    root_discriminant,
    signature,
    to_spec,
)
from rdlab.fieldspec import FieldSpecError, UnsupportedSpec, parse_field_spec
from rdlab.ramification import (
    conductor_exponent,
    cyclotomic_filtration,
    different_valuation,
    upper_from_lower,
)
from rdlab.verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_CEILING = 4

TSV_COLUMNS = ("spec", "degree", "disc", "conductor", "rd_num_disc", "rd_degree", "rd_approx")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def field_report(F: AbelianField) -> dict:
    """JSON-ready summary of a field.  ``rd.approx`` is for display only."""
    rd = root_discriminant(F)
    d = discriminant(F)
    return {
        "spec": to_spec(F),
        "degree": field_degree(F),
        "disc": {"value": d, "factors": [[p, k] for p, k in factor(d)]},
        "conductor": field_conductor(F),
        "ramified": ramified_primes(F),
        "signature": list(signature(F)),
        "rd": {"disc": rd.disc, "degree": rd.degree, "approx": rd.approx()},
    }


def _tsv_row(report: dict) -> str:
    values = (
        report["spec"],
        report["degree"],
        report["disc"]["value"],
        report["conductor"],
        report["rd"]["disc"],
        report["rd"]["degree"],
        report["rd"]["approx"],
    )
    return "\t".join(str(v) for v in values)


def _emit(obj) -> None:
    print(json.dumps(obj))


def cmd_rd(args) -> int:
    try:
        F = parse_field_spec(args.spec)
    except FieldSpecError as exc:
        print(f"rdlab rd: {exc.reason} at position {exc.position}", file=sys.stderr)
        print(exc.caret(), file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedSpec as exc:
        print(f"rdlab rd: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    report = field_report(F)
    if args.format == "tsv":
        print("\t".join(TSV_COLUMNS))
        print(_tsv_row(report))
    else:
        _emit(report)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    try:
        bound = parse_bound(args.bound)
        params = EnumerationParams(bound, args.max_degree)
    except ValueError as exc:
        print(f"rdlab enumerate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        found = enumerate_abelian_fields(params)
    except SearchSpaceExceeded as exc:
        print(f"rdlab enumerate: {exc}", file=sys.stderr)
        return EXIT_CEILING
    if args.format == "tsv":
        print("\t".join(TSV_COLUMNS))
        for F in found:
            print(_tsv_row(field_report(F)))
        print(f"# count\t{len(found)}")
    else:
        for F in found:
            _emit(field_report(F))
        _emit({"summary": {"bound": str(bound), "max_degree": args.max_degree, "count": len(found)}})
    return EXIT_OK


def cmd_filtration(args) -> int:
    p, n = args.p, args.n
    if not is_prime(p) or n < 1 or p**n < 3:
        print(f"rdlab filtration: need P prime, K >= 1 and P^K >= 3 (got P={p}, K={n})", file=sys.stderr)
        return EXIT_USAGE
    lower = cyclotomic_filtration(p, n)
    upper = upper_from_lower(lower)
    _emit(
        {
            "p": p,
            "n": n,
            "lower": list(lower.orders),
            "upper": upper.as_json(),
            "tame": lower.is_tame,
            "conductor_exponent": conductor_exponent(upper),
            "different": different_valuation(lower),
        }
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.conductor_limit < 1:
        print("rdlab verify: --conductor-limit must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    results = run_suite(args.suite, args.conductor_limit)
    for r in results:
        print(f"# {r.suite}: {r.target}")
        _emit(
            {
                "suite": r.suite,
                "conductor_limit": args.conductor_limit,
                "checked": r.checked,
                "passed": r.passed,
                "failures": r.failures,
            }
        )
        if not r.passed:
            print(f"rdlab verify: {r.suite} failed {len(r.failures)} check(s)", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def _add_format(p: argparse.ArgumentParser, tsv: bool = True) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output (default)")
    if tsv:
        g.add_argument("--tsv", dest="format", action="store_const", const="tsv", help="tab separated output")
    p.set_defaults(format="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rdlab", description="Root discriminants of abelian number fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rd", help="invariants of one field")
    p.add_argument("spec", help="Q | quad:D | zeta:m | chars:mod=M;gens=a/b,...")
    _add_format(p)
    p.set_defaults(func=cmd_rd)

    p = sub.add_parser("enumerate", help="all abelian fields with rd <= N")
    p.add_argument("--bound", required=True, help="N as integer, fraction, decimal or sqrt(x)")
    p.add_argument("--max-degree", type=int, default=None)
    _add_format(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("filtration", help="ramification filtration of Q_p(zeta_{p^n})/Q_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_format(p, tsv=False)
    p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("verify", help="run a property suite over fields of bounded conductor")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--conductor-limit", type=int, default=60)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
