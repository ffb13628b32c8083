"""Command line interface.

Subcommands: gene, variety, components, strata, oracle, enumerate, render.
Arithmetic input is given with -p/-f/--h/--gamma/--gamma-prime/--theta
(decimal or signed polynomial-in-p expressions); --abstract takes a bare
symbol band like "A,A,B,0|B,AB,0,A" instead.  Output is deterministic JSON
(sorted keys; --json switches to the compact single-line form).

Exit codes: 0 success, 2 invalid input, 3 budget exceeded, 4 internal
cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .decorate import decorate, render_moebius
from .gene import InternalMismatch, parse_abstract
from .params import ParamError, derive_params
from .pipeline import (
    CrossCheckError,
    enumerate_abstract_genes,
    run_pipeline,
)
from .variety import DEFAULT_BUDGET, BudgetExceeded


def _add_input_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-p", type=str, help="prime p >= 5")
    sub.add_argument("-f", type=int, help="degree f >= 2")
    sub.add_argument("--h", dest="h", type=str, help="induction exponent (mod p^{2f}-1)")
    sub.add_argument("--gamma", type=str, help="first character exponent (mod p^f-1)")
    sub.add_argument(
        "--gamma-prime",
        type=str,
        default=None,
        help="second character exponent; derived from the determinant congruence when omitted",
    )
    sub.add_argument("--theta", type=str, default="1")
    sub.add_argument(
        "--abstract",
        type=str,
        default=None,
        help='bare symbol band "top|bottom", e.g. "A,A,B,0|B,AB,0,A"',
    )


def _source(args):
    if args.abstract is not None:
        return parse_abstract(args.abstract)
    missing = [k for k in ("p", "f", "h", "gamma") if getattr(args, k) in (None, "")]
    if missing:
        raise ParamError(f"missing input flags: {missing} (or use --abstract)")
    return derive_params(args.p, args.f, args.h, args.gamma, args.gamma_prime, args.theta)


def _emit(payload, args) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="kisin", description=__doc__)
    parser.add_argument("--json", action="store_true", help="compact single-line JSON")
    parser.add_argument("--field", type=int, default=5, help="prime order for enumeration")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled oracle runs")
    subs = parser.add_subparsers(dest="command", required=True)
    for name in ("gene", "variety", "components", "strata", "oracle", "render"):
        sub = subs.add_parser(name)
        _add_input_flags(sub)
    enum = subs.add_parser("enumerate")
    enum.add_argument("-f", type=int, required=True)
    enum.add_argument("--include-zero-zero", action="store_true")
    enum.add_argument("--cap", type=int, default=6)
    args = parser.parse_args(argv)

    try:
        return _run(args)
    except (ParamError, ValueError) as exc:
        sys.stderr.write(f"error[{getattr(exc, 'code', 'invalid-input')}]: {exc}\n")
        return 2
    except BudgetExceeded as exc:
        sys.stderr.write(f"error[budget-exceeded]: {exc}\n")
        return 3
    except (CrossCheckError, InternalMismatch, AssertionError) as exc:
        sys.stderr.write(f"error[cross-check]: {exc}\n")
        return 4


def _run(args) -> int:
    if args.command == "enumerate":
        table = enumerate_abstract_genes(
            args.f, include_zero_zero=args.include_zero_zero, field=args.field, cap=args.cap
        )
        _emit({"schema": 1, "f": args.f, "entries": table}, args)
        return 0

    source = _source(args)
    if args.command == "render":
        from .gene import Gene, compute_gene
        from .params import Params

        gene = compute_gene(source) if isinstance(source, Params) else source
        sys.stdout.write(render_moebius(gene, decorate(gene)))
        return 0

    want_census = args.command in ("strata", "variety", "components", "oracle")
    report = run_pipeline(
        source,
        field=args.field,
        budget=args.budget,
        census=want_census,
        oracle=args.command == "oracle",
        seed=args.seed,
    )
    payload = report.to_json()
    if args.command == "gene":
        payload = {
            "schema": 1,
            "params": payload["params"],
            "gene": payload["gene"],
            "symbols": payload["symbols"],
            "decoration": payload["decoration"],
            "validation": payload["validation"],
        }
    elif args.command == "components":
        payload = {
            "schema": 1,
            "components": payload["components"],
            "dimension": payload["dimension"],
            "connected": payload["connected"],
            "empty": payload["empty"],
        }
    elif args.command == "strata":
        payload = {
            "schema": 1,
            "strata": payload["strata"],
            "descriptors": payload["descriptors"],
            "empty": payload["empty"],
        }
    elif args.command == "oracle":
        payload = {"schema": 1, "oracle": payload["oracle"], "empty": payload["empty"]}
    _emit(payload, args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
