"""Command-line entry point.

Exit codes: 0 success, 1 a verification mismatch, 2 usage, input or budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bijection, formula, jackson, oracle
from .budget import BudgetExceeded
from .cactus import PartitionedCactus, cactus_to_dot
from .io import InputError, load_cactus_tree, load_partitioned_cactus
from .verify import SUITES, bijection_sweep, run_suites


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _table_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="size of the long cycle")
    p.add_argument("--r", type=int, required=True, help="number of factors")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help="write here instead of stdout")


def cmd_count(args) -> int:
    fn = oracle.count_by_p if args.by == "p" else oracle.count_by_type
    table = fn(args.n, args.r, args.budget, args.workers)
    _emit(table.dump(args.format), args.output)
    return 0


def cmd_formula(args) -> int:
    if args.what == "k":
        table = formula.k_from_formula(args.n, args.r)
    elif args.what == "series":
        table = formula.series_coefficients(args.n, args.r)
    else:
        table = formula.partitioned_counts_formula(args.n, args.r)
    _emit(table.dump(args.format), args.output)
    return 0


def cmd_jackson(args) -> int:
    if args.what == "k":
        table = jackson.k_from_jackson(args.n, args.r)
    else:
        table = jackson.jackson_table(args.n, args.r, args.form)
    _emit(table.dump(args.format), args.output)
    return 0


def cmd_bijection(args) -> int:
    if args.action == "roundtrip":
        if args.n is None or args.r is None:
            raise InputError("roundtrip needs --n and --r")
        rep = bijection_sweep(args.n, args.r, args.budget)
        _emit(json.dumps(rep, indent=1) + "\n", args.output)
        ok = rep["failures"] == 0 and rep["invalid_trees"] == 0 and not rep["count_mismatches"]
        return 0 if ok else 1
    if not args.input:
        raise InputError(f"{args.action} needs --input")
    text = _read(args.input)
    if args.action == "map":
        tree = bijection.forward(load_partitioned_cactus(text))
        _emit(tree.to_dot() if args.dot else json.dumps(tree.to_dict(), indent=1) + "\n", args.output)
        return 0
    try:
        pc: PartitionedCactus = bijection.inverse(load_cactus_tree(text))
    except bijection.MalformedTree as exc:
        raise InputError(f"cactus tree: {exc}") from exc
    _emit(cactus_to_dot(pc) if args.dot else json.dumps(pc.to_dict(), indent=1) + "\n", args.output)
    return 0


def cmd_verify(args) -> int:
    results = run_suites(args.suite, args.n_max, args.r_max, args.budget)
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="longcycle",
                                     description="Count and biject factorizations of the long cycle.")
    parser.add_argument("--budget", type=float, default=None,
                        help="step budget for exhaustive work (default 1e8 or $LONGCYCLE_BUDGET)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="brute-force factorization counts")
    _table_args(p)
    p.add_argument("--by", choices=("p", "type"), default="p")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("formula", help="counts from the determinant formula")
    _table_args(p)
    p.add_argument("--what", choices=("k", "series", "partitioned"), default="k",
                   help="k: factorization counts; series: binomial-basis coefficients; "
                        "partitioned: partitioned-cactus counts")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("jackson", help="coefficients of Jackson's series")
    _table_args(p)
    p.add_argument("--form", choices=("product", "multinomial"), default="product")
    p.add_argument("--what", choices=("coefficients", "k"), default="coefficients")
    p.set_defaults(func=cmd_jackson)

    p = sub.add_parser("bijection", help="partitioned cacti <-> cactus trees")
    p.add_argument("action", choices=("map", "invert", "roundtrip"))
    p.add_argument("--input", help="JSON file ('-' for stdin)")
    p.add_argument("--output")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of JSON")
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), action="append", default=None)
    p.add_argument("--n-max", type=int)
    p.add_argument("--r-max", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is not None:
        args.budget = int(args.budget)
    if getattr(args, "suite", "") is None:
        args.suite = ["all"]
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
