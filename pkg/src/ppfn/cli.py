"""Command-line front end: ``ppfn compute | enumerate | verify | dump-word``.

Machine output is JSON with sorted keys.  Exit codes: 0 success,
2 verification failure, 3 non-stabilization, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import products
from .enumeration import enum_boxed, enum_diagonal, enum_perpendicular, enum_symmetric
from .partitions import EMPTY, Partition, parse_partition
from .qseries import HalfSeries, ProductForm, format_series
from .verify import SUITES, Bounds, run_suite
from .vev import (
    DIAGONAL,
    INF,
    PERPENDICULAR,
    PINS_DERIVED,
    PINS_PRINTED,
    SYMMETRIC,
    BoundaryProblem,
    NonStabilization,
    diagonal_word,
    perpendicular_word,
    symmetric_word,
    vev_diagonal,
    vev_infinite_detail,
    vev_perpendicular,
    vev_symmetric,
)

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_UNSTABLE = 3
EXIT_USAGE = 4

KINDS = (DIAGONAL, PERPENDICULAR, SYMMETRIC, "boxed")
METHODS = ("vev", "product", "enumerate")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _dim_json(x):
    return "inf" if x == INF else x


def _add_problem_args(p: argparse.ArgumentParser):
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--L", default=None, help="positive integer or inf")
    p.add_argument("--N", default=None, help="positive integer or inf")
    p.add_argument("--M", default=None, help="positive integer or inf")
    p.add_argument("--lam", default="", help="parts like 2,1; empty or [] for the empty partition")
    p.add_argument("--mu", default="")
    p.add_argument("--nu", default="")
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--pins", choices=(PINS_DERIVED, PINS_PRINTED), default=PINS_DERIVED,
                   help="pin rule for perpendicular problems")


def _add_series_args(p: argparse.ArgumentParser):
    p.add_argument("--order", type=int, default=10, help="report coefficients through q^order")
    p.add_argument("--k-ceiling", type=int, default=None, help="largest wall distance tried for infinite walls")
    p.add_argument("--pretty", action="store_true", help="print a q-polynomial instead of JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppfn", description="Exact partition functions of plane partitions with boundaries.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="compute a partition function")
    _add_problem_args(c)
    _add_series_args(c)
    c.add_argument("--method", choices=METHODS, default="vev")

    e = sub.add_parser("enumerate", help="brute-force enumeration (same as compute --method enumerate)")
    _add_problem_args(e)
    _add_series_args(e)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--max", type=int, default=None)
    v.add_argument("--max-size", type=int, default=None)
    v.add_argument("--max-mu", type=int, default=None)
    v.add_argument("--order", type=int, default=None)
    v.add_argument("--count", type=int, default=100, help="random cases per law (commutation suite)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=None, help="worker processes (default: PPFN_JOBS or 1)")
    v.add_argument("--pretty", action="store_true")

    d = sub.add_parser("dump-word", help="print the operator word of a problem")
    _add_problem_args(d)
    return parser


def _partition(text: str, name: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from None


def problem_from_args(args) -> BoundaryProblem:
    lam, mu, nu = (_partition(getattr(args, n), n) for n in ("lam", "mu", "nu"))
    if args.kind == SYMMETRIC:
        if args.N is None:
            raise UsageError("symmetric problems need --N")
        if lam or nu:
            raise UsageError("symmetric problems take only --N and --mu")
        try:
            N = int(args.N)
        except ValueError:
            raise UsageError("symmetric problems need a finite --N") from None
        if N < 1:
            raise UsageError("--N must be positive")
        try:
            return BoundaryProblem(SYMMETRIC, 1, N, 1, EMPTY, mu, EMPTY)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    missing = [n for n in ("L", "N", "M") if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.kind} problems need --{', --'.join(missing)}")
    try:
        return BoundaryProblem(args.kind, args.L, args.N, args.M, lam, mu, nu)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _boxed_dims(args) -> tuple[int, int, int]:
    dims = (args.a, args.b, args.c)
    if any(x is None for x in dims):
        raise UsageError("boxed problems need --a, --b and --c")
    if min(dims) < 0:
        raise UsageError("box dimensions must be nonnegative")
    return dims


def _product_for(p: BoundaryProblem) -> ProductForm:
    if p.kind == SYMMETRIC:
        return products.symmetric_product(p.N, p.mu)
    empty_sides = not p.lam and not p.nu
    if p.finite and empty_sides and not p.mu:
        # empty boundaries are walls: a box of (L-1) x (M-1) x (N-1)
        return products.macmahon_boxed(p.L - 1, p.M - 1, p.N - 1)
    if p.kind == DIAGONAL and empty_sides and p.N == INF and p.L != INF and p.M != INF:
        return products.limit_shape_product(p.L - 1, p.M - 1, p.mu)
    raise UsageError("no closed product formula for this problem")


def compute(args, method: str) -> dict:
    """Evaluate the problem described by ``args``; returns the JSON document."""
    order = args.order
    if order < 0:
        raise UsageError("--order must be nonnegative")
    doc: dict = {"kind": args.kind, "method": method, "order": order, "stabilization_K": None}
    if args.kind == "boxed":
        a, b, c = _boxed_dims(args)
        doc["params"] = {"a": a, "b": b, "c": c}
        series = products.macmahon_boxed(a, b, c).expand() if method == "product" else (
            enum_boxed(a, b, c) if method == "enumerate" else None)
        if series is None:
            # the operator route for a box: empty boundaries, walls one further out
            series = vev_diagonal(BoundaryProblem(DIAGONAL, a + 1, c + 1, b + 1))
        doc["series"] = series.to_json()
        doc["exact"] = not series.truncated
        return doc

    p = problem_from_args(args)
    doc["params"] = {
        "L": _dim_json(p.L), "N": _dim_json(p.N), "M": _dim_json(p.M),
        "lam": list(p.lam), "mu": list(p.mu), "nu": list(p.nu),
    }
    if p.kind == SYMMETRIC:
        doc["params"] = {"N": p.N, "mu": list(p.mu)}
    if p.kind == PERPENDICULAR:
        doc["params"]["pins"] = args.pins
    if method == "product":
        form = _product_for(p)
        series = form.expand(None if form.is_polynomial_form() else 2 * order)
        doc["product"] = form.to_json()
    elif method == "enumerate":
        series = _enumerate(p, order)
    elif p.kind == SYMMETRIC:
        series = vev_symmetric(p.N, p.mu, order)
    elif p.finite:
        series = vev_diagonal(p) if p.kind == DIAGONAL else vev_perpendicular(p, rule=args.pins)
    else:
        res = vev_infinite_detail(p, order, args.k_ceiling, args.pins)
        series = res.series
        doc["stabilization_K"] = res.K
    doc["series"] = series.to_json()
    doc["exact"] = not series.truncated
    return doc


def _enumerate(p: BoundaryProblem, order: int) -> HalfSeries:
    if p.kind == SYMMETRIC:
        return enum_symmetric(p.N, p.mu, order)
    if p.L == INF or p.M == INF:
        raise UsageError("enumeration needs finite --L and --M")
    f = enum_diagonal if p.kind == DIAGONAL else enum_perpendicular
    return f(p.L, p.N, p.M, p.lam, p.mu, p.nu, order)


def dump_word(args) -> str:
    p = problem_from_args(args)
    if p.kind == SYMMETRIC:
        return symmetric_word(p.N, p.mu).dump()
    if not p.finite:
        raise UsageError("operator words need finite --L, --N and --M")
    return (diagonal_word(p) if p.kind == DIAGONAL else perpendicular_word(p, args.pins)).dump()


def _emit(doc: dict):
    print(json.dumps(doc, sort_keys=True))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("compute", "enumerate"):
            method = "enumerate" if args.command == "enumerate" else args.method
            doc = compute(args, method)
            if args.pretty:
                print(format_series(HalfSeries.from_json(doc["series"])))
            else:
                _emit(doc)
            return EXIT_OK
        if args.command == "dump-word":
            print(dump_word(args))
            return EXIT_OK
        if args.command == "verify":
            bounds = Bounds(args.max, args.max_size, args.max_mu, args.order, args.count, args.seed)
            report = run_suite(args.suite, bounds, args.jobs)
            if args.pretty:
                for r in report.results:
                    mark = "PASS" if r.passed else "FAIL"
                    extra = "" if r.passed else f"  first mismatch {r.to_json()['first_mismatch']} {r.detail}"
                    print(f"{mark} {json.dumps(r.case, sort_keys=True)}{extra}")
                print(f"{args.suite}: {len(report.results) - report.to_json()['failed']}/{len(report.results)} passed")
            else:
                _emit(report.to_json())
            return EXIT_OK if report.passed else EXIT_FAILED
    except UsageError as exc:
        print(f"ppfn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonStabilization as exc:
        print(f"ppfn: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
