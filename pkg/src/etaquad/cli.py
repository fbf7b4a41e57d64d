"""Command-line front end.

Subcommands: ``lambda`` (coefficient tables), ``verify`` (identity range
reports), ``reps`` (representation listing), ``classgroup`` (reduced
form classes), ``closed`` (closed-form evaluators).

Exit codes: 0 success, 1 an identity was falsified, 2 usage error,
3 coefficient overflow.  Output is deterministic: identical flags give
byte-identical output regardless of the --threads hint.
"""

from __future__ import annotations

import argparse
import json
import sys

from .etaseries import METHODS, LambdaParams, lambda_multinomial, lambda_table
from .quadform import QuadForm, class_group, representations
from .theorems import CLOSED_FAMILIES, case_arity, case_ids, closed_form, range_report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etaquad",
        description="Exact coefficient tables for the cubed two-factor eta-type product "
        "and verification of prime representation identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_lambda = sub.add_parser("lambda", help="print a coefficient table as n<TAB>value rows")
    p_lambda.add_argument("--a", type=int, required=True)
    p_lambda.add_argument("--b", type=int, required=True)
    p_lambda.add_argument("--n-max", type=int, required=True, dest="n_max")
    p_lambda.add_argument(
        "--method",
        choices=list(METHODS) + ["multinomial"],
        default="sparse",
        help="computation route (default sparse)",
    )

    p_verify = sub.add_parser("verify", help="run one identity case over a prime range")
    p_verify.add_argument("--case", required=True, help=f"one of {', '.join(case_ids())}")
    p_verify.add_argument("--a", type=int)
    p_verify.add_argument("--b", type=int)
    p_verify.add_argument("--p-max", type=int, required=True, dest="p_max")
    p_verify.add_argument("--json", action="store_true", help="emit the JSON report")
    p_verify.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker hint; output does not depend on it",
    )

    p_reps = sub.add_parser("reps", help="list all (x, y) with form(x, y) = n")
    p_reps.add_argument("--form", required=True, help="a,b,c")
    p_reps.add_argument("--n", type=int, required=True)

    p_cg = sub.add_parser("classgroup", help="list the reduced primitive forms of a discriminant")
    p_cg.add_argument("--disc", type=int, required=True)

    p_closed = sub.add_parser("closed", help="evaluate a closed-form coefficient formula")
    p_closed.add_argument("--family", required=True, choices=list(CLOSED_FAMILIES))
    p_closed.add_argument("--n", type=int, required=True)
    p_closed.add_argument("--a", type=int)
    p_closed.add_argument("--b", type=int)

    return parser


def _run_lambda(args) -> int:
    params = LambdaParams(args.a, args.b)
    if args.n_max < 1:
        raise ValueError(f"--n-max must be >= 1, got {args.n_max}")
    if args.method == "multinomial":
        rows = [(n, lambda_multinomial(params, n - 1)) for n in range(1, args.n_max + 1)]
    else:
        table = lambda_table(params, args.n_max, args.method)
        rows = [(n, table.value(n)) for n in range(1, args.n_max + 1)]
    for n, value in rows:
        print(f"{n}\t{value}")
    return 0


def _grid_from_args(case_id: str, args):
    arity = case_arity(case_id)
    if arity == 0:
        if args.a is not None or args.b is not None:
            raise ValueError(f"case {case_id} takes no --a/--b parameters")
        return None
    if arity == 1:
        if args.a is None or args.b is not None:
            raise ValueError(f"case {case_id} takes exactly --a")
        return [args.a]
    if args.a is None or args.b is None:
        raise ValueError(f"case {case_id} needs both --a and --b")
    return [(args.a, args.b)]


def _run_verify(args) -> int:
    if args.threads < 1:
        raise ValueError(f"--threads must be >= 1, got {args.threads}")
    if args.case not in case_ids():
        raise ValueError(f"unknown case {args.case!r}; known: {', '.join(case_ids())}")
    if args.p_max < 0:
        raise ValueError(f"--p-max must be >= 0, got {args.p_max}")
    grid = _grid_from_args(args.case, args)
    report = range_report(args.case, args.p_max, grid)
    if args.json:
        print(_report_json(report))
    else:
        params = ";".join(",".join(str(v) for v in combo) for combo in report.params) or "-"
        print(f"case\t{report.case_id}")
        print(f"params\t{params}")
        print(f"p_max\t{report.p_max}")
        print(f"checked\t{report.checked}")
        print(f"skipped\t{report.skipped}")
        print(f"falsified\t{len(report.falsified)}")
    return 0 if report.ok else 1


def _report_json(report) -> str:
    # all numbers as decimal strings: JSON consumers must not round-trip
    # these through 64-bit floats
    def s(v):
        return None if v is None else str(v)

    if report.params and len(report.params[0]) == 2:
        params = {"a": s(report.params[0][0]), "b": s(report.params[0][1])}
    elif report.params and len(report.params[0]) == 1:
        params = {"a": s(report.params[0][0]), "b": None}
    else:
        params = None
    witnesses = []
    for v in report.falsified:
        x, y = v.witness if v.witness is not None else (None, None)
        witnesses.append(
            {
                "p": s(v.p),
                "x": s(x),
                "y": s(y),
                "index": s(v.index),
                "lhs": s(v.lhs),
                "rhs": s(v.rhs),
            }
        )
    doc = {
        "case": report.case_id,
        "params": params,
        "p_max": s(report.p_max),
        "checked": s(report.checked),
        "skipped": s(report.skipped),
        "falsified": s(len(report.falsified)),
        "witnesses": witnesses,
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def _run_reps(args) -> int:
    try:
        a, b, c = (int(part) for part in args.form.split(","))
    except ValueError as exc:
        raise ValueError(f"--form must be three comma-separated integers, got {args.form!r}") from exc
    form = QuadForm(a, b, c)
    if not form.is_positive_definite():
        raise ValueError(f"form {form} is not positive definite")
    if args.n < 1:
        raise ValueError(f"--n must be >= 1, got {args.n}")
    rep_set = representations(form, args.n)
    for x, y in rep_set.pairs:
        print(f"{x}\t{y}")
    print(f"count\t{rep_set.count}")
    return 0


def _run_classgroup(args) -> int:
    group = class_group(args.disc)
    for form in group.classes:
        print(f"{form.a}\t{form.b}\t{form.c}")
    return 0


def _run_closed(args) -> int:
    value = closed_form(args.family, args.n, args.a, args.b)
    print(value)
    return 0


_HANDLERS = {
    "lambda": _run_lambda,
    "verify": _run_verify,
    "reps": _run_reps,
    "classgroup": _run_classgroup,
    "closed": _run_closed,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except OverflowError as exc:
        print(f"etaquad: overflow: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"etaquad: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
