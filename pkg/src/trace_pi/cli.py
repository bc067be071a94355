"""Command-line front-end (``trace-pi``).

Exit codes: 0 all checks pass, 1 negative mathematical verdict, 2 usage or
parse error, 3 row cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .algebra import (
    TraceAlgebra,
    build_c2,
    build_ck_degenerate,
    build_dn,
    build_mn,
    build_ut2,
    load_algebra,
)
from .catalog import CATALOG, catalog, catalog_params
from .codim import (
    AUTO,
    codim_report,
    contains_at_degree,
    ideals_equal_at_degree,
    spanning_family,
    verify_spanning_family,
)
from .comb import count_trace_monomials, stirling2
from .dsl import parse_polynomial
from .errors import RowCapExceeded, TracePIError
from .evaluate import is_identity
from .poly import COMMUTATIVE, GENERAL
from .rational import format_fraction, fraction_to_json, parse_rational_list, to_fraction
from .suite import run_suite
from .tideal import GeneratorSet, verify_generators

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

ALGEBRA_KINDS = ("d2", "d3", "dn", "ck", "c2", "ut2", "mn", "file")


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (TracePIError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list(text: str) -> list[Fraction]:
    try:
        return parse_rational_list(text)
    except (TracePIError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _degree_range(text: str) -> list[int]:
    """``5``, ``1..5`` or ``1,3,4``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree range {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"degrees must be >= 1: {text!r}")
    return values


def _add_algebra_args(p: argparse.ArgumentParser, suffix: str = "", flag: str = "--algebra", required: bool = True):
    dest = f"algebra{suffix.replace('-', '_')}"
    p.add_argument(flag, dest=dest, choices=ALGEBRA_KINDS, required=required, help="algebra family")
    p.add_argument(f"--trace{suffix}", dest=f"trace{suffix.replace('-', '_')}", type=_rational_list,
                   help="trace values, e.g. 1,0 or 1/2,3")
    p.add_argument(f"--file{suffix}", dest=f"file{suffix.replace('-', '_')}", help="algebra JSON file")
    if suffix:
        p.add_argument(f"--alpha{suffix}", dest=f"alpha{suffix.replace('-', '_')}", type=_rational)
        p.add_argument(f"--beta{suffix}", dest=f"beta{suffix.replace('-', '_')}", type=_rational)
        p.add_argument(f"--k{suffix}", dest=f"k{suffix.replace('-', '_')}", type=_positive_int)


def _add_params(p: argparse.ArgumentParser):
    p.add_argument("--alpha", type=_rational, help="alpha (polynomial and algebra parameter)")
    p.add_argument("--beta", type=_rational, help="beta (polynomial and algebra parameter)")
    p.add_argument("--k", type=_positive_int, help="k for C_k and g7; matrix size for mn")


def _add_output(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--output", help="write the report to this file instead of stdout")
    p.add_argument("--workers", type=_positive_int, default=None,
                   help="processes for matrix assembly (default: available CPUs)")
    p.add_argument("--row-cap", type=_positive_int, default=None,
                   help="refuse degrees whose matrix has more rows (default 50000 or $TRACE_PI_ROW_CAP)")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times for reproducible output")


def build_algebra(args, suffix: str = "") -> TraceAlgebra:
    s = suffix.replace("-", "_")
    kind = getattr(args, f"algebra{s}")
    trace = getattr(args, f"trace{s}", None)
    alpha = getattr(args, f"alpha{s}", None)
    beta = getattr(args, f"beta{s}", None)
    k = getattr(args, f"k{s}", None)
    path = getattr(args, f"file{s}", None)
    label = f"--algebra{suffix}" if not suffix else f"--{suffix.strip('-')}"
    if kind in ("d2", "d3", "dn"):
        if trace is None:
            if kind == "d2" and alpha is not None and beta is not None:
                trace = [alpha, beta]
            else:
                raise UsageError(f"{label} {kind} needs --trace{suffix}")
        want = {"d2": 2, "d3": 3}.get(kind)
        if want is not None and len(trace) != want:
            raise UsageError(f"{kind} needs {want} trace values, got {len(trace)}")
        return build_dn(trace)
    if kind == "ck":
        if k is None or alpha is None:
            raise UsageError(f"ck needs --k{suffix} and --alpha{suffix}")
        return build_ck_degenerate(k, alpha)
    if kind == "c2":
        if trace is not None:
            if len(trace) != 2:
                raise UsageError("c2 needs two trace values")
            return build_c2(*trace)
        if alpha is None or beta is None:
            raise UsageError(f"c2 needs --alpha{suffix} and --beta{suffix} (or --trace{suffix} a,b)")
        return build_c2(alpha, beta)
    if kind == "ut2":
        return build_ut2()
    if kind == "mn":
        return build_mn(k if k is not None else 2, alpha if alpha is not None else 1)
    if kind == "file":
        if not path:
            raise UsageError(f"file algebras need --file{suffix}")
        return load_algebra(path)
    raise UsageError(f"unknown algebra kind {kind!r}")


def _catalog_args(args) -> dict:
    return {"alpha": args.alpha, "beta": args.beta, "k": args.k}


def resolve_polynomial(text: str, args):
    name = text.strip()
    if name in CATALOG:
        values = _catalog_args(args)
        params = []
        for pname in catalog_params(name):
            if values[pname] is None:
                raise UsageError(f"{name} needs --{pname}")
            params.append(values[pname])
        return name, catalog(name, params)
    return name, parse_polynomial(text)


# rendering

def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, list):
        return " ".join(str(v) for v in value)
    return str(value)


def render(payload: dict, fmt: str) -> str:
    columns = payload.get("columns", [])
    # single-record reports render as a one-row table
    rows = payload.get("rows", [payload] if columns else [])
    if fmt == "json":
        body = {k: v for k, v in payload.items() if k != "columns"}
        return json.dumps(body, indent=2, default=_json_default) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
        return buf.getvalue()
    lines = []
    if payload.get("title"):
        lines.append(payload["title"])
    if columns:
        cells = [[_cell(r.get(c)) for c in columns] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        for row in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    for note in payload.get("notes", []):
        lines.append(note)
    if "verdict" in payload:
        lines.append(f"verdict: {payload['verdict']}")
    return "\n".join(lines) + "\n"


def _json_default(obj):
    if isinstance(obj, Fraction):
        return fraction_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# commands

def _workers(args) -> int:
    return args.workers or os.cpu_count() or 1


def cmd_codim(args) -> tuple[dict, int]:
    A = build_algebra(args)
    rows = []
    for n in args.n:
        report = codim_report(A, n, args.mode, _workers(args), args.row_cap, timing=not args.no_timing)
        rows.append(report.to_dict())
    mismatch = any(r["match"] is False for r in rows)
    payload = {
        "command": "codim",
        "title": f"trace codimensions of {A.name}",
        "algebra": A.name,
        "columns": ["algebra", "n", "codim", "closed_form", "match", "mode", "elapsed_ms"],
        "rows": rows,
        "verdict": "mismatch" if mismatch else "ok",
    }
    return payload, EXIT_NEGATIVE if mismatch else EXIT_OK


def cmd_check(args) -> tuple[dict, int]:
    name, p = resolve_polynomial(args.poly, args)
    A = build_algebra(args)
    result = is_identity(p, A)
    payload = {
        "command": "check",
        "title": f"{name} on {A.name}: {p}",
        "algebra": A.name,
        "polynomial": str(p),
        "columns": ["algebra", "polynomial", "identity", "witness"],
        "identity": result.identity,
        "witness": list(result.labels) if result.labels else None,
        "verdict": "identity" if result.identity else "not-identity",
    }
    if not result.identity:
        payload["notes"] = [f"witness: ({', '.join(result.labels)}) -> {result.value}"]
    return payload, EXIT_OK if result.identity else EXIT_NEGATIVE


def cmd_verify(args) -> tuple[dict, int]:
    names = [g.strip() for g in args.gens.split(",") if g.strip()]
    if not names:
        raise UsageError("--gens needs at least one generator")
    gens = []
    for g in names:
        gens.append(resolve_polynomial(g, args)[1])
    A = build_algebra(args)
    report = verify_generators(GeneratorSet(tuple(gens), tuple(names)), A, args.max_n, args.mode)
    data = report.to_dict()
    payload = {
        "command": "verify",
        "title": f"generators {report.generators} on {A.name}",
        **{k: v for k, v in data.items() if k != "degrees"},
        "columns": ["n", "dim_consequences", "dim_identities", "sound", "complete"],
        "rows": data["degrees"],
        "verdict": "pass" if report.ok else f"fail at n={report.first_failure}",
    }
    return payload, EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_basis(args) -> tuple[dict, int]:
    A = build_algebra(args)
    family = spanning_family(args.family, args.n, args.k)
    report = verify_spanning_family(family, A, args.n, _workers(args), args.row_cap)
    payload = {
        "command": "basis",
        "title": f"family {args.family} on {A.name}, n={args.n}: "
                 f"{report.size} monomials, rank {report.rank}, codimension {report.codim}",
        "algebra": A.name,
        "family": args.family,
        "n": args.n,
        "columns": ["algebra", "family", "n", "size", "codim", "rank", "ok"],
        **report.to_dict(),
        "monomials": [str(m) for m in family] if args.list else None,
        "verdict": "pass" if report.ok else "fail",
    }
    return payload, EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_compare(args) -> tuple[dict, int]:
    A = build_algebra(args, "-a")
    B = build_algebra(args, "-b")
    rows = []
    for n in range(1, args.max_n + 1):
        if args.mode == "equal":
            holds = ideals_equal_at_degree(A, B, n, args.row_cap)
        else:
            holds = contains_at_degree(A, B, n, args.row_cap)
        rows.append({"n": n, "holds": holds})
    ok = all(r["holds"] for r in rows)
    relation = "Id(A) = Id(B)" if args.mode == "equal" else "Id(B) in Id(A)"
    payload = {
        "command": "compare",
        "title": f"A = {A.name}, B = {B.name}: {relation}",
        "a": A.name,
        "b": B.name,
        "mode": args.mode,
        "columns": ["n", "holds"],
        "rows": rows,
        "verdict": ("equal" if args.mode == "equal" else "contained") if ok else (
            "not equal" if args.mode == "equal" else "not contained"),
    }
    return payload, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_count(args) -> tuple[dict, int]:
    if args.k > args.n:
        raise UsageError("need k <= n")
    count = count_trace_monomials(args.n, args.k)
    expected = stirling2(args.n + 1, args.k + 1)
    payload = {
        "command": "count",
        "columns": ["n", "k", "count", "stirling"],
        "rows": [{"n": args.n, "k": args.k, "count": count, "stirling": expected}],
        "verdict": "ok" if count == expected else "mismatch",
    }
    return payload, EXIT_OK if count == expected else EXIT_NEGATIVE


def cmd_paper_suite(args) -> tuple[dict, int]:
    only = set(args.only) if args.only else None
    results = run_suite(timing=not args.no_timing, only=only)
    passed = sum(r.passed for r in results)
    notes = []
    for r in results:
        notes.append(f"[{'PASS' if r.passed else 'FAIL'}] {r.id}. {r.title}")
        notes.extend(f"      {d}" for d in r.details)
    payload = {
        "command": "paper-suite",
        "title": "reproduction scorecard",
        "columns": ["id", "title", "passed", "elapsed_ms"],
        "rows": [r.to_dict() for r in results],
        "passed": passed,
        "total": len(results),
        "notes": notes,
        "verdict": f"{passed}/{len(results)} criteria pass",
    }
    return payload, EXIT_OK if passed == len(results) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trace-pi", description="Trace identities and codimensions of small algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("codim", help="trace codimension table")
    _add_algebra_args(p)
    _add_params(p)
    p.add_argument("--n", type=_degree_range, required=True, help="degrees: 5, 1..6 or 1,3")
    p.add_argument("--mode", choices=(AUTO, GENERAL, COMMUTATIVE), default=AUTO)
    _add_output(p)
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("check", help="is a polynomial a trace identity?")
    p.add_argument("--poly", required=True, help="catalog name (f1..h5) or polynomial text")
    _add_algebra_args(p)
    _add_params(p)
    _add_output(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="check that generators give all identities up to a degree")
    p.add_argument("--gens", required=True, help="comma-separated catalog names or polynomials")
    _add_algebra_args(p)
    _add_params(p)
    p.add_argument("--max-n", type=_positive_int, required=True)
    p.add_argument("--mode", choices=(AUTO, GENERAL, COMMUTATIVE), default=AUTO)
    _add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("basis", help="check a spanning family against the codimension")
    p.add_argument("--family", required=True, help="one-trace, two-trace, three-trace, c2, ck; join with +")
    _add_algebra_args(p)
    _add_params(p)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--list", action="store_true", help="include the family's monomials")
    _add_output(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("compare", help="compare identity spaces degree by degree")
    _add_algebra_args(p, "-a", "--a")
    _add_algebra_args(p, "-b", "--b")
    p.add_argument("--max-n", type=_positive_int, required=True)
    p.add_argument("--mode", choices=("equal", "contains"), default="equal",
                   help="equal: Id(A) = Id(B); contains: Id(B) in Id(A), i.e. A in var(B)")
    _add_output(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("count", help="commutative trace monomials with k traces")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("paper-suite", help="run the full reproduction battery")
    p.add_argument("--only", type=_positive_int, action="append", help="run only this criterion (repeatable)")
    _add_output(p)
    p.set_defaults(func=cmd_paper_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if getattr(args, "k", None) is not None and args.command == "count" and args.k < 0:
        print("trace-pi: error: k must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        payload, code = args.func(args)
    except RowCapExceeded as exc:
        print(f"trace-pi: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, TracePIError, OSError) as exc:
        print(f"trace-pi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(payload, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
