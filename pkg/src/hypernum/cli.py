"""Command-line front end.

    hypernum table <basis>
    hypernum validate <basis.json>
    hypernum verify <suite name or file>
    hypernum scaling <bundled|field.json> --beta 2 --alpha 0

Exit codes: 0 success, 1 check failed, 2 usage error (unknown basis),
3 unreadable basis file, 4 bad suite or grid.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._num import FLOAT_TOL, format_scalar, matrix_to_json, resolve_mode
from .complex_reps import BUILTIN_BASES, basis_from_json, builtin_basis, validate_cyclic
from .harness import SuiteError, load_suite, results_to_json, results_to_text, run_suite
from .quaternion import BASIS_TAGS, LABELS, multiplication_table, render_table
from .symmetry.functionals import (
    EMField4,
    bundled_sample_field,
    functional_scaling,
    scaling_to_json,
    scaling_to_text,
)
from .symmetry.groups import TransformGroup
from .symmetry.sampling import GridTooSmallError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_SUITE = 0, 1, 2, 3, 4

POWER_LABELS = ("1", "i", "-1", "-i")


def _complex_basis_table(name: str, fmt: str) -> str:
    basis = builtin_basis(name, resolve_mode(None))
    powers = basis.powers
    if fmt == "json":
        doc = {"basis": name, "powers": dict(zip(POWER_LABELS, (matrix_to_json(p) for p in powers)))}
        return json.dumps(doc, indent=2) + "\n"
    lines = [f"basis {name} ({basis.dim}x{basis.dim}), powers of the generator:"]
    for label, p in zip(POWER_LABELS, powers):
        lines.append(f"  {label}:")
        for row in p:
            lines.append("    " + " ".join(f"{format_scalar(v):>3}" for v in row))
    lines.append("products:")
    width = 4
    lines.append(f"{'*':<{width}}" + "".join(f"{lab:>{width}}" for lab in POWER_LABELS))
    for a, la in enumerate(POWER_LABELS):
        cells = []
        for b in range(4):
            prod = powers[a] @ powers[b]
            hit = [POWER_LABELS[k] for k, p in enumerate(powers) if (prod == p).all()]
            cells.append(hit[0] if hit else "?")
        lines.append(f"{la:<{width}}" + "".join(f"{c:>{width}}" for c in cells))
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    name = args.basis
    if name in BASIS_TAGS:
        if args.format == "json":
            doc = {"basis": name, "labels": list(LABELS[name]), "table": multiplication_table(name)}
            sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        else:
            sys.stdout.write(render_table(name))
        return EXIT_OK
    if name in BUILTIN_BASES:
        sys.stdout.write(_complex_basis_table(name, args.format))
        return EXIT_OK
    known = ", ".join(list(BASIS_TAGS) + sorted(BUILTIN_BASES))
    print(f"error: unknown basis {name!r} (known: {known})", file=sys.stderr)
    return EXIT_USAGE


def cmd_validate(args) -> int:
    try:
        doc = json.loads(Path(args.file).read_text())
        basis = basis_from_json(doc, resolve_mode(None), name=Path(args.file).stem)
        result = validate_cyclic(basis, args.tol if args.tol is not None else FLOAT_TOL)
    except (OSError, ValueError, TypeError) as exc:
        print(f"error: cannot parse basis: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.format == "json":
        print(json.dumps({"basis": basis.name, "valid": result.ok, "witness": result.witness}))
    elif result.ok:
        print(f"{basis.name}: valid cyclic basis (m={basis.m}, dim={basis.dim})")
    else:
        print(f"{basis.name}: invalid: {result.witness}")
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        suite = load_suite(args.suite, resolve_mode(None), args.seed)
    except SuiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SUITE
    except (OSError, ValueError) as exc:
        print(f"error: cannot load suite: {exc}", file=sys.stderr)
        return EXIT_SUITE
    try:
        results = run_suite(suite, args.tol, args.tol)
    except (GridTooSmallError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SUITE
    fmt = args.format or suite.format
    text = results_to_json(suite, results) if fmt == "json" else results_to_text(suite, results)
    out = args.output or suite.output
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    failing = [r.case.name for r in results if not r.matches]
    for name in failing:
        print(f"mismatch: case {name!r}", file=sys.stderr)
    return EXIT_FAIL if failing else EXIT_OK


def cmd_scaling(args) -> int:
    try:
        if args.field == "bundled":
            field = bundled_sample_field(args.seed if args.seed is not None else 0)
        else:
            field = EMField4.from_dict(json.loads(Path(args.field).read_text()))
        group = TransformGroup.total_gauge(field.E4.shape[-1], args.beta, args.alpha)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    rows = functional_scaling(field, group)
    if args.format == "json":
        sys.stdout.write(scaling_to_json(rows, group) + "\n")
    else:
        sys.stdout.write(scaling_to_text(rows, group))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--tol", type=float, default=None, help="override the check tolerance")
    common.add_argument("--seed", type=int, default=None, help="override the seed (default 0)")

    p = argparse.ArgumentParser(prog="hypernum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="print a basis and its multiplication table")
    t.add_argument("basis")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("validate", parents=[common], help="check a cyclic basis given as JSON")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("verify", parents=[common], help="run an invariance suite")
    r.add_argument("suite", help="bundled suite name or path to a suite file")
    r.add_argument("-o", "--output", default=None)
    r.set_defaults(func=cmd_verify)

    s = sub.add_parser("scaling", parents=[common], help="functional scaling under a total gauge map")
    s.add_argument("field", help="'bundled' or path to an EMField4 JSON file")
    s.add_argument("--beta", type=float, default=2.0)
    s.add_argument("--alpha", type=float, default=0.0)
    s.set_defaults(func=cmd_scaling)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None and args.command != "verify":
        args.format = "text"
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
