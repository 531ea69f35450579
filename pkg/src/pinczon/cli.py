"""Command-line interface.

Subcommands: check, bracket, cohomology, double, deform, list-builtins.
Algebra arguments are file paths or builtin:NAME references.  Exit status:
0 all requested checks pass, 1 a mathematical check failed (a witness is
printed), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from pinczon import builtins as blt
from pinczon import files
from pinczon.cohomology import (
    Cochain,
    cohomology_dims,
    deformation_check,
    pinczon_dims,
    solve_coboundary,
)
from pinczon.forms import is_cyclic, is_vsp, pinczon_bracket
from pinczon.coderiv import check_structure_equation, omega_of
from pinczon.graded import validate_form
from pinczon.structures import (
    AlgebraStructure,
    adjoint_module,
    double_product,
    dual_module,
    verify_identity,
    verify_invariance,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class InputError(Exception):
    pass


def resolve_algebra(ref: str, validate: bool = False) -> AlgebraStructure:
    if ref.startswith("builtin:"):
        name = ref[len("builtin:"):]
        try:
            return blt.builtin_algebra(name)
        except KeyError as exc:
            raise InputError(str(exc))
    doc = files.load_json(ref)
    return files.parse_algebra(doc, validate=validate)


def resolve_form(spec: str | None, algebra: AlgebraStructure):
    if spec is None:
        return algebra.form
    try:
        return blt.named_form(algebra, spec)
    except KeyError:
        pass
    doc = files.load_json(spec)
    if isinstance(doc, dict) and "form" in doc:
        doc = doc["form"]
    if not isinstance(doc, list):
        raise InputError("form file must hold a matrix of rationals")
    return files.parse_form_matrix(doc, algebra.space)


def resolve_module(spec: str, algebra: AlgebraStructure):
    if spec in ("adjoint", "dual"):
        return blt.builtin_module(algebra, spec)
    doc = files.load_json(spec)
    return files.parse_module(doc, algebra)


def parse_degree_range(spec: str) -> range:
    match = re.match(r"^(-?\d+)\.\.(-?\d+)$", spec)
    if not match:
        raise InputError("degree ranges look like 0..2")
    lo, hi = int(match.group(1)), int(match.group(2))
    if hi < lo:
        raise InputError("empty degree range")
    return range(lo, hi + 1)


def emit(report: dict, fmt: str, out):
    if fmt == "machine":
        out.write(files.dump_json(report))
        return
    _emit_human(report, out)


def _emit_human(report: dict, out, indent: str = ""):
    for key in report:
        value = report[key]
        if isinstance(value, dict):
            out.write("%s%s:\n" % (indent, key))
            _emit_human(value, out, indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            out.write("%s%s:\n" % (indent, key))
            for item in value:
                _emit_human(item, out, indent + "  ")
                out.write("\n" if indent == "" else "")
        else:
            out.write("%s%s: %s\n" % (indent, key, value))


def cmd_check(args, out) -> int:
    algebra = resolve_algebra(args.algebra)
    checks = []
    identity = verify_identity(algebra)
    checks.append({"name": "%s identity" % algebra.kind, "ok": identity.ok,
                   "witness": list(identity.witness) if identity.witness else None})
    structure = check_structure_equation(algebra.structure_coderivation()) if identity.ok else None
    if structure is not None:
        checks.append({"name": "structure equation [Q,Q] = 0", "ok": structure.ok,
                       "witness": list(structure.witness[1]) if structure.witness else None})
    form = resolve_form(args.form, algebra)
    if form is not None:
        validation = validate_form(algebra.space, form.matrix)
        checks.append({"name": "form symmetric/degree-0/nondegenerate",
                       "ok": validation.ok, "witness": None,
                       "detail": validation.summary()})
        invariance = verify_invariance(algebra, form)
        checks.append({"name": invariance.title, "ok": invariance.ok,
                       "witness": list(invariance.witness) if invariance.witness else None})
        if algebra.kind in ("associative", "commutative", "lie") and identity.ok and validation.ok:
            omega = omega_of(algebra.shifted_map(), form)
            checks.append({"name": "structure form cyclic", "ok": is_cyclic(omega),
                           "witness": None})
            if algebra.kind == "commutative":
                checks.append({"name": "structure form vanishes on shuffles",
                               "ok": is_vsp(omega), "witness": None})
    ok = all(c["ok"] for c in checks)
    emit({"algebra": algebra.name or args.algebra, "ok": ok, "checks": checks},
         args.format, out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_cohomology(args, out) -> int:
    algebra = resolve_algebra(args.algebra, validate=True)
    degrees = parse_degree_range(args.degrees)
    if args.theory == "pinczon":
        report = pinczon_dims(algebra, degrees)
    else:
        module = resolve_module(args.module, algebra)
        report = cohomology_dims(args.theory, algebra, module, degrees)
    doc = {
        "algebra": algebra.name or args.algebra,
        "theory": report.theory,
        "d_squared_zero": report.d_squared_ok,
        "rows": [{"k": k, "dim_cochains": dc, "dim_cocycles": dz,
                  "dim_coboundaries": db, "dim_H": dh}
                 for k, dc, dz, db, dh in report.rows],
    }
    emit(doc, args.format, out)
    return EXIT_OK if report.d_squared_ok else EXIT_CHECK_FAILED


def _resolve_bracket_operand(ref: str):
    if ref.startswith("builtin:"):
        algebra = resolve_algebra(ref)
        if algebra.form is None:
            raise InputError("builtin %s carries no form; use an explicit form file" % ref)
        if algebra.kind == "prelie":
            raise InputError("bracket of bi-symmetric structure forms: use cyclic kinds here")
        return omega_of(algebra.shifted_map(), algebra.form), algebra
    doc = files.load_json(ref)
    return files.parse_multiform(doc), None


def cmd_bracket(args, out) -> int:
    left, alg_left = _resolve_bracket_operand(args.left)
    right, alg_right = _resolve_bracket_operand(args.right)
    if left.space != right.space:
        raise InputError("forms live on different spaces")
    carrier = alg_left or alg_right
    if args.form is not None:
        form = resolve_form(args.form, carrier or AlgebraStructure(
            left.space, "associative", {}, validate=False))
    elif carrier is not None and carrier.form is not None:
        form = carrier.form
    else:
        raise InputError("no bilinear form given")
    result = pinczon_bracket(left, right, form)
    doc = {
        "arity": result.arity,
        "degree": result.degree,
        "zero": result.is_zero(),
        "coefficients": [[list(key), files.format_rational(val)]
                         for key, val in sorted(result.coeffs.items())],
    }
    emit(doc, args.format, out)
    return EXIT_OK


def cmd_double(args, out) -> int:
    algebra = resolve_algebra(args.algebra, validate=True)
    module = resolve_module(args.module, algebra)
    double = double_product(algebra, module)
    doc = files.algebra_document(double)
    text = files.dump_json(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        out.write("wrote %s (dimension %d)\n" % (args.out, double.space.dim))
    else:
        out.write(text)
    return EXIT_OK


_CA_PATTERN = re.compile(r"^builtin:c_a\((\w+)\)$")


def cmd_deform(args, out) -> int:
    algebra = resolve_algebra(args.algebra, validate=True)
    match = _CA_PATTERN.match(args.cocycle)
    if match:
        data = blt.c_a_cocycle(match.group(1))
    else:
        doc = files.load_json(args.cocycle)
        data = files.parse_cochain_entries(doc, algebra.space.dim)
    from pinczon.cohomology import KIND_THEORY
    theory = KIND_THEORY[algebra.kind]
    module = adjoint_module(algebra)
    cochain = Cochain(theory, 2, algebra, module, data)
    verdict = deformation_check(algebra, cochain)
    doc = {"algebra": algebra.name or args.algebra, "verdict": verdict.verdict}
    if verdict.witness is not None:
        doc["witness"] = list(verdict.witness)
    if verdict.solution is not None and verdict.solution.status == "certificate":
        cert = verdict.solution.certificate
        doc["certificate_nonzeros"] = sum(1 for x in cert if x != 0)
    emit(doc, args.format, out)
    return EXIT_OK


def cmd_list_builtins(args, out) -> int:
    doc = {
        "algebras": sorted(blt.BUILTIN_ALGEBRAS),
        "modules": ["adjoint", "dual"],
        "forms": ["trace", "own"],
        "cocycles": ["c_a(<basis name>)  e.g. builtin:c_a(e12)"],
    }
    emit(doc, args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pinczon",
        description="Exact calculus of quadratic algebra structures and their cohomologies.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="verify identities, structure equation, form compatibility")
    p.add_argument("algebra")
    p.add_argument("--form", default=None, help="trace | own | path to a Gram matrix JSON")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("cohomology", parents=[common], help="exact cohomology dimensions")
    p.add_argument("algebra")
    p.add_argument("--theory", required=True,
                   choices=("hochschild", "harrison", "chevalley", "prelie", "pinczon"))
    p.add_argument("--module", default="adjoint", help="adjoint | dual | path to a module JSON")
    p.add_argument("--degrees", default="0..2", help="range like 0..2")
    p.set_defaults(handler=cmd_cohomology)

    p = sub.add_parser("bracket", parents=[common], help="Pinczon bracket of two cyclic forms")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--form", default=None)
    p.set_defaults(handler=cmd_bracket)

    p = sub.add_parser("double", parents=[common], help="double of an algebra by a bimodule")
    p.add_argument("algebra")
    p.add_argument("--module", default="adjoint")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_double)

    p = sub.add_parser("deform", parents=[common], help="order-1 deformation verdict for a 2-cochain")
    p.add_argument("algebra")
    p.add_argument("cocycle", help="path to a cochain JSON or builtin:c_a(e12)")
    p.set_defaults(handler=cmd_deform)

    p = sub.add_parser("list-builtins", parents=[common], help="available builtin algebras, modules and forms")
    p.set_defaults(handler=cmd_list_builtins)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.handler(args, sys.stdout)
    except (InputError, files.FileFormatError, FileNotFoundError, KeyError) as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return EXIT_INPUT_ERROR
    except ValueError as exc:
        sys.stderr.write("check failed: %s\n" % exc)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
