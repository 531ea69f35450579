"""Strict JSON file formats for algebras, modules, forms and cochains.

All scalars travel as exact-rational strings "p/q" (or integer strings);
floats are rejected.  Unknown fields are rejected.  Machine reports are
JSON with sorted keys, so byte output is deterministic for a fixed input.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from pinczon.graded import BilinearForm, GradedSpace, ZERO
from pinczon.forms import MultiForm
from pinczon.structures import AlgebraStructure, Bimodule

_RATIONAL = re.compile(r"^-?\d+(/[1-9]\d*)?$")


class FileFormatError(ValueError):
    pass


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise FileFormatError("not an exact rational: %r" % (text,))
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def _require_fields(doc: dict, required, optional=()):
    unknown = set(doc) - set(required) - set(optional)
    if unknown:
        raise FileFormatError("unknown fields: %s" % ", ".join(sorted(unknown)))
    missing = [f for f in required if f not in doc]
    if missing:
        raise FileFormatError("missing fields: %s" % ", ".join(missing))


def parse_algebra(doc: dict, validate: bool = True) -> AlgebraStructure:
    """An algebra definition document into a structure (and optional module)."""
    _require_fields(doc, ("name", "kind", "dimension", "degrees", "basis_names", "product"),
                    ("form", "module"))
    n = doc["dimension"]
    if not isinstance(n, int) or n < 1:
        raise FileFormatError("dimension must be a positive integer")
    degrees = doc["degrees"]
    names = doc["basis_names"]
    if len(degrees) != n or len(names) != n:
        raise FileFormatError("degrees and basis_names must have length %d" % n)
    if not all(isinstance(d, int) for d in degrees):
        raise FileFormatError("degrees must be integers")
    space = GradedSpace(tuple(degrees), tuple(names))
    product: dict[tuple, tuple] = {}
    for entry in doc["product"]:
        if len(entry) != 4:
            raise FileFormatError("product entries are [i, j, k, coefficient]")
        i, j, k, coeff = entry
        for idx in (i, j, k):
            if not isinstance(idx, int) or not 0 <= idx < n:
                raise FileFormatError("product index out of range: %r" % (entry,))
        value = parse_rational(coeff)
        vec = list(product.get((i, j), (ZERO,) * n))
        vec[k] += value
        product[(i, j)] = tuple(vec)
    form = None
    if "form" in doc:
        form = parse_form_matrix(doc["form"], space)
    algebra = AlgebraStructure(space, doc["kind"], product, form,
                               name=doc["name"], validate=validate)
    return algebra


def parse_form_matrix(rows, space: GradedSpace) -> BilinearForm:
    n = space.dim
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FileFormatError("form matrix must be %d x %d" % (n, n))
    gram = tuple(tuple(parse_rational(x) for x in row) for row in rows)
    return BilinearForm(space, gram)


def parse_module(doc: dict, algebra: AlgebraStructure, validate: bool = True) -> Bimodule:
    _require_fields(doc, ("dimension", "degrees", "left_action"),
                    ("right_action", "basis_names", "name"))
    m = doc["dimension"]
    degrees = doc["degrees"]
    if len(degrees) != m:
        raise FileFormatError("module degrees must have length %d" % m)
    names = tuple(doc.get("basis_names", ["m%d" % (i + 1) for i in range(m)]))
    space = GradedSpace(tuple(degrees), names)

    def parse_action(entries, left: bool):
        action: dict[tuple, tuple] = {}
        for entry in entries:
            if len(entry) != 4:
                raise FileFormatError("action entries are [i, p, q, coefficient]")
            i, p, q, coeff = entry
            if left and not (0 <= i < algebra.space.dim and 0 <= p < m and 0 <= q < m):
                raise FileFormatError("action index out of range: %r" % (entry,))
            if not left and not (0 <= p < m and 0 <= i < algebra.space.dim and 0 <= q < m):
                raise FileFormatError("action index out of range: %r" % (entry,))
            key = (i, p) if left else (p, i)
            vec = list(action.get(key, (ZERO,) * m))
            vec[q] += parse_rational(coeff)
            action[key] = tuple(vec)
        return action

    left = parse_action(doc["left_action"], True)
    right = None
    if "right_action" in doc:
        right = parse_action(doc["right_action"], False)
    if algebra.kind == "lie":
        return Bimodule(algebra, space, left, None, name=doc.get("name", "module"),
                        validate=validate)
    return Bimodule(algebra, space, left, right or {}, name=doc.get("name", "module"),
                    validate=validate)


def algebra_document(a: AlgebraStructure) -> dict:
    entries = []
    for (i, j), vec in sorted(a.product.items()):
        for k, coeff in enumerate(vec):
            if coeff != 0:
                entries.append([i, j, k, format_rational(coeff)])
    doc = {
        "name": a.name or a.kind,
        "kind": a.kind,
        "dimension": a.space.dim,
        "degrees": list(a.space.degrees),
        "basis_names": list(a.space.names),
        "product": entries,
    }
    if a.form is not None:
        doc["form"] = [[format_rational(x) for x in row] for row in a.form.matrix]
    return doc


def parse_multiform(doc: dict) -> MultiForm:
    _require_fields(doc, ("space", "arity", "coefficients"), ("name",))
    spec = doc["space"]
    _require_fields(spec, ("dimension", "degrees"), ("basis_names",))
    n = spec["dimension"]
    degrees = spec["degrees"]
    if len(degrees) != n:
        raise FileFormatError("space degrees must have length %d" % n)
    names = tuple(spec.get("basis_names", ["e%d" % (i + 1) for i in range(n)]))
    space = GradedSpace(tuple(degrees), names)
    arity = doc["arity"]
    coeffs = {}
    for entry in doc["coefficients"]:
        if len(entry) != 2:
            raise FileFormatError("form coefficients are [[indices], value]")
        key, value = entry
        if len(key) != arity or any(not (0 <= i < n) for i in key):
            raise FileFormatError("bad form key %r" % (key,))
        coeffs[tuple(key)] = parse_rational(value)
    return MultiForm(space, arity, coeffs)


def multiform_document(form: MultiForm, name: str = "") -> dict:
    return {
        "name": name,
        "space": {"dimension": form.space.dim, "degrees": list(form.space.degrees),
                  "basis_names": list(form.space.names)},
        "arity": form.arity,
        "coefficients": [[list(key), format_rational(val)]
                         for key, val in sorted(form.coeffs.items())],
    }


def parse_cochain_entries(doc: dict, n: int) -> dict:
    """A bilinear cochain document: {"entries": [[i, j, k, "p/q"], ...]}."""
    _require_fields(doc, ("entries",), ("name",))
    data: dict[tuple, list] = {}
    for entry in doc["entries"]:
        if len(entry) != 4:
            raise FileFormatError("cochain entries are [i, j, k, coefficient]")
        i, j, k, coeff = entry
        if not all(isinstance(t, int) and 0 <= t < n for t in (i, j, k)):
            raise FileFormatError("cochain index out of range: %r" % (entry,))
        vec = data.setdefault((i, j), [ZERO] * n)
        vec[k] += parse_rational(coeff)
    return {key: tuple(vec) for key, vec in data.items() if any(c != 0 for c in vec)}


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise FileFormatError("invalid JSON in %s: %s" % (path, exc))


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
