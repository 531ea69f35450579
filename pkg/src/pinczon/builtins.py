"""Built-in example algebras, forms and cocycles.

The library of small structures used throughout the test battery: the 2x2
matrix algebra in all three guises (associative, Lie, pre-Lie), its
traceless Lie subalgebra, the dual numbers as a commutative algebra, the
quadratic pre-Lie semidirect product of the matrix algebra with its dual,
and the trace-projection cocycles on the pre-Lie matrix algebra.
"""

from __future__ import annotations

from fractions import Fraction

from pinczon.graded import BilinearForm, GradedSpace, ZERO, ONE
from pinczon.structures import (
    AlgebraStructure,
    Bimodule,
    adjoint_module,
    dual_module,
    semidirect_product,
)

F = Fraction


def _m2_data():
    names = ("e11", "e12", "e21", "e22")
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    space = GradedSpace((0, 0, 0, 0), names)
    product = {}
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c:
                vec = [ZERO] * 4
                vec[idx[(a, d)]] = ONE
                product[(i, j)] = tuple(vec)
    gram = [[ZERO] * 4 for _ in range(4)]
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c and d == a:
                gram[i][j] = ONE
    return space, product, tuple(tuple(row) for row in gram)


def m2() -> AlgebraStructure:
    space, product, gram = _m2_data()
    return AlgebraStructure(space, "associative", product,
                            BilinearForm(space, gram), name="M2")


def m2_prelie() -> AlgebraStructure:
    space, product, _ = _m2_data()
    return AlgebraStructure(space, "prelie", product, name="M2-prelie")


def gl2() -> AlgebraStructure:
    space, product, gram = _m2_data()
    bracket = {}
    for i in range(4):
        for j in range(4):
            left = product.get((i, j), (ZERO,) * 4)
            right = product.get((j, i), (ZERO,) * 4)
            vec = tuple(a - b for a, b in zip(left, right))
            if any(c != 0 for c in vec):
                bracket[(i, j)] = vec
    return AlgebraStructure(space, "lie", bracket, BilinearForm(space, gram), name="gl2")


def sl2() -> AlgebraStructure:
    """Basis (e, f, h) with [h,e] = 2e, [h,f] = -2f, [e,f] = h; form tr(xy)."""
    space = GradedSpace((0, 0, 0), ("e", "f", "h"))
    E, Fb, H = 0, 1, 2

    def vec(**kw):
        out = [ZERO] * 3
        for name, c in kw.items():
            out[{"e": E, "f": Fb, "h": H}[name]] = F(c)
        return tuple(out)

    bracket = {
        (H, E): vec(e=2), (E, H): vec(e=-2),
        (H, Fb): vec(f=-2), (Fb, H): vec(f=2),
        (E, Fb): vec(h=1), (Fb, E): vec(h=-1),
    }
    gram = ((ZERO, ONE, ZERO), (ONE, ZERO, ZERO), (ZERO, ZERO, F(2)))
    return AlgebraStructure(space, "lie", bracket, BilinearForm(space, gram), name="sl2")


def kx2() -> AlgebraStructure:
    """The dual numbers K[x]/(x^2) with the hyperbolic pairing b(1, x) = 1."""
    space = GradedSpace((0, 0), ("one", "x"))
    product = {
        (0, 0): (ONE, ZERO),
        (0, 1): (ZERO, ONE),
        (1, 0): (ZERO, ONE),
    }
    gram = ((ZERO, ONE), (ONE, ZERO))
    return AlgebraStructure(space, "commutative", product, BilinearForm(space, gram), name="Kx2")


def vvstar() -> AlgebraStructure:
    """The quadratic pre-Lie algebra M2 x M2* with the canonical pairing."""
    base = m2_prelie()
    algebra = semidirect_product(base, dual_module(base))
    n = base.space.dim
    gram = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        gram[i][n + i] = ONE
        gram[n + i][i] = ONE
    form = BilinearForm(algebra.space, tuple(tuple(row) for row in gram))
    return AlgebraStructure(algebra.space, "prelie", algebra.product, form, name="VVstar")


def c_a_cocycle(a_name: str) -> dict:
    """The 2-cochain c_a(x, y) = (1/2) tr(x) [y, a] on the pre-Lie matrix algebra.

    Returned as raw bilinear data over the M2 basis.
    """
    algebra = m2_prelie()
    space = algebra.space
    aidx = space.index_of(a_name)
    a_vec = space.basis_vector(aidx)
    trace = {0: ONE, 3: ONE}
    data = {}
    for i, tr in trace.items():
        for y in range(space.dim):
            yv = space.basis_vector(y)
            ya = algebra.mul_vec(yv, a_vec)
            ay = algebra.mul_vec(a_vec, yv)
            vec = tuple(F(1, 2) * tr * (p - q) for p, q in zip(ya, ay))
            if any(c != 0 for c in vec):
                data[(i, y)] = vec
    return data


BUILTIN_ALGEBRAS = {
    "M2": m2,
    "M2-prelie": m2_prelie,
    "gl2": gl2,
    "sl2": sl2,
    "Kx2": kx2,
    "VVstar": vvstar,
}


def builtin_algebra(name: str) -> AlgebraStructure:
    try:
        return BUILTIN_ALGEBRAS[name]()
    except KeyError:
        raise KeyError("unknown builtin algebra %r (have: %s)" %
                       (name, ", ".join(sorted(BUILTIN_ALGEBRAS))))


def named_form(algebra: AlgebraStructure, name: str) -> BilinearForm:
    """Named bilinear forms: `trace` (and `own` for the stored one)."""
    if name == "own":
        if algebra.form is None:
            raise KeyError("algebra %s carries no stored form" % algebra.name)
        return algebra.form
    if name == "trace":
        reference = {"M2": m2, "M2-prelie": m2, "gl2": m2, "sl2": sl2}
        if algebra.name in reference:
            return reference[algebra.name]().form if algebra.name != "sl2" else sl2().form
        raise KeyError("no trace form known for %s" % algebra.name)
    raise KeyError("unknown form name %r" % name)


def builtin_module(algebra: AlgebraStructure, name: str) -> Bimodule:
    if name == "adjoint":
        return adjoint_module(algebra)
    if name == "dual":
        return dual_module(algebra)
    raise KeyError("unknown builtin module %r" % name)
