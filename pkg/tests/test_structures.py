"""Algebra structures, modules, semidirect and double products, lifting."""

import random
from fractions import Fraction as F
from itertools import product as iproduct

import pytest

from pinczon.graded import BilinearForm, GradedSpace, validate_form
from pinczon.forms import is_cyclic, symmetrize
from pinczon.coderiv import (
    bracket_sym,
    bracket_tensor,
    is_b_quadratic,
    is_symmetric_map,
    omega_of,
    shift_map,
)
from pinczon.structures import (
    AlgebraStructure,
    Bimodule,
    adjoint_module,
    double_product,
    dual_module,
    hyperbolic_form,
    invariant_form_space,
    lift_cochain,
    semidirect_product,
    verify_identity,
    verify_invariance,
    verify_module_axioms,
)
from pinczon.builtins import gl2, kx2, m2, m2_prelie, sl2, vvstar
from helpers import m2_space


def test_verify_identity_builtins():
    for factory in (m2, gl2, sl2, kx2, m2_prelie, vvstar):
        assert verify_identity(factory()).ok


def test_identity_failure_witnessed_and_raises():
    space, prod, _ = m2_space()
    bad = dict(prod)
    vec = [F(0)] * 4
    vec[0] = F(1)
    bad[(1, 1)] = tuple(vec)
    with pytest.raises(ValueError):
        AlgebraStructure(space, "associative", bad)
    a = AlgebraStructure(space, "associative", bad, validate=False)
    report = verify_identity(a)
    assert not report.ok and report.witness is not None


def test_invariance_builtins():
    assert verify_invariance(m2()).ok
    assert verify_invariance(gl2()).ok
    assert verify_invariance(sl2()).ok
    assert verify_invariance(kx2()).ok
    assert verify_invariance(vvstar()).ok
    trace = m2().form
    report = verify_invariance(m2_prelie(), trace)
    assert not report.ok and report.witness is not None


def test_gl2_two_parameter_invariant_cone():
    # alpha tr(xy) + beta tr(x) tr(y) is invariant for the bracket
    algebra = gl2()
    space = algebra.space
    trace_gram = algebra.form.matrix
    trtr = [[F(0)] * 4 for _ in range(4)]
    for i in (0, 3):
        for j in (0, 3):
            trtr[i][j] = F(1)
    for alpha, beta in ((1, 0), (1, 1), (2, -1), (0, 1), (3, 2)):
        gram = tuple(tuple(alpha * trace_gram[i][j] + beta * trtr[i][j] for j in range(4))
                     for i in range(4))
        ok = validate_form(space, gram)
        # invariance holds for every (alpha, beta); nondegeneracy iff alpha(alpha+2 beta) != 0
        expected_nondeg = alpha * (alpha + 2 * beta) != 0
        assert ok.symmetric and ok.degree_zero
        assert ok.nondegenerate == expected_nondeg
        if expected_nondeg:
            b = BilinearForm(space, gram)
            assert verify_invariance(algebra, b).ok


def test_invariant_form_space_dimensions():
    assert len(invariant_form_space(m2())) == 1
    assert len(invariant_form_space(gl2())) == 2
    assert len(invariant_form_space(m2_prelie())) == 0


def test_invariant_form_space_spans_trace_form():
    basis = invariant_form_space(m2())
    gram = basis[0]
    trace = m2().form.matrix
    # proportional to tr(xy)
    ratio = None
    for i in range(4):
        for j in range(4):
            if trace[i][j] != 0:
                r = gram[i][j] / trace[i][j]
                ratio = r if ratio is None else ratio
                assert r == ratio
            else:
                assert gram[i][j] == 0
    assert ratio != 0


def test_module_axioms_and_duals():
    for factory in (m2, gl2, m2_prelie, kx2):
        algebra = factory()
        assert verify_module_axioms(adjoint_module(algebra)).ok
        assert verify_module_axioms(dual_module(algebra)).ok


def test_prelie_dual_action_formula():
    # (x . f)(y) = -f(q(x, y)) on the matrix pre-Lie algebra
    algebra = m2_prelie()
    dual = dual_module(algebra)
    n = 4
    for i in range(n):
        for p in range(n):
            vec = dual.act_left(i, p)
            for z in range(n):
                assert vec[z] == -algebra.mul(i, z)[p]


def test_dual_of_zero_algebra_has_zero_actions():
    space = GradedSpace((0, 0), ("a", "b"))
    zero = AlgebraStructure(space, "associative", {})
    dual = dual_module(zero)
    assert not dual.left and not dual.right


def test_semidirect_products_pass_identity():
    m2a = m2()
    semi = semidirect_product(m2a, adjoint_module(m2a))
    assert semi.kind == "associative" and semi.space.dim == 8
    assert verify_identity(semi).ok
    vv = semidirect_product(m2_prelie(), dual_module(m2_prelie()))
    assert verify_identity(vv).ok
    lie = semidirect_product(gl2(), adjoint_module(gl2()))
    assert verify_identity(lie).ok


def test_semidirect_with_zero_module():
    algebra = m2()
    mspace = GradedSpace((0,), ("z",))
    zero_mod = Bimodule(algebra, mspace, {}, {}, name="zero")
    semi = semidirect_product(algebra, zero_mod)
    assert verify_identity(semi).ok
    for (i, j), vec in algebra.product.items():
        assert semi.mul(i, j)[:4] == vec


def test_double_products():
    for factory, kind in ((m2, "associative"), (gl2, "lie"), (kx2, "commutative")):
        algebra = factory()
        double = double_product(algebra, adjoint_module(algebra))
        assert double.kind == kind
        assert double.space.dim == 4 * algebra.space.dim
        assert verify_identity(double).ok
        assert verify_invariance(double).ok
        assert validate_form(double.space, double.form.matrix).ok


def test_double_rejects_prelie():
    with pytest.raises(ValueError):
        double_product(m2_prelie(), adjoint_module(m2_prelie()))


def test_lift_cochain_b_quadratic_and_linear():
    rng = random.Random(21)
    algebra = m2()
    module = adjoint_module(algebra)
    tilde = double_product(algebra, module)
    for k in (1, 2):
        c1 = _random_cochain_dict(rng, 4, k)
        c2 = _random_cochain_dict(rng, 4, k)
        l1 = lift_cochain(c1, k, algebra, module, tilde)
        l2 = lift_cochain(c2, k, algebra, module, tilde)
        assert is_b_quadratic(l1, tilde.form)
        # linearity in c
        summed = {}
        for key in set(c1) | set(c2):
            v1 = c1.get(key, (F(0),) * 4)
            v2 = c2.get(key, (F(0),) * 4)
            summed[key] = tuple(a + b for a, b in zip(v1, v2))
        l12 = lift_cochain(summed, k, algebra, module, tilde)
        assert l12 == l1 + l2
    # zero cochain lifts to the zero map
    assert lift_cochain({}, 2, algebra, module, tilde).is_zero()


def test_lift_restricts_to_shifted_cochain():
    rng = random.Random(22)
    algebra = m2()
    module = adjoint_module(algebra)
    tilde = double_product(algebra, module)
    c = _random_cochain_dict(rng, 4, 2)
    lifted = lift_cochain(c, 2, algebra, module, tilde)
    shifted = shift_map(algebra.space, 2, c)
    for key, vec in shifted.coeffs.items():
        val = lifted.value(key)
        assert tuple(val[4:8]) == vec
        assert all(x == 0 for x in val[:4]) and all(x == 0 for x in val[8:])


def test_lie_lift_is_totally_symmetric():
    rng = random.Random(23)
    algebra = gl2()
    module = adjoint_module(algebra)
    tilde = double_product(algebra, module)
    c = _random_skew_cochain_dict(rng, 4, 2)
    lifted = lift_cochain(c, 2, algebra, module, tilde)
    assert is_b_quadratic(lifted, tilde.form)
    assert is_symmetric_map(lifted)


def test_hyperbolic_form_shape():
    algebra = m2()
    w = semidirect_product(algebra, adjoint_module(algebra))
    dual = dual_module(w)
    total = semidirect_product(w, dual)
    form = hyperbolic_form(w.space, total.space)
    assert validate_form(total.space, form.matrix).ok


def _random_cochain_dict(rng, n, k):
    out = {}
    for key in iproduct(range(n), repeat=k):
        vec = [F(rng.randint(-2, 2)) for _ in range(n)]
        if any(v != 0 for v in vec):
            out[key] = tuple(vec)
    return out


def _random_skew_cochain_dict(rng, n, k):
    assert k == 2
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            vec = [F(rng.randint(-2, 2)) for _ in range(n)]
            if any(v != 0 for v in vec):
                out[(i, j)] = tuple(vec)
                out[(j, i)] = tuple(-v for v in vec)
    return out
