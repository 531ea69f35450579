"""The five coboundary operators, dimensions, solving, deformations."""

import random
from fractions import Fraction as F
from itertools import combinations, product as iproduct

import pytest

from pinczon.graded import BilinearForm
from pinczon.forms import BiSymForm, MultiForm, cyclic_form_basis, is_vsp
from pinczon.coderiv import omega_of, shift_map
from pinczon.structures import adjoint_module, double_product, dual_module
from pinczon.builtins import c_a_cocycle, gl2, kx2, m2, m2_prelie
from pinczon.cohomology import (
    Cochain,
    CohomologyReport,
    DualNumber,
    cochain_basis,
    cohomology_dims,
    coboundary,
    d_chevalley,
    d_chevalley_classical,
    d_harrison,
    d_hochschild,
    d_hochschild_classical,
    d_pinczon,
    d_prelie,
    d_prelie_coderivation,
    deformation_check,
    is_vsp_cochain,
    pinczon_dims,
    solve_coboundary,
)


def rand_cochain(rng, theory, k, algebra, module):
    n, m = algebra.space.dim, module.space.dim
    if theory in ("hochschild", "harrison"):
        keys = list(iproduct(range(n), repeat=k))
    elif theory == "chevalley":
        keys = list(combinations(range(n), k))
    else:
        keys = [kk + (y,) for kk in combinations(range(n), k - 1) for y in range(n)]
    data = {}
    for key in keys:
        vec = [F(rng.randint(-2, 2)) for _ in range(m)]
        if any(v != 0 for v in vec):
            data[key] = tuple(vec)
    return Cochain(theory, k, algebra, module, data)


# --- Hochschild ---

def test_hochschild_zero_cochain_formula():
    algebra = m2()
    module = adjoint_module(algebra)
    mvec = algebra.space.basis_vector(1)  # m = e12
    c = Cochain("hochschild", 0, algebra, module, {(): mvec})
    d = d_hochschild(c)
    for i in range(4):
        x = algebra.space.basis_vector(i)
        expected = tuple(a - b for a, b in zip(algebra.mul_vec(x, mvec),
                                               algebra.mul_vec(mvec, x)))
        assert d.value((i,)) == (expected if any(expected) else module.space.zero_vector())


def test_hochschild_two_definitions_agree():
    rng = random.Random(31)
    algebra = m2()
    module = adjoint_module(algebra)
    for k in (1, 2):
        for _ in range(3):
            c = rand_cochain(rng, "hochschild", k, algebra, module)
            assert d_hochschild(c) == d_hochschild_classical(c)


def test_hochschild_d_squared_zero():
    rng = random.Random(32)
    algebra = m2()
    module = adjoint_module(algebra)
    for k in (0, 1):
        c = rand_cochain(rng, "hochschild", k, algebra, module)
        assert d_hochschild(d_hochschild(c)).is_zero()


def test_hochschild_trace_projection_formula():
    # f(x) = (1/2) tr(x) id on M2:
    # d_H f(x, y) = (1/2)(tr(y) x - tr(xy) id + tr(x) y)
    algebra = m2()
    module = adjoint_module(algebra)
    idv = (F(1), F(0), F(0), F(1))
    data = {}
    for i in (0, 3):
        data[(i,)] = tuple(F(1, 2) * c for c in idv)
    f = Cochain("hochschild", 1, algebra, module, data)
    df = d_hochschild(f)
    trace = {0: F(1), 3: F(1)}
    tr_gram = m2().form.matrix
    for i in range(4):
        for j in range(4):
            xi = algebra.space.basis_vector(i)
            yj = algebra.space.basis_vector(j)
            expected = [F(0)] * 4
            ty = trace.get(j, F(0))
            tx = trace.get(i, F(0))
            txy = tr_gram[i][j]
            for p in range(4):
                expected[p] = F(1, 2) * (ty * xi[p] - txy * idv[p] + tx * yj[p])
            assert df.value((i, j)) == tuple(expected)


def test_hochschild_dims_m2():
    algebra = m2()
    report = cohomology_dims("hochschild", algebra, adjoint_module(algebra), range(0, 3))
    assert report.d_squared_ok
    assert report.h(0) == 1 and report.h(1) == 0 and report.h(2) == 0


def test_cochain_basis_dimensions():
    algebra = m2()
    module = adjoint_module(algebra)
    assert len(cochain_basis("hochschild", 1, algebra, module)) == 16
    assert len(cochain_basis("hochschild", 2, algebra, module)) == 64
    lie = gl2()
    assert len(cochain_basis("chevalley", 2, lie, adjoint_module(lie))) == 24
    pre = m2_prelie()
    assert len(cochain_basis("prelie", 2, pre, adjoint_module(pre))) == 64


# --- Harrison ---

def test_harrison_basis_and_preservation():
    algebra = kx2()
    module = adjoint_module(algebra)
    rng = random.Random(33)
    basis = cochain_basis("harrison", 2, algebra, module)
    assert basis
    for b in basis:
        assert is_vsp_cochain(b)
    # a random combination stays shuffle-vanishing under d
    coeffs = [F(rng.randint(-2, 2)) for _ in basis]
    data = {}
    from pinczon.graded import vec_add, vec_scale
    for coeff, b in zip(coeffs, basis):
        for key, vec in b.data.items():
            cur = data.get(key, module.space.zero_vector())
            data[key] = vec_add(cur, vec_scale(coeff, vec))
    c = Cochain("harrison", 2, algebra, module,
                {k: v for k, v in data.items() if any(x != 0 for x in v)})
    if not c.is_zero():
        out = d_harrison(c)
        assert is_vsp_cochain(out)


def test_harrison_one_cochain_equals_hochschild():
    algebra = kx2()
    module = adjoint_module(algebra)
    rng = random.Random(34)
    c = rand_cochain(rng, "harrison", 1, algebra, module)
    assert d_harrison(c).data == d_hochschild(c).data


def test_harrison_d_squared_zero():
    algebra = kx2()
    module = adjoint_module(algebra)
    rng = random.Random(35)
    c = rand_cochain(rng, "harrison", 1, algebra, module)
    assert d_harrison(d_harrison(c)).is_zero()


def test_harrison_rejects_non_vsp():
    algebra = kx2()
    module = adjoint_module(algebra)
    # the shifted companion of a symmetric-storage 2-cochain vanishes on
    # shuffles iff c is symmetric; take an antisymmetric one
    data = {(0, 1): module.space.basis_vector(0),
            (1, 0): tuple(-x for x in module.space.basis_vector(0))}
    c = Cochain("harrison", 2, algebra, module, data)
    if not is_vsp_cochain(c):
        with pytest.raises(ValueError):
            d_harrison(c)


# --- Chevalley ---

def test_chevalley_zero_cochain():
    algebra = gl2()
    module = adjoint_module(algebra)
    mvec = algebra.space.basis_vector(1)
    c = Cochain("chevalley", 0, algebra, module, {(): mvec})
    d = d_chevalley(c)
    for i in range(4):
        expected = module.act_left_vec(algebra.space.basis_vector(i), mvec)
        assert d.value((i,)) == expected


def test_chevalley_two_definitions_agree():
    rng = random.Random(36)
    algebra = gl2()
    module = adjoint_module(algebra)
    for k in (1, 2):
        for _ in range(2):
            c = rand_cochain(rng, "chevalley", k, algebra, module)
            assert d_chevalley(c) == d_chevalley_classical(c)


def test_chevalley_d_squared_zero():
    rng = random.Random(37)
    algebra = gl2()
    module = adjoint_module(algebra)
    c = rand_cochain(rng, "chevalley", 1, algebra, module)
    assert d_chevalley(d_chevalley(c)).is_zero()


def test_chevalley_trace_projection_is_nontrivial_cocycle():
    algebra = gl2()
    module = adjoint_module(algebra)
    idv = (F(1), F(0), F(0), F(1))
    data = {}
    for i in (0, 3):
        data[(i,)] = tuple(F(1, 2) * c for c in idv)
    f = Cochain("chevalley", 1, algebra, module, data)
    assert d_chevalley(f).is_zero()
    solution = solve_coboundary("chevalley", f)
    assert solution.status == "certificate"


def test_chevalley_dims_gl2():
    algebra = gl2()
    report = cohomology_dims("chevalley", algebra, adjoint_module(algebra), range(0, 3))
    assert report.d_squared_ok
    assert report.h(0) == 1 and report.h(1) == 1 and report.h(2) == 0


# --- pre-Lie ---

def test_prelie_two_definitions_agree():
    rng = random.Random(38)
    algebra = m2_prelie()
    module = adjoint_module(algebra)
    for k in (1, 2):
        for _ in range(2):
            c = rand_cochain(rng, "prelie", k, algebra, module)
            assert d_prelie(c) == d_prelie_coderivation(c)


def test_prelie_d_squared_zero():
    rng = random.Random(39)
    algebra = m2_prelie()
    module = adjoint_module(algebra)
    c = rand_cochain(rng, "prelie", 1, algebra, module)
    assert d_prelie(d_prelie(c)).is_zero()


def test_prelie_c_a_is_cocycle_not_coboundary():
    algebra = m2_prelie()
    module = adjoint_module(algebra)
    data = c_a_cocycle("e12")
    c = Cochain("prelie", 2, algebra, module, data)
    assert d_prelie(c).is_zero()
    solution = solve_coboundary("prelie", c)
    assert solution.status == "certificate"
    # the certificate pairs to 1 with c and annihilates every coboundary
    assert solution.certificate is not None


def test_c_a_is_not_a_hochschild_cocycle():
    # in the associative theory d_H c_a != 0: the solver rejects it
    algebra = m2()
    module = adjoint_module(algebra)
    data = c_a_cocycle("e12")
    c = Cochain("hochschild", 2, algebra, module, data)
    solution = solve_coboundary("hochschild", c)
    assert solution.status == "not_cocycle"
    # witness value: d_H c_a(e12, e21, z) = -[z, a] for some z
    d = d_hochschild(c)
    a_vec = algebra.space.basis_vector(1)
    hit = False
    for z in range(4):
        zvec = algebra.space.basis_vector(z)
        commutator = tuple(p - q for p, q in zip(algebra.mul_vec(zvec, a_vec),
                                                 algebra.mul_vec(a_vec, zvec)))
        if d.value((1, 2, z)) == tuple(-x for x in commutator) and any(commutator):
            hit = True
    assert hit


# --- Pinczon differential on forms ---

def test_d_pinczon_squares_to_zero_and_kills_structure_form():
    algebra = m2()
    b = algebra.form
    omega = omega_of(algebra.shifted_map(), b)
    assert d_pinczon(omega, omega, b).is_zero()
    rng = random.Random(40)
    from helpers import random_cyclic_form
    for _ in range(5):
        lam = random_cyclic_form(rng, algebra.space, rng.randint(2, 3))
        if lam is None:
            continue
        once = d_pinczon(lam, omega, b)
        assert d_pinczon(once, omega, b).is_zero()


def test_d_pinczon_rejects_non_structure():
    algebra = m2()
    b = algebra.form
    bad = MultiForm(algebra.space, 3, {})
    lam = omega_of(algebra.shifted_map(), b)
    # a non-structure form: a random cyclic 3-form with {F,F} != 0
    rng = random.Random(41)
    from helpers import random_cyclic_form
    from pinczon.forms import pinczon_bracket
    for _ in range(30):
        f = random_cyclic_form(rng, algebra.space, 3)
        if f is not None and not pinczon_bracket(f, f, b).is_zero():
            with pytest.raises(ValueError):
                d_pinczon(lam, f, b)
            return
    pytest.skip("no witness found")


def test_pinczon_dims_run_on_builtins():
    report = pinczon_dims(kx2(), range(1, 3))
    assert report.d_squared_ok
    report2 = pinczon_dims(m2(), range(1, 3))
    assert report2.d_squared_ok


# --- solving and deformations ---

def test_solve_coboundary_roundtrip():
    rng = random.Random(42)
    algebra = m2()
    module = adjoint_module(algebra)
    x = rand_cochain(rng, "hochschild", 1, algebra, module)
    image = d_hochschild(x)
    solution = solve_coboundary("hochschild", image)
    assert solution.status == "primitive"
    assert d_hochschild(solution.primitive) == image


def test_dual_numbers():
    t = DualNumber(0, 1)
    assert t * t == DualNumber(0)
    assert (DualNumber(2, 3) * DualNumber(5, 7)) == DualNumber(10, 29)
    assert DualNumber(1, 2) - DualNumber(1, 2) == DualNumber(0)


def test_deformation_c_a_true_at_order_one():
    algebra = m2_prelie()
    module = adjoint_module(algebra)
    c = Cochain("prelie", 2, algebra, module, c_a_cocycle("e12"))
    verdict = deformation_check(algebra, c)
    assert verdict.verdict == "true deformation at order 1"


def test_deformation_coboundary_is_trivial():
    rng = random.Random(43)
    algebra = m2()
    module = adjoint_module(algebra)
    x = rand_cochain(rng, "hochschild", 1, algebra, module)
    c = d_hochschild(x)
    verdict = deformation_check(algebra, c)
    assert verdict.verdict == "trivial deformation"


def test_deformation_non_cocycle_rejected():
    algebra = m2()
    module = adjoint_module(algebra)
    data = {(0, 0): algebra.space.basis_vector(1)}
    c = Cochain("hochschild", 2, algebra, module, data)
    verdict = deformation_check(algebra, c)
    assert verdict.verdict == "not order-1 structure"
    assert verdict.witness is not None


def test_m2_rigidity_every_cocycle_is_coboundary():
    algebra = m2()
    module = adjoint_module(algebra)
    from pinczon.cohomology import coboundary_matrix, _basis_indexing
    import pinczon.linalg as linalg
    basis2 = cochain_basis("hochschild", 2, algebra, module)
    matrix2 = coboundary_matrix("hochschild", 2, algebra, module, basis2)
    kernel = linalg.kernel_basis(matrix2)
    rng = random.Random(44)
    # random elements of Z^2 are all coboundaries
    from pinczon.graded import vec_add, vec_scale
    for _ in range(3):
        data = {}
        for vec in kernel:
            coeff = F(rng.randint(-1, 1))
            if coeff == 0:
                continue
            for pos, val in enumerate(vec):
                if val == 0:
                    continue
                key, comp = _index_to_key(pos, algebra, module, 2)
                cur = list(data.get(key, module.space.zero_vector()))
                cur[comp] += coeff * val
                data[key] = tuple(cur)
        data = {k: v for k, v in data.items() if any(x != 0 for x in v)}
        if not data:
            continue
        c = Cochain("hochschild", 2, algebra, module, data)
        assert d_hochschild(c).is_zero()
        assert solve_coboundary("hochschild", c).status == "primitive"


def _index_to_key(pos, algebra, module, k):
    n, m = algebra.space.dim, module.space.dim
    keys = list(iproduct(range(n), repeat=k))
    return keys[pos // m], pos % m
