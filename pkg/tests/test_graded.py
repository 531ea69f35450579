"""Sign machinery, spaces and bilinear forms."""

import random
from fractions import Fraction as F
from itertools import permutations, product

import pytest

from pinczon.graded import (
    BilinearForm,
    GradedSpace,
    NondegeneracyError,
    dual_basis,
    eta,
    koszul_sign,
    perm_sign,
    shifted_B,
    shifted_B_entry,
    standard_space,
    validate_form,
)
from helpers import random_quadratic_space


def test_eta_values():
    assert eta([]) == 1
    assert eta([5]) == 1          # single argument: weight k-j is 0
    assert eta([1, 1]) == -1      # (2-1)*1 = 1
    assert eta([0, 0, 0]) == 1    # all even
    assert eta([-1, -1]) == -1


def test_koszul_sign_basics():
    assert koszul_sign((0, 1), [3, 5]) == 1       # identity
    assert koszul_sign((1, 0), [1, 1]) == -1      # two odd letters cross
    assert koszul_sign((1, 0), [0, 1]) == 1       # an even letter crosses freely
    with pytest.raises(ValueError):
        koszul_sign((0, 1), [1])


def test_eta_cocycle_identity():
    # eta(sigma.degs) * eta(degs) == sign(sigma) * koszul(|x|) * koszul(deg x),
    # exhaustively for k <= 4 over degree values {-1, 0, 1, 2}
    for k in range(1, 5):
        degree_choices = [-1, 0, 1, 2]
        for degs in product(degree_choices, repeat=k):
            original = [d + 1 for d in degs]  # unshifted degrees
            for sigma in permutations(range(k)):
                permuted = [degs[sigma[j]] for j in range(k)]
                permuted_orig = [original[sigma[j]] for j in range(k)]
                lhs = eta(permuted) * eta(degs)
                # the Koszul factors are the rearrangement signs, i.e. the
                # inversion products over the permuted degree lists
                rhs = perm_sign(sigma) * koszul_sign(sigma, permuted_orig) \
                    * koszul_sign(sigma, permuted)
                assert lhs == rhs


def test_dual_basis_identity_and_swap():
    sp = standard_space(2)
    b = BilinearForm(sp, ((F(1), F(0)), (F(0), F(1))))
    assert dual_basis(b) == (sp.basis_vector(0), sp.basis_vector(1))
    b2 = BilinearForm(sp, ((F(0), F(1)), (F(1), F(0))))
    assert dual_basis(b2) == (sp.basis_vector(1), sp.basis_vector(0))


def test_dual_basis_trace_form_on_m2():
    from helpers import m2_space
    space, _, gram = m2_space()
    b = BilinearForm(space, gram)
    duals = dual_basis(b)
    # tr(e_qp e_pq) = 1: the dual of e_pq is e_qp
    names = {"e11": "e11", "e12": "e21", "e21": "e12", "e22": "e22"}
    for i, name in enumerate(space.names):
        expected = space.basis_vector(space.index_of(names[name]))
        assert duals[i] == expected


def test_dual_basis_involution_property():
    rng = random.Random(7)
    for _ in range(10):
        space, b = random_quadratic_space(rng)
        duals = dual_basis(b)
        inverse_gram = [[b.pair(duals[i], duals[j]) for j in range(space.dim)]
                        for i in range(space.dim)]
        # Gram of the dual basis is the inverse Gram matrix
        n = space.dim
        for i in range(n):
            for j in range(n):
                expected = F(1) if i == j else F(0)
                assert sum(b.matrix[i][m] * inverse_gram[m][j] for m in range(n)) == expected


def test_dual_pair_completeness():
    rng = random.Random(8)
    for _ in range(10):
        space, b = random_quadratic_space(rng)
        duals = dual_basis(b)
        n = space.dim
        for x in range(n):
            for y in range(n):
                xv, yv = space.basis_vector(x), space.basis_vector(y)
                # y expands as sum_i b(y, e_i) e'_i; pairing against B(x, e'_i)
                total = sum(b.pair(yv, space.basis_vector(i)) * shifted_B(b, xv, duals[i])
                            for i in range(n))
                assert total == shifted_B(b, xv, yv)


def test_validate_form_reports():
    sp = standard_space(2)
    assert validate_form(sp, ((F(1), F(0)), (F(0), F(1)))).ok
    zero = validate_form(sp, ((F(0), F(0)), (F(0), F(0))))
    assert not zero.nondegenerate
    # rank-1 form tr(x)tr(y)-style
    rank1 = validate_form(sp, ((F(1), F(1)), (F(1), F(1))))
    assert not rank1.nondegenerate and rank1.symmetric


def test_degenerate_form_rejected_with_kernel_vector():
    sp = standard_space(2)
    with pytest.raises(NondegeneracyError) as info:
        BilinearForm(sp, ((F(1), F(1)), (F(1), F(1))))
    kv = info.value.kernel_vector
    assert any(c != 0 for c in kv)
    assert all(sum(F(1) * c for c in kv) == 0 for _ in [0])


def test_shifted_B_signs():
    sp = standard_space(2)
    b = BilinearForm(sp, ((F(1), F(0)), (F(0), F(1))))
    e1 = sp.basis_vector(0)
    assert shifted_B(b, e1, e1) == -1          # deg e1 = -1
    assert shifted_B_entry(b, 0, 1) == 0
    odd = GradedSpace((1, -1), ("a", "b"))
    bo = BilinearForm(odd, ((F(0), F(1)), (F(1), F(0))))
    # |x| odd means deg even: B = b
    assert shifted_B(bo, odd.basis_vector(0), odd.basis_vector(1)) == 1


def test_vector_degree_and_homogeneity():
    sp = GradedSpace((0, 1), ("a", "b"))
    assert sp.vector_degree((F(1), F(0))) == 0
    assert sp.vector_degree((F(0), F(0))) is None
    with pytest.raises(ValueError):
        sp.vector_degree((F(1), F(1)))
