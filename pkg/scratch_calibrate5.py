"""Tensor-side calculus: coefficients are components against dual-basis words,
evaluation carries the standard graded sign chi(t) = (-1)^(sum_{i<j} d_i d_j).

Machinery on coefficients: act_perm/cyclic_sym with plain Koszul transport,
plain concatenation, plain first/last-slot contraction.  The dictionary
omega_of/map_of includes chi.  Bracket candidate (necklace-adjacent slots):

  {F,G} = sum_i s_i * cyc_sym( (last-slot contract e_i)F (x) (first-slot contract e'_i)G )

with s_i = (-1)^(s1*d_i + s2*pF*d_i + s3*pG*d_i + s4 + s5*pF + s6*pG + s7*pF*pG).
"""

import itertools
import random
from fractions import Fraction as F

from pinczon.graded import GradedSpace, BilinearForm, vec_add, vec_scale, validate_form
from pinczon.forms import (MultiForm, zero_form, interior, interior_basis, dual_pairs,
                           concat, cyclic_sym, is_cyclic)
from pinczon.coderiv import MultiMap, shift_map, bracket_tensor


def chi(space, key):
    sdeg = space.shifted_degrees()
    e = 0
    for i in range(len(key)):
        if sdeg[key[i]] % 2 == 0:
            continue
        for j in range(i + 1, len(key)):
            if sdeg[key[j]] % 2:
                e += 1
    return -1 if e % 2 else 1


def interior_last_basis(i, form):
    coeffs = {}
    for key, value in form.coeffs.items():
        if key[-1] == i:
            coeffs[key[:-1]] = coeffs.get(key[:-1], F(0)) + value
    return MultiForm(form.space, form.arity - 1, coeffs, form.degree - 1 - form.space.degrees[i])


def interior_last(x, form):
    coeffs = {}
    dx = form.space.vector_degree(x)
    for key, value in form.coeffs.items():
        c = x[key[-1]]
        if c == 0:
            continue
        coeffs[key[:-1]] = coeffs.get(key[:-1], F(0)) + c * value
    return MultiForm(form.space, form.arity - 1, coeffs, form.degree - 1 - (dx or 0))


class Conv5:
    def __init__(self, s1, s2, s3, s4, s5, s6, s7):
        self.s = (s1, s2, s3, s4, s5, s6, s7)

    def omega_of(self, q, b):
        space = q.space
        sdeg = space.shifted_degrees()
        coeffs = {}
        for t, vec in q.coeffs.items():
            deg_v = q.degree + sum(sdeg[i] for i in t)
            sign = -1 if deg_v % 2 else 1
            for j in range(space.dim):
                val = F(0)
                for m, c in enumerate(vec):
                    if c != 0 and b.matrix[m][j] != 0:
                        val += c * b.matrix[m][j]
                if val != 0:
                    key = t + (j,)
                    coeffs[key] = coeffs.get(key, F(0)) + sign * chi(space, key) * val
        return MultiForm(space, q.arity + 1, coeffs, 2 * q.arity - q.degree)

    def map_of(self, form, b):
        space = form.space
        duals = dual_pairs(b)
        grouped = {}
        for key, val in form.coeffs.items():
            grouped.setdefault(key[:-1], {})[key[-1]] = val * chi(space, key)
        coeffs = {}
        for t, last in grouped.items():
            w = space.zero_vector()
            for j, val in last.items():
                w = vec_add(w, vec_scale(val, duals[j][1]))
            dw = space.vector_degree(w)
            if dw is None:
                continue
            coeffs[t] = vec_scale(-1 if (dw - 1) % 2 else 1, w)
        return MultiMap(space, form.arity - 1, coeffs, 2 * (form.arity - 1) - form.degree)

    def bracket(self, a, bf, b):
        s1, s2, s3, s4, s5, s6, s7 = self.s
        if a.arity == 0 or bf.arity == 0:
            return zero_form(a.space, max(a.arity + bf.arity - 2, 0), a.degree + bf.degree - 2)
        pF, pG = a.parity, bf.parity
        out = zero_form(a.space, a.arity + bf.arity - 2, a.degree + bf.degree - 2)
        for i, e_dual in dual_pairs(b):
            left = interior_last_basis(i, a)
            if left.is_zero():
                continue
            right = interior(e_dual, bf)
            if right.is_zero():
                continue
            di = a.space.deg(i) % 2
            e = s1 * di + s2 * pF * di + s3 * pG * di + s4 + s5 * pF + s6 * pG + s7 * pF * pG
            out = out + (-1 if e % 2 else 1) * cyclic_sym(concat(left, right))
        return out


DEGREE_MENU = [(0, 0), (1, -1), (0, 1, -1), (0, 0, 0), (2, -2, 0)]

def random_quadratic_space(rng):
    degrees = rng.choice(DEGREE_MENU)
    space = GradedSpace(tuple(degrees), tuple("e%d" % (i + 1) for i in range(len(degrees))))
    n = space.dim
    while True:
        gram = [[F(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                if space.degrees[i] + space.degrees[j] != 0:
                    continue
                v = F(rng.randint(-3, 3))
                gram[i][j] = v
                gram[j][i] = v
        if validate_form(space, gram).ok:
            return space, BilinearForm(space, tuple(tuple(r) for r in gram))


def random_cyclic(rng, space, arity):
    from itertools import product as iproduct
    keys = list(iproduct(range(space.dim), repeat=arity))
    for _ in range(300):
        seed_key = rng.choice(keys)
        total = sum(space.degrees[i] for i in seed_key)
        coeffs = {}
        for kk in keys:
            if sum(space.degrees[i] for i in kk) == total and rng.random() < 0.5:
                c = rng.randint(-3, 3)
                if c:
                    coeffs[kk] = F(c)
        if not coeffs:
            continue
        form = cyclic_sym(MultiForm(space, arity, coeffs))
        if not form.is_zero():
            return form
    return None


def build_m2():
    names = ("e11", "e12", "e21", "e22")
    idx = {(a, b): 2 * (a - 1) + (b - 1) for a in (1, 2) for b in (1, 2)}
    M2 = GradedSpace((0, 0, 0, 0), names)
    prod = {}
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c:
                vec = [F(0)] * 4
                vec[idx[(a, d)]] = F(1)
                prod[(i, j)] = tuple(vec)
    gram = [[F(0)] * 4 for _ in range(4)]
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            gram[i][j] = F(1) if (b == c and d == a) else F(0)
    return M2, prod, BilinearForm(M2, tuple(tuple(r) for r in gram))


M2, M2prod, bM2 = build_m2()
QM2 = shift_map(M2, 2, M2prod)


def anchor_m2(conv):
    om = conv.omega_of(QM2, bM2)
    if not is_cyclic(om):
        return False
    if conv.map_of(om, bM2) != QM2:
        return False
    bad = dict(M2prod)
    vec = [F(0)] * 4
    vec[0] = F(1)
    bad[(1, 1)] = tuple(vec)
    if is_cyclic(conv.omega_of(shift_map(M2, 2, bad), bM2)):
        return False
    return conv.bracket(om, om, bM2).is_zero()


def anchor_iso(conv, rng, trials):
    good = 0
    for _ in range(trials):
        space, b = random_quadratic_space(rng)
        a1, a2 = rng.randint(2, 4), rng.randint(2, 4)
        f1 = random_cyclic(rng, space, a1)
        f2 = random_cyclic(rng, space, a2)
        if f1 is None or f2 is None:
            continue
        Q1, Q2 = conv.map_of(f1, b), conv.map_of(f2, b)
        if conv.omega_of(Q1, b) != f1 or conv.omega_of(Q2, b) != f2:
            return False
        lhs = conv.bracket(f1, f2, b)
        rhs = conv.omega_of(bracket_tensor(Q1, Q2), b)
        if lhs != rhs or not is_cyclic(lhs):
            return False
        good += 1
    return good > 0


def anchor_lie(conv, rng, trials):
    for _ in range(trials):
        space, b = random_quadratic_space(rng)
        fs = [random_cyclic(rng, space, rng.randint(2, 3)) for _ in range(3)]
        if None in fs:
            continue
        f1, f2, f3 = fs
        s12 = -1 if (f1.parity and f2.parity) else 1
        if conv.bracket(f1, f2, b) != (-s12) * conv.bracket(f2, f1, b):
            return False
        jac = conv.bracket(f1, conv.bracket(f2, f3, b), b) \
            - conv.bracket(conv.bracket(f1, f2, b), f3, b) \
            - s12 * conv.bracket(f2, conv.bracket(f1, f3, b), b)
        if not jac.is_zero():
            return False
    return True


survivors = []
for s in itertools.product((0, 1), repeat=7):
    conv = Conv5(*s)
    if not anchor_m2(conv):
        continue
    if not anchor_iso(conv, random.Random(21), 8):
        continue
    if not anchor_lie(conv, random.Random(22), 4):
        continue
    survivors.append(s)
    print("SURVIVOR (s1..s7) =", s)

print("total:", len(survivors))
for s in survivors:
    conv = Conv5(*s)
    print(s, "extended:", anchor_iso(conv, random.Random(77), 30), anchor_lie(conv, random.Random(78), 12))
