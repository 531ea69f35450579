"""Verify the derived convention at all arities.

Derived from the exact matching equations at arity 2+2:
  rotation step (move z to front over x_1..x_k):
      koszul * (-1)^(c2*sum|x_j| + c3*|z|)   with c2+c3 = 1
  bracket:
      {A,A'} = sum_i (-1)^(|e_i| + p(A)p(A')) cyc_sym( (i_last_{e_i}A) (x) (i_first_{e'_i}A') )
"""

import random
from fractions import Fraction as F

from pinczon.graded import GradedSpace, BilinearForm, koszul_sign, vec_add, vec_scale, validate_form
from pinczon.forms import MultiForm, rotation, zero_form, interior, interior_basis, dual_pairs, concat
from pinczon.coderiv import MultiMap, shift_map, bracket_tensor


class Conv4:
    def __init__(self, c2, c3):
        self.c2, self.c3 = c2, c3

    def rot_step(self, form):
        k1 = form.arity
        rot = rotation(k1)
        sdeg = form.space.shifted_degrees()
        deg = form.space.degrees
        out = {}
        for key, val in form.coeffs.items():
            t = tuple(key[rot[i]] for i in range(k1))
            ks = koszul_sign(rot, [sdeg[i] for i in t])
            e = self.c2 * sum(deg[i] for i in t[1:]) + self.c3 * deg[t[0]]
            out[t] = out.get(t, F(0)) + ks * (-1 if e % 2 else 1) * val
        return MultiForm(form.space, k1, out, form.degree)

    def cyc_sym(self, form):
        if form.arity == 0:
            return form
        out = form
        cur = form
        for _ in range(form.arity - 1):
            cur = self.rot_step(cur)
            out = out + cur
        return out

    def is_cyc(self, form):
        if form.arity <= 1:
            return True
        return self.rot_step(form) == form

    def interior_last_basis(self, i, form):
        coeffs = {}
        for key, value in form.coeffs.items():
            if key[-1] == i:
                coeffs[key[:-1]] = coeffs.get(key[:-1], F(0)) + value
        return MultiForm(form.space, form.arity - 1, coeffs,
                         form.degree - 1 - form.space.degrees[i])

    def bracket(self, a, bf, b):
        if a.arity == 0 or bf.arity == 0:
            return zero_form(a.space, max(a.arity + bf.arity - 2, 0), a.degree + bf.degree - 2)
        pp = a.parity * bf.parity
        out = zero_form(a.space, a.arity + bf.arity - 2, a.degree + bf.degree - 2)
        for i, e_dual in dual_pairs(b):
            left = self.interior_last_basis(i, a)
            if left.is_zero():
                continue
            right = interior(e_dual, bf)
            if right.is_zero():
                continue
            e = a.space.degrees[i] + pp
            sign = -1 if e % 2 else 1
            out = out + sign * self.cyc_sym(concat(left, right))
        return out

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
                    coeffs[t + (j,)] = coeffs.get(t + (j,), F(0)) + sign * val
        return MultiForm(space, q.arity + 1, coeffs, 2 * q.arity - q.degree)

    def map_of(self, form, b):
        space = form.space
        duals = dual_pairs(b)
        grouped = {}
        for key, val in form.coeffs.items():
            grouped.setdefault(key[:-1], {})[key[-1]] = val
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


def random_cyclic(conv, rng, space, arity):
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
        form = conv.cyc_sym(MultiForm(space, arity, coeffs))
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

for c2, c3 in ((1, 0), (0, 1)):
    conv = Conv4(c2, c3)
    om = conv.omega_of(QM2, bM2)
    ok_m2 = conv.is_cyc(om) and conv.map_of(om, bM2) == QM2 and conv.bracket(om, om, bM2).is_zero()
    bad = dict(M2prod)
    vec = [F(0)] * 4
    vec[0] = F(1)
    bad[(1, 1)] = tuple(vec)
    ok_m2 = ok_m2 and not conv.is_cyc(conv.omega_of(shift_map(M2, 2, bad), bM2))

    rng = random.Random(21)
    iso_fail = 0
    tried = 0
    for _ in range(60):
        space, b = random_quadratic_space(rng)
        a1, a2 = rng.randint(2, 4), rng.randint(2, 4)
        f1 = random_cyclic(conv, rng, space, a1)
        f2 = random_cyclic(conv, rng, space, a2)
        if f1 is None or f2 is None:
            continue
        Q1, Q2 = conv.map_of(f1, b), conv.map_of(f2, b)
        if conv.omega_of(Q1, b) != f1 or conv.omega_of(Q2, b) != f2:
            iso_fail += 1
            continue
        tried += 1
        lhs = conv.bracket(f1, f2, b)
        rhs = conv.omega_of(bracket_tensor(Q1, Q2), b)
        if lhs != rhs or not conv.is_cyc(lhs):
            iso_fail += 1

    rng = random.Random(22)
    lie_fail = 0
    for _ in range(25):
        space, b = random_quadratic_space(rng)
        fs = [random_cyclic(conv, rng, space, rng.randint(2, 3)) for _ in range(3)]
        if None in fs:
            continue
        f1, f2, f3 = fs
        s12 = -1 if (f1.parity and f2.parity) else 1
        if conv.bracket(f1, f2, b) != (-s12) * conv.bracket(f2, f1, b):
            lie_fail += 1
            continue
        jac = conv.bracket(f1, conv.bracket(f2, f3, b), b) \
            - conv.bracket(conv.bracket(f1, f2, b), f3, b) \
            - s12 * conv.bracket(f2, conv.bracket(f1, f3, b), b)
        if not jac.is_zero():
            lie_fail += 1

    print("(c2,c3)=(%d,%d)  M2: %s  iso fails: %d/%d  lie fails: %d" %
          (c2, c3, ok_m2, iso_fail, tried, lie_fail))
