"""Third calibration pass: include the graded tensor-evaluation sign.

Knobs:
  alpha,beta : B(x,y) = (-1)^(alpha*deg x + beta*|x|) b(x,y)
  c1,c2,c3   : rotation step sign koszul * (-1)^(c1*k + c2*sum|crossed| + c3*|z|)
  tg         : concat (A(x)B)(x,y) = (-1)^(tg * parity(B) * sum deg(first block)) A(x)B(y)
  d1, g      : bracket term sign (-1)^(d1*|e_i| + g)
"""

import itertools
import random
from fractions import Fraction as F

from pinczon.graded import GradedSpace, BilinearForm, koszul_sign, vec_add, vec_scale, validate_form
from pinczon.forms import MultiForm, rotation, zero_form, interior, interior_basis, dual_pairs
from pinczon.coderiv import MultiMap, shift_map, bracket_tensor


class Conv3:
    def __init__(self, alpha, beta, c1, c2, c3, tg, d1, g):
        self.alpha, self.beta = alpha, beta
        self.c1, self.c2, self.c3 = c1, c2, c3
        self.tg, self.d1, self.g = tg, d1, g

    # ---- pairing ----
    def B_sign(self, deg_v):
        e = self.alpha * deg_v + self.beta * (deg_v + 1)
        return -1 if e % 2 else 1

    # ---- rotation ----
    def rot_step(self, form):
        k1 = form.arity
        rot = rotation(k1)
        sdeg = form.space.shifted_degrees()
        deg = form.space.degrees
        out = {}
        for key, val in form.coeffs.items():
            t = tuple(key[rot[i]] for i in range(k1))
            ks = koszul_sign(rot, [sdeg[i] for i in t])
            e = self.c1 * (k1 - 1) + self.c2 * sum(deg[i] for i in t[1:]) + self.c3 * deg[t[0]]
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

    # ---- twisted concat ----
    def concat(self, a, b):
        sdeg = a.space.shifted_degrees()
        pb = b.parity
        coeffs = {}
        for ka, va in a.coeffs.items():
            block = sum(sdeg[i] for i in ka) if (self.tg and pb) else 0
            s = -1 if block % 2 else 1
            for kb, vb in b.coeffs.items():
                coeffs[ka + kb] = coeffs.get(ka + kb, F(0)) + s * va * vb
        return MultiForm(a.space, a.arity + b.arity, coeffs, a.degree + b.degree)

    def bracket(self, a, bf, b):
        if a.arity == 0 or bf.arity == 0:
            return zero_form(a.space, max(a.arity + bf.arity - 2, 0), a.degree + bf.degree - 2)
        out = zero_form(a.space, a.arity + bf.arity - 2, a.degree + bf.degree - 2)
        for i, e_dual in dual_pairs(b):
            left = interior_basis(i, a)
            if left.is_zero():
                continue
            right = interior(e_dual, bf)
            if right.is_zero():
                continue
            e = self.d1 * a.space.degrees[i] + self.g
            sign = -1 if e % 2 else 1
            out = out + sign * self.cyc_sym(self.concat(left, right))
        return out

    # ---- dictionary ----
    def omega_of(self, q, b):
        space = q.space
        sdeg = space.shifted_degrees()
        coeffs = {}
        for t, vec in q.coeffs.items():
            deg_v = q.degree + sum(sdeg[i] for i in t)
            sign = self.B_sign(deg_v)
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
            coeffs[t] = vec_scale(self.B_sign(dw - 1), w)
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


def anchor_m2(conv):
    om = conv.omega_of(QM2, bM2)
    if not conv.is_cyc(om):
        return False
    if conv.map_of(om, bM2) != QM2:
        return False
    bad = dict(M2prod)
    vec = [F(0)] * 4
    vec[0] = F(1)
    bad[(1, 1)] = tuple(vec)
    if conv.is_cyc(conv.omega_of(shift_map(M2, 2, bad), bM2)):
        return False
    return conv.bracket(om, om, bM2).is_zero()


def anchor_iso(conv, rng, trials):
    checked = 0
    for _ in range(trials):
        space, b = random_quadratic_space(rng)
        a1, a2 = rng.randint(2, 4), rng.randint(2, 4)
        f1 = random_cyclic(conv, rng, space, a1)
        f2 = random_cyclic(conv, rng, space, a2)
        if f1 is None or f2 is None:
            continue
        Q1, Q2 = conv.map_of(f1, b), conv.map_of(f2, b)
        if conv.omega_of(Q1, b) != f1 or conv.omega_of(Q2, b) != f2:
            return False
        lhs = conv.bracket(f1, f2, b)
        rhs = conv.omega_of(bracket_tensor(Q1, Q2), b)
        if lhs != rhs or not conv.is_cyc(lhs):
            return False
        checked += 1
    return checked > 0


def anchor_lie(conv, rng, trials):
    for _ in range(trials):
        space, b = random_quadratic_space(rng)
        fs = [random_cyclic(conv, rng, space, rng.randint(2, 3)) for _ in range(3)]
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
for knobs in itertools.product((0, 1), repeat=8):
    conv = Conv3(*knobs)
    if not anchor_m2(conv):
        continue
    if not anchor_iso(conv, random.Random(21), 8):
        continue
    if not anchor_lie(conv, random.Random(22), 4):
        continue
    survivors.append(knobs)
    print("SURVIVOR (alpha,beta,c1,c2,c3,tg,d1,g) =", knobs)

print("total:", len(survivors))
for s in survivors:
    conv = Conv3(*s)
    print(s, "extended:", anchor_iso(conv, random.Random(77), 30), anchor_lie(conv, random.Random(78), 12))
