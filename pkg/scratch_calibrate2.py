"""Second calibration pass.

Cyclicity is locked to: one rotation step (last argument z moved to front,
crossing x_1..x_k) carries sign  koszul * (-1)^(|x_1|+...+|x_k|)  with |.|
the unshifted degrees.  B is the spec convention (-1)^deg(x) b(x,y).

Search space: bracket term shape
    sum_i (+-) (contract Omega with u_i) (.) (contract Omega' with v_i)
with (u_i, v_i) in {(e_i, e'_i), (e'_i, e_i)}, contraction slot in
{first, last}, and per-term sign (-1)^(d1|e_i| + d2 pp' + d3 |e_i|p +
d4 |e_i|p' + d5 p + d6 p' + g), p = parity(Omega), p' = parity(Omega').
"""

import itertools
import random
from fractions import Fraction as F

from pinczon.graded import GradedSpace, BilinearForm, koszul_sign, vec_add, vec_scale, validate_form
from pinczon.forms import MultiForm, rotation, zero_form, interior, interior_basis, dual_pairs, concat
from pinczon.coderiv import MultiMap, shift_map, bracket_tensor


def rot_step(form):
    """Locked rotation: new[t] = koszul(t) * (-1)^(sum |t[1:]|) * old[preimage]."""
    k1 = form.arity
    rot = rotation(k1)
    sdeg = form.space.shifted_degrees()
    deg = form.space.degrees
    out = {}
    for key, val in form.coeffs.items():
        t = tuple(key[rot[i]] for i in range(k1))
        ks = koszul_sign(rot, [sdeg[i] for i in t])
        e = sum(deg[i] for i in t[1:])
        s = ks * (-1 if e % 2 else 1)
        out[t] = out.get(t, F(0)) + s * val
    return MultiForm(form.space, k1, out, form.degree)


def cyc_sym(form):
    if form.arity == 0:
        return form
    out = form
    cur = form
    for _ in range(form.arity - 1):
        cur = rot_step(cur)
        out = out + cur
    return out


def is_cyc(form):
    if form.arity <= 1:
        return True
    return rot_step(form) == form


def interior_last(x, form):
    """Contraction in the last slot."""
    coeffs = {}
    dx = form.space.vector_degree(x)
    for key, value in form.coeffs.items():
        c = x[key[-1]]
        if c == 0:
            continue
        rest = key[:-1]
        coeffs[rest] = coeffs.get(rest, F(0)) + c * value
    return MultiForm(form.space, form.arity - 1, coeffs, form.degree - 1 - (dx or 0))


def interior_last_basis(i, form):
    coeffs = {}
    for key, value in form.coeffs.items():
        if key[-1] == i:
            coeffs[key[:-1]] = coeffs.get(key[:-1], F(0)) + value
    return MultiForm(form.space, form.arity - 1, coeffs, form.degree - 1 - form.space.degrees[i])


class Conv2:
    def __init__(self, swap, slot, d1, d2, d3, d4, d5, d6, g):
        self.swap, self.slot = swap, slot
        self.d = (d1, d2, d3, d4, d5, d6, g)

    def bracket(self, a, bf, b):
        if a.arity == 0 or bf.arity == 0:
            return zero_form(a.space, max(a.arity + bf.arity - 2, 0), a.degree + bf.degree - 2)
        d1, d2, d3, d4, d5, d6, g = self.d
        p, pp = a.parity, bf.parity
        out = zero_form(a.space, a.arity + bf.arity - 2, a.degree + bf.degree - 2)
        for i, e_dual in dual_pairs(b):
            ei_deg = a.space.degrees[i]
            if self.slot == "first":
                if not self.swap:
                    left = interior_basis(i, a)
                    right = interior(e_dual, bf)
                else:
                    left = interior(e_dual, a)
                    right = interior_basis(i, bf)
            else:
                if not self.swap:
                    left = interior_last_basis(i, a)
                    right = interior_last(e_dual, bf)
                else:
                    left = interior_last(e_dual, a)
                    right = interior_last_basis(i, bf)
            if left.is_zero() or right.is_zero():
                continue
            e = d1 * ei_deg + d2 * p * pp + d3 * ei_deg * p + d4 * ei_deg * pp + d5 * p + d6 * pp + g
            sign = -1 if e % 2 else 1
            out = out + sign * cyc_sym(concat(left, right))
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
    names = tuple("e%d" % (i + 1) for i in range(len(degrees)))
    space = GradedSpace(tuple(degrees), names)
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
    from itertools import product
    keys = list(product(range(space.dim), repeat=arity))
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
        form = cyc_sym(MultiForm(space, arity, coeffs))
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
    if not is_cyc(om):
        return False
    if conv.map_of(om, bM2) != QM2:
        return False
    bad = dict(M2prod)
    vec = [F(0)] * 4
    vec[0] = F(1)
    bad[(1, 1)] = tuple(vec)
    if is_cyc(conv.omega_of(shift_map(M2, 2, bad), bM2)):
        return False
    return conv.bracket(om, om, bM2).is_zero()


def anchor_iso(conv, rng, trials):
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
        if lhs != rhs or not is_cyc(lhs):
            return False
    return True


def anchor_lie(conv, rng, trials):
    for _ in range(trials):
        space, b = random_quadratic_space(rng)
        fs = [random_cyclic(rng, space, rng.randint(2, 3)) for _ in range(3)]
        if None in fs:
            continue
        f1, f2, f3 = fs
        p1, p2 = f1.parity, f2.parity
        s12 = -1 if (p1 and p2) else 1
        if conv.bracket(f1, f2, b) != (-s12) * conv.bracket(f2, f1, b):
            return False
        jac = conv.bracket(f1, conv.bracket(f2, f3, b), b) \
            - conv.bracket(conv.bracket(f1, f2, b), f3, b) \
            - s12 * conv.bracket(f2, conv.bracket(f1, f3, b), b)
        if not jac.is_zero():
            return False
    return True


# closure sanity for the locked cyclicity, before searching bracket signs
rng = random.Random(3)
closure_fail = 0
for _ in range(25):
    space, b = random_quadratic_space(rng)
    f1 = random_cyclic(rng, space, rng.randint(2, 4))
    f2 = random_cyclic(rng, space, rng.randint(2, 4))
    if f1 is None or f2 is None:
        continue
    conv0 = Conv2(0, "first", 0, 0, 0, 0, 0, 0, 0)
    Q1, Q2 = conv0.map_of(f1, b), conv0.map_of(f2, b)
    if not is_cyc(conv0.omega_of(bracket_tensor(Q1, Q2), b)):
        closure_fail += 1
print("closure failures with locked cyclicity:", closure_fail, "/25")

survivors = []
for swap in (0, 1):
    for slot in ("first", "last"):
        for d in itertools.product((0, 1), repeat=7):
            conv = Conv2(swap, slot, *d)
            if not anchor_m2(conv):
                continue
            if not anchor_iso(conv, random.Random(21), 8):
                continue
            if not anchor_lie(conv, random.Random(22), 4):
                continue
            survivors.append((swap, slot) + d)
            print("SURVIVOR", survivors[-1])

print("total:", len(survivors))
for s in survivors[:6]:
    conv = Conv2(s[0], s[1], *s[2:])
    print(s, "extended:", anchor_iso(conv, random.Random(77), 25), anchor_lie(conv, random.Random(78), 10))
