"""Shared generators for the randomized exact suites.

Everything is driven by a seeded random.Random so that failures reproduce.
Spaces come with degree lists closed under negation so that a degree-0
nondegenerate symmetric pairing exists.  PARITY_HOMOGENEOUS_MENU lists
spaces whose basis degrees share one parity; the symmetric-quotient story
requires those.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from pinczon.graded import BilinearForm, GradedSpace, validate_form
from pinczon.forms import MultiForm, BiSymForm, cyclic_sym, is_cyclic, bisym_basis_keys
from pinczon.coderiv import MultiMap, map_of

DEGREE_MENU = [
    (0,),
    (0, 0),
    (1, -1),
    (0, 1, -1),
    (0, 0, 0),
    (2, -2, 0),
]

PARITY_HOMOGENEOUS_MENU = [
    (0, 0),
    (1, -1),
    (0, 0, 0),
    (2, -2, 0),
    (1, 1, -1, -1),
]


def space_from_degrees(degrees) -> GradedSpace:
    return GradedSpace(tuple(degrees), tuple("e%d" % (i + 1) for i in range(len(degrees))))


def random_space(rng: random.Random, menu=DEGREE_MENU) -> GradedSpace:
    return space_from_degrees(rng.choice(menu))


def random_form_matrix(rng: random.Random, space: GradedSpace):
    """Random symmetric degree-0 nondegenerate Gram matrix, exact."""
    n = space.dim
    for _ in range(300):
        gram = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                if space.degrees[i] + space.degrees[j] != 0:
                    continue
                val = Fraction(rng.randint(-3, 3))
                gram[i][j] = val
                gram[j][i] = val
        report = validate_form(space, gram)
        if report.ok:
            return tuple(tuple(row) for row in gram)
    raise RuntimeError("could not sample a nondegenerate form")


def random_quadratic_space(rng: random.Random, menu=DEGREE_MENU):
    space = random_space(rng, menu)
    return space, BilinearForm(space, random_form_matrix(rng, space))


def random_homogeneous_form(rng: random.Random, space: GradedSpace, arity: int,
                            even_weight: bool = False):
    """Random nonzero homogeneous form of the given arity, or None."""
    keys = list(product(range(space.dim), repeat=arity))
    totals = sorted({sum(space.degrees[i] for i in k) for k in keys})
    if even_weight:
        totals = [t for t in totals if t % 2 == 0]
    if not totals:
        return None
    for _ in range(300):
        total = rng.choice(totals)
        coeffs = {}
        for k in keys:
            if sum(space.degrees[i] for i in k) != total:
                continue
            if rng.random() < 0.5:
                c = rng.randint(-3, 3)
                if c:
                    coeffs[k] = Fraction(c)
        if coeffs:
            return MultiForm(space, arity, coeffs)
    return None


def random_cyclic_form(rng: random.Random, space: GradedSpace, arity: int):
    """Random nonzero cyclic form (rotation-invariant; even weight classes), or None."""
    for _ in range(300):
        raw = random_homogeneous_form(rng, space, arity, even_weight=True)
        if raw is None:
            return None
        form = cyclic_sym(raw)
        if not form.is_zero():
            assert is_cyclic(form)
            return form
    return None


def cyclic_pair(rng: random.Random, menu=DEGREE_MENU, min_arity=2, max_arity=4):
    """A quadratic space with two random cyclic forms on it; resamples until found."""
    while True:
        space, b = random_quadratic_space(rng, menu)
        f1 = random_cyclic_form(rng, space, rng.randint(min_arity, max_arity))
        f2 = random_cyclic_form(rng, space, rng.randint(min_arity, max_arity))
        if f1 is not None and f2 is not None:
            return space, b, f1, f2


def random_bquadratic_map(rng: random.Random, space, b, form_arity: int):
    """Random B-quadratic map whose form has the given arity, or None."""
    form = random_cyclic_form(rng, space, form_arity)
    return None if form is None else map_of(form, b)


def random_bisym_form(rng: random.Random, space: GradedSpace, x_arity: int):
    keys = bisym_basis_keys(space, x_arity)
    totals = sorted({sum(space.degrees[i] for i in xk) + sum(space.degrees[j] for j in yk)
                     for xk, yk in keys})
    if not totals:
        return None
    for _ in range(300):
        total = rng.choice(totals)
        coeffs = {}
        for key in keys:
            xk2, yk2 = key
            t = sum(space.degrees[i] for i in xk2) + sum(space.degrees[j] for j in yk2)
            if t != total:
                continue
            if rng.random() < 0.5:
                c = rng.randint(-3, 3)
                if c:
                    coeffs[key] = Fraction(c)
        if coeffs:
            form = BiSymForm(space, x_arity, coeffs)
            if not form.is_zero():
                return form
    return None


def random_bquadratic_prelie(rng: random.Random, space, b, x_arity: int):
    form = random_bisym_form(rng, space, x_arity)
    return None if form is None else map_of(form, b, flavor="prelie")


def prelie_pair(rng: random.Random, menu=DEGREE_MENU, min_x=1, max_x=2):
    """A quadratic space with two random B-quadratic pre-Lie maps on it."""
    while True:
        space, b = random_quadratic_space(rng, menu)
        if space.dim < 2:
            continue
        q1 = random_bquadratic_prelie(rng, space, b, rng.randint(min_x, max_x))
        q2 = random_bquadratic_prelie(rng, space, b, rng.randint(min_x, max_x))
        if q1 is not None and q2 is not None:
            return space, b, q1, q2


def random_multimap(rng: random.Random, space: GradedSpace, arity: int) -> MultiMap:
    """Random homogeneous multilinear map (tensor flavor, no symmetry)."""
    keys = list(product(range(space.dim), repeat=arity))
    for _ in range(300):
        seed_key = rng.choice(keys)
        out_idx = rng.randrange(space.dim)
        out_deg = space.degrees[out_idx]
        degree = (out_deg - 1) - sum(space.deg(i) for i in seed_key)
        coeffs = {}
        for k in keys:
            want = degree + sum(space.deg(i) for i in k) + 1
            targets = [m for m in range(space.dim) if space.degrees[m] == want]
            if not targets:
                continue
            vec = [Fraction(0)] * space.dim
            hit = False
            for m in targets:
                if rng.random() < 0.5:
                    c = rng.randint(-2, 2)
                    if c:
                        vec[m] = Fraction(c)
                        hit = True
            if hit:
                coeffs[k] = tuple(vec)
        if coeffs:
            return MultiMap(space, arity, coeffs, degree)
    raise RuntimeError("could not sample a multimap")


def m2_space():
    """The 2x2 matrix algebra: space, product constants, trace Gram matrix."""
    names = ("e11", "e12", "e21", "e22")
    idx = {(a, b): 2 * (a - 1) + (b - 1) for a in (1, 2) for b in (1, 2)}
    space = GradedSpace((0, 0, 0, 0), names)
    prod = {}
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c:
                vec = [Fraction(0)] * 4
                vec[idx[(a, d)]] = Fraction(1)
                prod[(i, j)] = tuple(vec)
    gram = [[Fraction(0)] * 4 for _ in range(4)]
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            gram[i][j] = Fraction(1) if (b == c and d == a) else Fraction(0)
    return space, prod, tuple(tuple(row) for row in gram)
