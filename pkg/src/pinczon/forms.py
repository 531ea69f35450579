"""Sparse multilinear forms on the shifted space and the Pinczon bracket.

A ``MultiForm`` stores the values of a k-linear form on basis tuples of the
shifted space.  Homogeneity: all supported tuples share one total unshifted
degree, and ``degree = total + arity``; the parity entering every sign rule
is ``degree mod 2``.

Cyclic forms are the fixed points of the rotation operator

    (R F)(z, w_1..w_k) = -(-1)^(parity(F) * deg z) F(w_1..w_k, z),

the invariance law forced by requiring that the form of a multilinear map
pairs an invariant product exactly when the map is compatible with b.
Nonzero cyclic forms exist only on even total unshifted degree.

The Pinczon bracket is computed by the insertion formula obtained from the
commutator of the associated maps through the completeness relation of the
dual bases:

    {F,G} = E(F,G) - (-1)^(pF pG) E(G,F),
    E(F,G)(x_1..x_N) = sum_{r,m} (-1)^(pG(S_r+1) + T_r)
        G(x_{r+1}..x_{r+k'}, e'_m) F(x_1..x_r, e_m, x_{r+k'+1}..x_N)

with S_r, T_r the shifted-degree sums of the blocks.  This satisfies
{F,G} = Omega_[Q,Q'] exactly for all homogeneous forms, it is graded
antisymmetric, satisfies the graded Jacobi identity, preserves cyclicity,
and arity-0 forms are central.  The bracket of two 1-forms is the scalar
-(-1)^parity(F) sum_i F(e_i) G(e'_i).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial

from pinczon.graded import (
    ONE,
    ZERO,
    BilinearForm,
    GradedSpace,
    Vec,
    dual_basis,
    koszul_sign,
    reorder_sign,
    sort_with_sign,
)


class MultiForm:
    """Sparse k-linear form on the shifted space of a graded vector space."""

    __slots__ = ("space", "arity", "degree", "coeffs")

    def __init__(self, space: GradedSpace, arity: int, coeffs=None, degree=None):
        if arity < 0:
            raise ValueError("arity must be >= 0")
        self.space = space
        self.arity = arity
        clean: dict[tuple, Fraction] = {}
        if coeffs:
            for key, value in coeffs.items():
                value = Fraction(value)
                if value == 0:
                    continue
                key = tuple(key)
                if len(key) != arity:
                    raise ValueError("key %s does not match arity %d" % (key, arity))
                clean[key] = clean.get(key, ZERO) + value
            clean = {k: v for k, v in clean.items() if v != 0}
        self.coeffs = clean
        totals = {sum(space.degrees[i] for i in key) for key in clean}
        if len(totals) > 1:
            raise ValueError("form is not homogeneous: totals %s" % sorted(totals))
        if totals:
            derived = totals.pop() + arity
            if degree is not None and degree != derived:
                raise ValueError("declared degree %s does not match support (%s)" % (degree, derived))
            degree = derived
        elif degree is None:
            degree = arity
        self.degree = degree

    @property
    def parity(self) -> int:
        return self.degree % 2

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiForm):
            return NotImplemented
        if self.space != other.space or self.arity != other.arity:
            return False
        if self.coeffs != other.coeffs:
            return False
        return self.is_zero() or self.degree == other.degree

    def __hash__(self):
        return hash((self.space, self.arity, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other: "MultiForm") -> "MultiForm":
        if self.space != other.space or self.arity != other.arity:
            raise ValueError("cannot add forms on different spaces or arities")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        coeffs = dict(self.coeffs)
        for key, value in other.coeffs.items():
            coeffs[key] = coeffs.get(key, ZERO) + value
        return MultiForm(self.space, self.arity, coeffs, self.degree)

    def __sub__(self, other: "MultiForm") -> "MultiForm":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "MultiForm":
        scalar = Fraction(scalar)
        return MultiForm(self.space, self.arity, {k: scalar * v for k, v in self.coeffs.items()}, self.degree)

    def __neg__(self) -> "MultiForm":
        return (-1) * self

    def __repr__(self):
        items = ", ".join("%s: %s" % (k, v) for k, v in sorted(self.coeffs.items()))
        return "MultiForm(arity=%d, degree=%d, {%s})" % (self.arity, self.degree, items)

    def value(self, key) -> Fraction:
        return self.coeffs.get(tuple(key), ZERO)


def zero_form(space: GradedSpace, arity: int, degree=None) -> MultiForm:
    return MultiForm(space, arity, {}, degree)


def scalar_form(space: GradedSpace, value) -> MultiForm:
    """Arity-0 form: a scalar with the empty tuple as its only key."""
    return MultiForm(space, 0, {(): Fraction(value)}, 0)


def eval_form(form: MultiForm, args) -> Fraction:
    """Multilinear expansion of the form on a list of vectors; no signs."""
    args = list(args)
    if len(args) != form.arity:
        raise ValueError("expected %d arguments, got %d" % (form.arity, len(args)))
    total = ZERO
    for key, coeff in form.coeffs.items():
        term = coeff
        for slot, i in enumerate(key):
            c = args[slot][i]
            if c == 0:
                term = ZERO
                break
            term *= c
        total += term
    return total


def act_perm(form: MultiForm, perm) -> MultiForm:
    """Pullback by a permutation with the Koszul sign.

    The coefficient on a tuple t is koszul_sign(perm, degrees of t) times
    the old coefficient on the perm-preimage of t.
    """
    perm = tuple(perm)
    if len(perm) != form.arity:
        raise ValueError("permutation size does not match arity")
    sdeg = form.space.shifted_degrees()
    coeffs: dict[tuple, Fraction] = {}
    for key, value in form.coeffs.items():
        new_key = tuple(key[perm[i]] for i in range(len(perm)))
        sign = koszul_sign(perm, [sdeg[i] for i in new_key])
        coeffs[new_key] = coeffs.get(new_key, ZERO) + sign * value
    return MultiForm(form.space, form.arity, coeffs, form.degree)


def rotate(form: MultiForm) -> MultiForm:
    """The cyclic rotation operator R (last argument moved to the front).

    (R F)(z, w_1..w_k) = -(-1)^(parity(F)*deg z) F(w_1..w_k, z); one full
    turn multiplies by (-1)^(arity+parity), so nonzero fixed points need
    even total unshifted degree.
    """
    if form.arity <= 1:
        return form
    p = form.parity
    sdeg = form.space.shifted_degrees()
    coeffs: dict[tuple, Fraction] = {}
    for key, value in form.coeffs.items():
        new_key = (key[-1],) + key[:-1]
        sign = -1 if (p and sdeg[key[-1]] % 2) else 1
        coeffs[new_key] = coeffs.get(new_key, ZERO) - sign * value
    return MultiForm(form.space, form.arity, coeffs, form.degree)


def is_cyclic(form: MultiForm) -> bool:
    if form.arity <= 1:
        return True
    return rotate(form) == form


def cyclic_sym(form: MultiForm) -> MultiForm:
    """Sum of all rotation powers; a multiple of the projection onto cyclic forms.

    A full turn multiplies by (-1)^weight with weight the total unshifted
    degree, so on odd-weight classes the only cyclic form is zero and the
    projection vanishes.
    """
    if not form.is_zero() and (form.degree - form.arity) % 2:
        return zero_form(form.space, form.arity, form.degree)
    out = form
    current = form
    for _ in range(form.arity - 1):
        current = rotate(current)
        out = out + current
    return out


def concat(a: MultiForm, b: MultiForm) -> MultiForm:
    """Concatenated tensor form; coefficients multiply, no sign."""
    if a.space != b.space:
        raise ValueError("forms live on different spaces")
    coeffs: dict[tuple, Fraction] = {}
    for ka, va in a.coeffs.items():
        for kb, vb in b.coeffs.items():
            coeffs[ka + kb] = coeffs.get(ka + kb, ZERO) + va * vb
    return MultiForm(a.space, a.arity + b.arity, coeffs, a.degree + b.degree)


def cyclic_prod(a: MultiForm, b: MultiForm) -> MultiForm:
    """The cyclic product: cyclic symmetrization of the concatenation."""
    return cyclic_sym(concat(a, b))


def interior(x: Vec, form: MultiForm) -> MultiForm:
    """Contraction in the first slot: (i_x F)(y_2..y_k) = F(x, y_2..y_k)."""
    if form.arity == 0:
        raise ValueError("cannot contract an arity-0 form")
    dx = form.space.vector_degree(x)  # homogeneity check
    coeffs: dict[tuple, Fraction] = {}
    for key, value in form.coeffs.items():
        c = x[key[0]]
        if c == 0:
            continue
        rest = key[1:]
        coeffs[rest] = coeffs.get(rest, ZERO) + c * value
    return MultiForm(form.space, form.arity - 1, coeffs, form.degree - 1 - (dx if dx is not None else 0))


def interior_basis(i: int, form: MultiForm) -> MultiForm:
    """Contraction of the first slot with the basis vector e_i."""
    if form.arity == 0:
        raise ValueError("cannot contract an arity-0 form")
    coeffs: dict[tuple, Fraction] = {}
    for key, value in form.coeffs.items():
        if key[0] == i:
            coeffs[key[1:]] = coeffs.get(key[1:], ZERO) + value
    return MultiForm(form.space, form.arity - 1, coeffs, form.degree - 1 - form.space.degrees[i])


def interior_last(x: Vec, form: MultiForm) -> MultiForm:
    """Contraction in the last slot: F(y_1..y_{k-1}, x)."""
    if form.arity == 0:
        raise ValueError("cannot contract an arity-0 form")
    dx = form.space.vector_degree(x)
    coeffs: dict[tuple, Fraction] = {}
    for key, value in form.coeffs.items():
        c = x[key[-1]]
        if c == 0:
            continue
        rest = key[:-1]
        coeffs[rest] = coeffs.get(rest, ZERO) + c * value
    return MultiForm(form.space, form.arity - 1, coeffs, form.degree - 1 - (dx if dx is not None else 0))


def interior_last_basis(i: int, form: MultiForm) -> MultiForm:
    if form.arity == 0:
        raise ValueError("cannot contract an arity-0 form")
    coeffs: dict[tuple, Fraction] = {}
    for key, value in form.coeffs.items():
        if key[-1] == i:
            coeffs[key[:-1]] = coeffs.get(key[:-1], ZERO) + value
    return MultiForm(form.space, form.arity - 1, coeffs, form.degree - 1 - form.space.degrees[i])


def dual_pairs(b: BilinearForm):
    """Pairs (i, e'_i) running over the basis and its b-dual."""
    return list(enumerate(dual_basis(b)))


def _insertion_half(f: MultiForm, g: MultiForm, b: BilinearForm) -> MultiForm:
    """The transported circle product: Omega of (map of f) o (map of g).

    Coefficientwise, g's last slot is contracted with a dual vector and the
    matching basis vector is inserted into every non-terminal slot of f.
    """
    space = f.space
    sdeg = space.shifted_degrees()
    k = f.arity - 1
    duals = dual_basis(b)
    pg = g.parity
    out: dict[tuple, Fraction] = {}
    for fkey, fval in f.coeffs.items():
        prefix = 0
        for r in range(k):
            m = fkey[r]
            e_dual = duals[m]
            for gkey, gval in g.coeffs.items():
                c = e_dual[gkey[-1]]
                if c == 0:
                    continue
                t_block = sum(sdeg[i] for i in gkey[:-1])
                exponent = pg * (prefix + 1) + t_block
                sign = -1 if exponent % 2 else 1
                u = fkey[:r] + gkey[:-1] + fkey[r + 1:]
                out[u] = out.get(u, ZERO) + sign * c * fval * gval
            prefix += sdeg[m]
    res = {key: v for key, v in out.items() if v != 0}
    return MultiForm(space, k + (g.arity - 1), res, f.degree + g.degree - 2)


def pinczon_bracket(a: MultiForm, b_form: MultiForm, b: BilinearForm, check_cyclic: bool = True) -> MultiForm:
    """The Pinczon bracket of two cyclic forms with respect to b.

    Transported from the commutator of the associated multilinear maps, so
    pinczon_bracket(Omega_Q, Omega_Q') = Omega_[Q,Q'] exactly.  Arity-0
    forms are central; the bracket of two 1-forms is the scalar pairing
    -(-1)^parity sum_i a(e_i) a'(e'_i).
    """
    if a.space != b_form.space or b.space != a.space:
        raise ValueError("forms and bilinear form must share one space")
    if check_cyclic and not (is_cyclic(a) and is_cyclic(b_form)):
        raise ValueError("pinczon_bracket requires cyclic forms")
    out_arity = a.arity + b_form.arity - 2
    out_degree = a.degree + b_form.degree - 2
    if a.arity == 0 or b_form.arity == 0:
        return zero_form(a.space, max(out_arity, 0), out_degree)
    if a.arity == 1 and b_form.arity == 1:
        total = ZERO
        for i, e_dual in dual_pairs(b):
            va = a.coeffs.get((i,), ZERO)
            if va == 0:
                continue
            vb = ZERO
            for m, c in enumerate(e_dual):
                if c != 0:
                    vb += c * b_form.coeffs.get((m,), ZERO)
            total += va * vb
        if a.parity == 0:
            total = -total
        return MultiForm(a.space, 0, {(): total}, 0)
    cross = -1 if (a.parity and b_form.parity) else 1
    return _insertion_half(a, b_form, b) - cross * _insertion_half(b_form, a, b)


# ---------------------------------------------------------------------------
# shuffles and forms vanishing on shuffle products
# ---------------------------------------------------------------------------

def shuffle_perms(p: int, q: int):
    """All (p,q)-shuffles of S_{p+q}, as tuples of images."""
    n = p + q
    out = []
    for first_block in combinations(range(n), p):
        rest = [i for i in range(n) if i not in first_block]
        perm = [0] * n
        for pos, image in enumerate(first_block):
            perm[pos] = image
        for pos, image in enumerate(rest):
            perm[p + pos] = image
        out.append(tuple(perm))
    return out


def shuffle_sum(form: MultiForm, p: int, q: int, spectators: int = 0) -> MultiForm:
    """Sum of the shuffle actions on the first p+q slots, trailing slots fixed."""
    if p < 1 or q < 1 or p + q + spectators != form.arity:
        raise ValueError("invalid shuffle split")
    total = zero_form(form.space, form.arity, form.degree)
    fixed = tuple(range(p + q, form.arity))
    for sigma in shuffle_perms(p, q):
        total = total + act_perm(form, sigma + fixed)
    return total


def vsp_witness(form: MultiForm):
    """None if the form vanishes on shuffle products, else (p, q, tuple).

    The last slot of a (k+1)-form is a spectator; every p+q = k split of the
    first k slots is tested.
    """
    k = form.arity - 1
    for p in range(1, k):
        q = k - p
        total = shuffle_sum(form, p, q, spectators=1)
        if not total.is_zero():
            return (p, q, min(total.coeffs))
    return None


def is_vsp(form: MultiForm) -> bool:
    return vsp_witness(form) is None


# ---------------------------------------------------------------------------
# total symmetrization and the quotient bracket
# ---------------------------------------------------------------------------

def symmetrize(form: MultiForm) -> MultiForm:
    """Restriction to symmetric words: the sum of act_perm over all permutations."""
    out = zero_form(form.space, form.arity, form.degree)
    for sigma in permutations(range(form.arity)):
        out = out + act_perm(form, sigma)
    return out


def is_symmetric(form: MultiForm) -> bool:
    """Invariance under every adjacent transposition (with Koszul signs)."""
    k = form.arity
    for i in range(k - 1):
        perm = list(range(k))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        if act_perm(form, tuple(perm)) != form:
            return False
    return True


def sym_prod(a: MultiForm, b: MultiForm) -> MultiForm:
    """Symmetric product of forms: full symmetrization of the concatenation."""
    return symmetrize(concat(a, b))


def sym_bracket(a: MultiForm, b_form: MultiForm, b: BilinearForm) -> MultiForm:
    """Quotient bracket on totally symmetric forms.

    For arities k+1 and k'+1:
        (k+k') / ((k+1)!(k'+1)!) * sum_i  (i^last_{e_i} A) . (i_{e'_i} A')
    contracting the last slot of the first factor and the first slot of the
    second.  On spaces whose basis degrees share one parity this satisfies
    symmetrize({A,A'}) = sym_bracket(symmetrize A, symmetrize A') exactly;
    on parity-mixed spaces the quotient bracket is not well defined.
    """
    if not is_symmetric(a) or not is_symmetric(b_form):
        raise ValueError("sym_bracket requires totally symmetric forms")
    k = a.arity - 1
    kp = b_form.arity - 1
    out_arity = k + kp
    out_degree = a.degree + b_form.degree - 2
    if a.arity == 0 or b_form.arity == 0 or out_arity == 0:
        return zero_form(a.space, max(out_arity, 0), out_degree)
    factor = Fraction(k + kp, factorial(k + 1) * factorial(kp + 1))
    out = zero_form(a.space, out_arity, out_degree)
    for i, e_dual in dual_pairs(b):
        left = interior_last_basis(i, a)
        if left.is_zero():
            continue
        right = interior(e_dual, b_form)
        if right.is_zero():
            continue
        out = out + sym_prod(left, right)
    return factor * out


# ---------------------------------------------------------------------------
# deterministic bases of cyclic / symmetric form spaces
# ---------------------------------------------------------------------------

def admissible_tuples(space: GradedSpace, arity: int, degree=None):
    """Basis tuples in lexicographic order, optionally of fixed form degree."""
    for key in product(range(space.dim), repeat=arity):
        if degree is not None:
            if sum(space.degrees[i] for i in key) != degree - arity:
                continue
        yield key


def cyclic_form_basis(space: GradedSpace, arity: int, degree=None) -> list[MultiForm]:
    """Cyclic symmetrizations of orbit representatives, in lexicographic order.

    Orbits whose rotation sign-consistency forces the coefficient to vanish
    are omitted; on odd total unshifted degree there are no cyclic forms.
    """
    if arity == 0:
        return [scalar_form(space, 1)]
    if arity == 1:
        return [MultiForm(space, 1, {key: ONE}) for key in admissible_tuples(space, 1, degree)]
    seen: set[tuple] = set()
    basis = []
    for key in admissible_tuples(space, arity, degree):
        if key in seen:
            continue
        if sum(space.degrees[i] for i in key) % 2:
            continue
        probe = MultiForm(space, arity, {key: ONE})
        orbit = {key}
        current = probe
        for _ in range(arity - 1):
            current = rotate(current)
            orbit.update(current.coeffs)
        seen.update(orbit)
        form = cyclic_sym(probe)
        if not form.is_zero():
            basis.append(form)
    return basis


def graded_sym_canonical(key, sdeg):
    """Sort a tuple for graded-symmetric storage: (canonical key, sign).

    Returns (None, 0) when the tuple repeats an odd-degree index, which
    forces the coefficient to vanish.
    """
    skey, sign = sort_with_sign(key, sdeg)
    for a, b in zip(skey, skey[1:]):
        if a == b and sdeg[a] % 2:
            return None, 0
    return skey, sign


def plain_anti_canonical(key):
    """Sort a tuple for plain-antisymmetric storage: (canonical key, sign).

    The sign is the ordinary permutation sign; any repeated index forces the
    coefficient to vanish.
    """
    key = tuple(key)
    if len(set(key)) != len(key):
        return None, 0
    order = sorted(range(len(key)), key=lambda p: key[p])
    inversions = 0
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                inversions += 1
    return tuple(key[p] for p in order), (-1 if inversions % 2 else 1)


def symmetric_form_basis(space: GradedSpace, arity: int, degree=None) -> list[MultiForm]:
    """Symmetrized basis forms, one per admissible multiset."""
    sdeg = space.shifted_degrees()
    basis = []
    for key in admissible_tuples(space, arity, degree):
        if tuple(sorted(key)) != key:
            continue
        canon, _ = graded_sym_canonical(key, sdeg)
        if canon is None:
            continue
        form = symmetrize(MultiForm(space, arity, {key: ONE}))
        if not form.is_zero():
            basis.append(form)
    return basis


# ---------------------------------------------------------------------------
# bi-symmetric forms and the extended bracket
# ---------------------------------------------------------------------------

class BiSymForm:
    """Form separately graded-symmetric in k leading slots and 2 trailing slots.

    The leading block is graded-symmetric (sorted, Koszul signs absorbed,
    odd-degree repeats excluded); the trailing pair is plain-antisymmetric
    (strictly increasing, ordinary permutation sign, repeats excluded), the
    symmetry type carried by the forms of quadratic pre-Lie maps.
    """

    __slots__ = ("space", "x_arity", "degree", "coeffs")

    def __init__(self, space: GradedSpace, x_arity: int, coeffs=None, degree=None):
        if x_arity < 0:
            raise ValueError("x_arity must be >= 0")
        self.space = space
        self.x_arity = x_arity
        sdeg = space.shifted_degrees()
        clean: dict[tuple, Fraction] = {}
        if coeffs:
            for (xkey, ykey), value in coeffs.items():
                value = Fraction(value)
                if value == 0:
                    continue
                if len(xkey) != x_arity or len(ykey) != 2:
                    raise ValueError("key (%s, %s) does not match shape" % (xkey, ykey))
                cx, sx = graded_sym_canonical(tuple(xkey), sdeg)
                cy, sy = plain_anti_canonical(tuple(ykey))
                if cx is None or cy is None:
                    continue
                full = (cx, cy)
                clean[full] = clean.get(full, ZERO) + sx * sy * value
            clean = {k: v for k, v in clean.items() if v != 0}
        self.coeffs = clean
        totals = {
            sum(space.degrees[i] for i in xkey) + sum(space.degrees[j] for j in ykey)
            for xkey, ykey in clean
        }
        if len(totals) > 1:
            raise ValueError("bi-symmetric form is not homogeneous")
        if totals:
            derived = totals.pop() + x_arity + 2
            if degree is not None and degree != derived:
                raise ValueError("declared degree does not match support")
            degree = derived
        elif degree is None:
            degree = x_arity + 2
        self.degree = degree

    @property
    def parity(self) -> int:
        return self.degree % 2

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSymForm):
            return NotImplemented
        if self.space != other.space or self.x_arity != other.x_arity:
            return False
        if self.coeffs != other.coeffs:
            return False
        return self.is_zero() or self.degree == other.degree

    def __add__(self, other: "BiSymForm") -> "BiSymForm":
        if self.space != other.space or self.x_arity != other.x_arity:
            raise ValueError("cannot add bi-symmetric forms of different shapes")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add bi-symmetric forms of different degrees")
        coeffs = dict(self.coeffs)
        for key, value in other.coeffs.items():
            coeffs[key] = coeffs.get(key, ZERO) + value
        out = BiSymForm(self.space, self.x_arity, degree=self.degree)
        out.coeffs = {k: v for k, v in coeffs.items() if v != 0}
        return out

    def __sub__(self, other: "BiSymForm") -> "BiSymForm":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "BiSymForm":
        scalar = Fraction(scalar)
        out = BiSymForm(self.space, self.x_arity, degree=self.degree)
        if scalar != 0:
            out.coeffs = {k: scalar * v for k, v in self.coeffs.items()}
        return out

    def __neg__(self):
        return (-1) * self

    def __repr__(self):
        items = ", ".join("%s|%s: %s" % (x, y, v) for (x, y), v in sorted(self.coeffs.items()))
        return "BiSymForm(x_arity=%d, degree=%d, {%s})" % (self.x_arity, self.degree, items)

    def value(self, xkey, ykey) -> Fraction:
        """Value on an arbitrary (x-tuple, y-pair), canonicalizing with signs."""
        sdeg = self.space.shifted_degrees()
        cx, sx = graded_sym_canonical(tuple(xkey), sdeg)
        if cx is None:
            return ZERO
        cy, sy = plain_anti_canonical(tuple(ykey))
        if cy is None:
            return ZERO
        return sx * sy * self.coeffs.get((cx, cy), ZERO)

    def value_vec(self, xparts, yparts) -> Fraction:
        """Value with vectors allowed in slots; expands multilinearly."""
        slots = list(xparts) + list(yparts)
        total = ZERO
        for key, coeffs in _expand_slots(slots):
            weight = ONE
            for c in coeffs:
                weight *= c
            if weight == 0:
                continue
            total += weight * self.value(key[: self.x_arity], key[self.x_arity:])
        return total


def _expand_slots(slots):
    """Expand a list of (index or vector) slots into (index tuple, coeffs)."""
    options = []
    for s in slots:
        if isinstance(s, int):
            options.append([(s, ONE)])
        else:
            options.append([(i, c) for i, c in enumerate(s) if c != 0])
    for combo in product(*options):
        yield tuple(i for i, _ in combo), tuple(c for _, c in combo)


def zero_bisym(space: GradedSpace, x_arity: int, degree=None) -> BiSymForm:
    return BiSymForm(space, x_arity, {}, degree)


def bisym_basis_keys(space: GradedSpace, x_arity: int):
    """Canonical (x multiset, y pair) keys in lexicographic order."""
    sdeg = space.shifted_degrees()
    xkeys = []
    for key in product(range(space.dim), repeat=x_arity):
        if tuple(sorted(key)) != key:
            continue
        canon, _ = graded_sym_canonical(key, sdeg)
        if canon is not None:
            xkeys.append(key)
    ykeys = []
    for key in product(range(space.dim), repeat=2):
        if key[0] >= key[1]:
            continue
        ykeys.append(key)
    return [(x, y) for x in xkeys for y in ykeys]


def _prelie_half(phi: BiSymForm, psi: BiSymForm, b: BilinearForm) -> dict:
    """Insertion half of the extended bracket (the composition direction phi o psi).

    Obtained from the coderivation-extension sums through the completeness
    relation, with B-pairings of B-quadratic maps replaced by half the
    bi-symmetric values.  Returns raw coefficients on canonical keys.
    """
    space = phi.space
    sdeg = space.shifted_degrees()
    k, kp = phi.x_arity, psi.x_arity
    n = k + kp
    duals = dual_basis(b)
    pq = psi.parity
    out: dict[tuple, Fraction] = {}
    for xkey, ykey in bisym_basis_keys(space, n):
        if graded_sym_canonical(xkey, sdeg)[0] != xkey:
            continue
        y1, y2 = ykey
        positions = range(n)
        total = ZERO
        parities = [sdeg[i] % 2 for i in xkey]
        for chosen in combinations(positions, k):
            rest = [p for p in positions if p not in chosen]
            xI = [xkey[p] for p in chosen]
            xJ = [xkey[p] for p in rest]
            sI = sum(sdeg[i] for i in xI)
            sJ = sum(sdeg[i] for i in xJ)
            ks = reorder_sign(parities, list(chosen) + rest)
            e = pq * sI + pq + sJ + sdeg[y1]
            s1 = ks * (-1 if e % 2 else 1)
            for m in range(space.dim):
                a_val = psi.value_vec(xJ, [y1, duals[m]])
                if a_val == 0:
                    continue
                c_val = phi.value(tuple(xI), (m, y2))
                if c_val != 0:
                    total += s1 * a_val * c_val
        for jpos in positions:
            others = [p for p in positions if p != jpos]
            for chosen in combinations(others, k - 1):
                rest = [p for p in others if p not in chosen]
                xI = [xkey[p] for p in chosen]
                xJ = [xkey[p] for p in rest]
                sI = sum(sdeg[i] for i in xI)
                sJ = sum(sdeg[i] for i in xJ)
                ks = reorder_sign(parities, list(chosen) + rest + [jpos])
                e = pq * sI + pq + sJ + sdeg[xkey[jpos]]
                s2 = ks * (-1 if e % 2 else 1)
                for m in range(space.dim):
                    a_val = psi.value_vec(xJ, [xkey[jpos], duals[m]])
                    if a_val == 0:
                        continue
                    c_val = phi.value_vec(list(xI) + [m], [y1, y2])
                    if c_val != 0:
                        total += s2 * a_val * c_val
        if total != 0:
            out[(xkey, ykey)] = total
    return out


def bisym_bracket(phi: BiSymForm, psi: BiSymForm, b: BilinearForm) -> BiSymForm:
    """Extended Pinczon bracket on bi-symmetric forms.

    The three-term formula (leading-slot contractions against trailing-slot
    contractions plus the pure trailing-pair term), with all reordering
    signs generated mechanically; on forms of B-quadratic maps it satisfies
    bisym_bracket(Omega_Q, Omega_Q') = 2 Omega_[Q,Q'].
    """
    if phi.space != psi.space or b.space != phi.space:
        raise ValueError("forms and bilinear form must share one space")
    out_degree = phi.degree + psi.degree - 2
    n = phi.x_arity + psi.x_arity
    first = _prelie_half(phi, psi, b)
    second = _prelie_half(psi, phi, b)
    cross = -1 if (phi.parity and psi.parity) else 1
    coeffs = dict(first)
    for key, val in second.items():
        coeffs[key] = coeffs.get(key, ZERO) - cross * val
    return BiSymForm(phi.space, n, coeffs, out_degree)
