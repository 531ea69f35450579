"""Multilinear maps as Taylor coefficients of coderivations.

A ``MultiMap`` of arity k sends basis k-tuples of the shifted space to
vectors; its ``degree`` is the shifted-world degree, so the output of a key
t is homogeneous of unshifted degree ``degree + sum(deg(t)) + 1``.

Four flavors of coderivation are supported through their brackets:

* tensor      -- deconcatenation coalgebra, circle product and commutator;
* vsp         -- tensor maps vanishing on shuffle products (closed under
                 the tensor bracket);
* symmetric   -- symmetric coalgebra, partition bracket;
* prelie      -- maps (symmetric word of length k) (x) (one vector) -> vector,
                 bracket of the canonical coderivation extensions.

The dictionary with forms: omega_of(Q) pairs the output of Q with one more
argument through the shifted form B; map_of inverts it.  All Koszul signs
are produced mechanically from shifted-degree lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from pinczon.graded import (
    ONE,
    ZERO,
    BilinearForm,
    GradedSpace,
    Vec,
    eta,
    koszul_sign,
    reorder_sign,
    vec_add,
    vec_is_zero,
    vec_scale,
)
from pinczon.forms import (
    BiSymForm,
    MultiForm,
    dual_pairs,
    graded_sym_canonical,
    is_cyclic,
    shuffle_perms,
)


class MultiMap:
    """Sparse k-linear map on the shifted space, values are vectors."""

    __slots__ = ("space", "arity", "degree", "coeffs")

    def __init__(self, space: GradedSpace, arity: int, coeffs=None, degree=None):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.space = space
        self.arity = arity
        clean: dict[tuple, Vec] = {}
        if coeffs:
            for key, vec in coeffs.items():
                key = tuple(key)
                if len(key) != arity:
                    raise ValueError("key %s does not match arity %d" % (key, arity))
                vec = tuple(Fraction(c) for c in vec)
                if len(vec) != space.dim:
                    raise ValueError("value vector has wrong dimension")
                if vec_is_zero(vec):
                    continue
                if key in clean:
                    vec = vec_add(clean[key], vec)
                    if vec_is_zero(vec):
                        del clean[key]
                        continue
                clean[key] = vec
        self.coeffs = clean
        degrees = set()
        for key, vec in clean.items():
            out = space.vector_degree(vec)
            degrees.add(out - 1 - sum(space.deg(i) for i in key))
        if len(degrees) > 1:
            raise ValueError("map is not homogeneous: degrees %s" % sorted(degrees))
        if degrees:
            derived = degrees.pop()
            if degree is not None and degree != derived:
                raise ValueError("declared degree %s does not match support (%s)" % (degree, derived))
            degree = derived
        elif degree is None:
            degree = 1
        self.degree = degree

    @property
    def parity(self) -> int:
        return self.degree % 2

    def is_zero(self) -> bool:
        return not self.coeffs

    def value(self, key) -> Vec:
        return self.coeffs.get(tuple(key), self.space.zero_vector())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiMap):
            return NotImplemented
        if self.space != other.space or self.arity != other.arity:
            return False
        if self.coeffs != other.coeffs:
            return False
        return self.is_zero() or self.degree == other.degree

    def __add__(self, other: "MultiMap") -> "MultiMap":
        if self.space != other.space or self.arity != other.arity:
            raise ValueError("cannot add maps of different shapes")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add maps of different degrees")
        coeffs = dict(self.coeffs)
        for key, vec in other.coeffs.items():
            coeffs[key] = vec_add(coeffs[key], vec) if key in coeffs else vec
        return MultiMap(self.space, self.arity, coeffs, self.degree)

    def __sub__(self, other: "MultiMap") -> "MultiMap":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "MultiMap":
        scalar = Fraction(scalar)
        coeffs = {k: vec_scale(scalar, v) for k, v in self.coeffs.items()}
        return MultiMap(self.space, self.arity, coeffs, self.degree)

    def __neg__(self):
        return (-1) * self

    def __repr__(self):
        return "MultiMap(arity=%d, degree=%d, %d keys)" % (self.arity, self.degree, len(self.coeffs))


def zero_map(space: GradedSpace, arity: int, degree=1) -> MultiMap:
    return MultiMap(space, arity, {}, degree)


def shift_map(space: GradedSpace, arity: int, coeffs, map_degree: int = 0) -> MultiMap:
    """Shifted companion of an unshifted multilinear map: coefficientwise eta.

    ``coeffs`` maps basis tuples to vectors; the result has shifted degree
    map_degree + arity - 1.
    """
    sdeg = space.shifted_degrees()
    out = {}
    for key, vec in coeffs.items():
        key = tuple(key)
        sign = eta(sdeg[i] for i in key)
        out[key] = vec_scale(sign, vec)
    return MultiMap(space, arity, out, map_degree + arity - 1)


def unshift_map(q: MultiMap) -> dict[tuple, Vec]:
    """Inverse of shift_map: the same eta scaling (eta is an involution here)."""
    sdeg = q.space.shifted_degrees()
    out = {}
    for key, vec in q.coeffs.items():
        sign = eta(sdeg[i] for i in key)
        out[key] = vec_scale(sign, vec)
    return out


def act_perm_map(q: MultiMap, perm) -> MultiMap:
    """Pullback of the arguments by a permutation, with the Koszul sign."""
    perm = tuple(perm)
    if len(perm) != q.arity:
        raise ValueError("permutation size does not match arity")
    sdeg = q.space.shifted_degrees()
    coeffs: dict[tuple, Vec] = {}
    for key, vec in q.coeffs.items():
        new_key = tuple(key[perm[i]] for i in range(len(perm)))
        sign = koszul_sign(perm, [sdeg[i] for i in new_key])
        add = vec_scale(sign, vec)
        coeffs[new_key] = vec_add(coeffs[new_key], add) if new_key in coeffs else add
    return MultiMap(q.space, q.arity, coeffs, q.degree)


def symmetrize_map(q: MultiMap) -> MultiMap:
    """Restriction to symmetric words: sum of act_perm_map over the symmetric group."""
    out = zero_map(q.space, q.arity, q.degree)
    for sigma in permutations(range(q.arity)):
        out = out + act_perm_map(q, sigma)
    return out


def is_symmetric_map(q: MultiMap, slots: int | None = None) -> bool:
    """Graded symmetry in the first ``slots`` arguments (all by default)."""
    n = q.arity if slots is None else slots
    for i in range(n - 1):
        perm = list(range(q.arity))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        if act_perm_map(q, tuple(perm)) != q:
            return False
    return True


def vsp_witness_map(q: MultiMap):
    """None if the map vanishes on shuffle products, else (p, q, key)."""
    k = q.arity
    for p in range(1, k):
        qq = k - p
        total = zero_map(q.space, k, q.degree)
        for sigma in shuffle_perms(p, qq):
            total = total + act_perm_map(q, sigma)
        if not total.is_zero():
            return (p, qq, min(total.coeffs))
    return None


def is_vsp_map(q: MultiMap) -> bool:
    return vsp_witness_map(q) is None


# ---------------------------------------------------------------------------
# tensor flavor: circle product and commutator
# ---------------------------------------------------------------------------

def circle_tensor(q: MultiMap, qp: MultiMap) -> MultiMap:
    """Insertion sum Q o Q' over all slots, with mechanical Koszul signs."""
    if q.space != qp.space:
        raise ValueError("maps live on different spaces")
    space = q.space
    sdeg = space.shifted_degrees()
    out_arity = q.arity + qp.arity - 1
    out: dict[tuple, Vec] = {}
    pq = qp.parity
    for t, vec in q.coeffs.items():
        prefix_par = 0
        for r in range(q.arity):
            m = t[r]
            for tp, vecp in qp.coeffs.items():
                c = vecp[m]
                if c != 0:
                    u = t[:r] + tp + t[r + 1:]
                    sign = -1 if (pq and prefix_par % 2) else 1
                    add = vec_scale(sign * c, vec)
                    out[u] = vec_add(out[u], add) if u in out else add
            prefix_par += sdeg[m]
    return MultiMap(space, out_arity, out, q.degree + qp.degree)


def bracket_tensor(q: MultiMap, qp: MultiMap) -> MultiMap:
    """Graded commutator of coderivations of the deconcatenation coproduct."""
    sign = -1 if (q.parity and qp.parity) else 1
    return circle_tensor(q, qp) - sign * circle_tensor(qp, q)


# ---------------------------------------------------------------------------
# symmetric flavor: partition bracket on S^+(V[1])
# ---------------------------------------------------------------------------

def _extraction_sign(sdeg, key, chosen):
    """Koszul sign of pulling the chosen positions of a tuple to the front."""
    parities = [sdeg[i] % 2 for i in key]
    order = list(chosen) + [p for p in range(len(key)) if p not in chosen]
    return reorder_sign(parities, order)


def _spread_orderings(space, x_len, canonical: dict):
    """Expand values on sorted x-words to all orderings, with transport signs.

    Keys are x-word + (possibly) trailing fixed slots; only the first x_len
    positions are permuted.
    """
    sdeg = space.shifted_degrees()
    out = {}
    for key, vec in canonical.items():
        xpart, tail = key[:x_len], key[x_len:]
        seen = set()
        for perm in permutations(range(x_len)):
            word = tuple(xpart[p] for p in perm)
            if word in seen:
                continue
            seen.add(word)
            _, sign = graded_sym_canonical(word, sdeg)
            full = word + tail
            add = vec_scale(sign, vec)
            out[full] = vec_add(out[full], add) if full in out else add
    return out


def bracket_sym(q: MultiMap, qp: MultiMap) -> MultiMap:
    """Partition bracket of graded-symmetric maps.

    [Q,Q'](x_1...x_N) = sum over J of Q(Q'(x_J).x_I) minus the graded
    transpose, N = k+k'-1; both inputs must be symmetric.
    """
    if q.space != qp.space:
        raise ValueError("maps live on different spaces")
    if not is_symmetric_map(q) or not is_symmetric_map(qp):
        raise ValueError("bracket_sym requires symmetric maps")
    space = q.space
    sdeg = space.shifted_degrees()
    n = q.arity + qp.arity - 1
    cross = -1 if (q.parity and qp.parity) else 1
    canonical: dict[tuple, Vec] = {}
    xkeys = _candidate_words(space, n)
    for u in xkeys:
        acc = space.zero_vector()
        positions = range(n)
        for chosen in combinations(positions, qp.arity):
            sub = tuple(u[p] for p in chosen)
            rest = tuple(u[p] for p in positions if p not in chosen)
            sign = _extraction_sign(sdeg, u, chosen)
            inner = qp.value(sub)
            if not vec_is_zero(inner):
                for m, c in enumerate(inner):
                    if c != 0:
                        outer = q.value((m,) + rest)
                        if not vec_is_zero(outer):
                            acc = vec_add(acc, vec_scale(sign * c, outer))
        for chosen in combinations(positions, q.arity):
            sub = tuple(u[p] for p in chosen)
            rest = tuple(u[p] for p in positions if p not in chosen)
            sign = _extraction_sign(sdeg, u, chosen) * cross
            inner = q.value(sub)
            if not vec_is_zero(inner):
                for m, c in enumerate(inner):
                    if c != 0:
                        outer = qp.value((m,) + rest)
                        if not vec_is_zero(outer):
                            acc = vec_add(acc, vec_scale(-sign * c, outer))
        if not vec_is_zero(acc):
            canonical[u] = acc
    spread = _spread_orderings(space, n, canonical)
    return MultiMap(space, n, spread, q.degree + qp.degree)


def _candidate_words(space: GradedSpace, length: int):
    """Sorted words (with graded-allowed repeats) over the basis."""
    sdeg = space.shifted_degrees()
    out = []

    def rec(start, word):
        if len(word) == length:
            out.append(tuple(word))
            return
        for i in range(start, space.dim):
            if word and word[-1] == i and sdeg[i] % 2:
                continue
            word.append(i)
            rec(i, word)
            word.pop()

    rec(0, [])
    return out


# ---------------------------------------------------------------------------
# pre-Lie flavor: bracket on S(V[1]) (x) V[1]
# ---------------------------------------------------------------------------

def prelie_bracket(q: MultiMap, qp: MultiMap) -> MultiMap:
    """Commutator of the coderivation extensions of two pre-Lie maps.

    Inputs are maps with k symmetric leading slots and one trailing slot;
    the output has k+k' symmetric leading slots and one trailing slot.
    """
    if q.space != qp.space:
        raise ValueError("maps live on different spaces")
    if not is_symmetric_map(q, q.arity - 1) or not is_symmetric_map(qp, qp.arity - 1):
        raise ValueError("prelie_bracket requires maps symmetric in their leading slots")
    space = q.space
    n = (q.arity - 1) + (qp.arity - 1)
    canonical: dict[tuple, Vec] = {}
    for u in _candidate_words(space, n):
        for y in range(space.dim):
            acc = _prelie_compose(q, qp, u, y)
            sign = -1 if (q.parity and qp.parity) else 1
            acc = vec_add(acc, vec_scale(-sign, _prelie_compose(qp, q, u, y)))
            if not vec_is_zero(acc):
                canonical[u + (y,)] = acc
    spread = _spread_orderings(space, n, canonical)
    return MultiMap(space, n + 1, spread, q.degree + qp.degree)


def _prelie_compose(q: MultiMap, qp: MultiMap, u, y) -> Vec:
    """The composition part Q o Q' of the pre-Lie bracket on the word u (x) y."""
    space = q.space
    sdeg = space.shifted_degrees()
    kq = q.arity - 1
    kp = qp.arity - 1
    n = len(u)
    pq = qp.parity
    acc = space.zero_vector()
    positions = range(n)
    # first sum: x_I (x) Q'(x_J (x) y), then Q eats the I-word and the value
    for chosen in combinations(positions, kp):
        sub = tuple(u[p] for p in chosen)
        rest = tuple(u[p] for p in positions if p not in chosen)
        # letters: (Q, x_I, Q', x_J, y); Q' crosses x_I
        ext_sign = _extraction_sign(sdeg, u, tuple(p for p in positions if p not in chosen))
        cross = sum(sdeg[i] for i in rest)
        sign = ext_sign * (-1 if (pq and cross % 2) else 1)
        inner = qp.value(sub + (y,))
        if vec_is_zero(inner):
            continue
        for m, c in enumerate(inner):
            if c != 0:
                # the inner value fills the trailing slot of the outer map
                outer = q.value(rest + (m,))
                if not vec_is_zero(outer):
                    acc = vec_add(acc, vec_scale(sign * c, outer))
    # second sum: (x_I . Q'(x_J (x) x_j)) (x) y
    for jpos in positions:
        others = [p for p in positions if p != jpos]
        for chosen in combinations(others, kp):
            sub = tuple(u[p] for p in chosen)
            rest = tuple(u[p] for p in others if p not in chosen)
            parities = [sdeg[i] % 2 for i in u]
            ext_sign = reorder_sign(parities, [p for p in others if p not in chosen] + list(chosen) + [jpos])
            cross = sum(sdeg[u[p]] for p in others if p not in chosen)
            sign = ext_sign * (-1 if (pq and cross % 2) else 1)
            inner = qp.value(sub + (u[jpos],))
            if vec_is_zero(inner):
                continue
            for m, c in enumerate(inner):
                if c != 0:
                    outer = q.value(rest + (m, y))
                    if not vec_is_zero(outer):
                        acc = vec_add(acc, vec_scale(sign * c, outer))
    return acc


# ---------------------------------------------------------------------------
# the dictionary between maps and forms
# ---------------------------------------------------------------------------

def omega_of(q: MultiMap, b: BilinearForm, flavor: str = "tensor"):
    """Form associated with a map: pair the output with one more argument via B.

    tensor/symmetric/vsp flavors give a MultiForm of arity k+1; the prelie
    flavor gives a BiSymForm with the two-slot symmetrized pairing.
    """
    if b.space != q.space:
        raise ValueError("bilinear form lives on a different space")
    if flavor == "prelie":
        return _omega_prelie(q, b)
    space = q.space
    sdeg = space.shifted_degrees()
    coeffs: dict[tuple, Fraction] = {}
    for t, vec in q.coeffs.items():
        deg_v = q.degree + sum(sdeg[i] for i in t)
        sign = 1 if deg_v % 2 == 0 else -1
        for j in range(space.dim):
            val = ZERO
            for m, c in enumerate(vec):
                if c != 0 and b.matrix[m][j] != 0:
                    val += c * b.matrix[m][j]
            if val != 0:
                coeffs[t + (j,)] = coeffs.get(t + (j,), ZERO) + sign * val
    k = q.arity
    return MultiForm(space, k + 1, coeffs, 2 * k - q.degree)


def _omega_prelie(q: MultiMap, b: BilinearForm) -> BiSymForm:
    space = q.space
    sdeg = space.shifted_degrees()
    k = q.arity - 1
    xwords = sorted(w for w in {graded_sym_canonical(t[:-1], sdeg)[0] for t in q.coeffs}
                    if w is not None)
    coeffs = {}
    for X in xwords:
        for a in range(space.dim):
            for c in range(a + 1, space.dim):
                val = _pair_B(q, b, X, a, c) - _pair_B(q, b, X, c, a)
                if val != 0:
                    coeffs[(X, (a, c))] = val
    return BiSymForm(space, k, coeffs, 2 * (k + 1) - q.degree)


def _pair_B(q: MultiMap, b: BilinearForm, X, y1, y2) -> Fraction:
    """B(Q(X (x) y1), e_y2)."""
    vec = q.value(X + (y1,))
    if vec_is_zero(vec):
        return ZERO
    sdeg = q.space.shifted_degrees()
    deg_v = q.degree + sum(sdeg[i] for i in X) + sdeg[y1]
    sign = 1 if deg_v % 2 == 0 else -1
    total = ZERO
    for m, c in enumerate(vec):
        if c != 0 and b.matrix[m][y2] != 0:
            total += c * b.matrix[m][y2]
    return sign * total


def map_of(form, b: BilinearForm, flavor: str = "tensor") -> MultiMap:
    """Inverse of omega_of.

    For a cyclic MultiForm returns the unique map Q with
    B(Q(x_1..x_k), x_{k+1}) equal to the form; non-cyclic forms are
    rejected.  For a BiSymForm returns the unique B-quadratic pre-Lie map.
    """
    if isinstance(form, BiSymForm) or flavor == "prelie":
        return _map_of_prelie(form, b)
    if not is_cyclic(form):
        raise ValueError("map_of requires a cyclic form")
    space = form.space
    if form.arity < 1:
        raise ValueError("map_of requires arity >= 1")
    duals = dual_pairs(b)
    k = form.arity - 1
    degree = 2 * k - form.degree
    grouped: dict[tuple, dict[int, Fraction]] = {}
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
        sign = 1 if (dw - 1) % 2 == 0 else -1
        coeffs[t] = vec_scale(sign, w)
    if k == 0:
        raise ValueError("arity-1 forms correspond to constants, not maps")
    return MultiMap(space, k, coeffs, degree)


def _map_of_prelie(phi: BiSymForm, b: BilinearForm) -> MultiMap:
    space = phi.space
    duals = dual_pairs(b)
    k = phi.x_arity
    degree = 2 * (k + 1) - phi.degree
    canonical: dict[tuple, Vec] = {}
    xwords = sorted({x for x, _ in phi.coeffs})
    ys = sorted({y for _, p in phi.coeffs for y in p} | set(range(space.dim)))
    for X in xwords:
        for a in ys:
            w = space.zero_vector()
            for j, dual in duals:
                val = phi.value(X, (a, j))
                if val != 0:
                    w = vec_add(w, vec_scale(val / 2, dual))
            if vec_is_zero(w):
                continue
            dw = space.vector_degree(w)
            sign = 1 if (dw - 1) % 2 == 0 else -1
            canonical[X + (a,)] = vec_scale(sign, w)
    spread = _spread_orderings(space, k, canonical)
    return MultiMap(space, k + 1, spread, degree)


def is_b_quadratic(q: MultiMap, b: BilinearForm, flavor: str = "tensor") -> bool:
    """Whether the associated form has the flavor's symmetry.

    tensor/symmetric/vsp: the form omega_of(Q) is cyclic.  prelie: the
    pairing is symmetric in the two trailing slots (with the Koszul sign).
    """
    if flavor == "prelie":
        for t in q.coeffs:
            X, y1 = t[:-1], t[-1]
            for y2 in range(q.space.dim):
                if _pair_B(q, b, X, y1, y2) != -_pair_B(q, b, X, y2, y1):
                    return False
        return True
    return is_cyclic(omega_of(q, b, flavor))


# ---------------------------------------------------------------------------
# Taylor coderivations and the structure equation
# ---------------------------------------------------------------------------

FLAVORS = ("tensor", "symmetric", "vsp", "prelie")


def flavor_bracket(flavor: str):
    if flavor in ("tensor", "vsp"):
        return bracket_tensor
    if flavor == "symmetric":
        return bracket_sym
    if flavor == "prelie":
        return prelie_bracket
    raise ValueError("unknown flavor %r" % flavor)


@dataclass(frozen=True)
class TaylorCoderivation:
    """Finite Taylor series of a coderivation in one of the four flavors."""

    flavor: str
    components: tuple[MultiMap, ...]

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError("unknown flavor %r" % self.flavor)
        arities = [q.arity for q in self.components]
        if len(set(arities)) != len(arities):
            raise ValueError("one component per arity")
        for q in self.components:
            if self.flavor == "symmetric" and not is_symmetric_map(q):
                raise ValueError("symmetric flavor requires symmetric components")
            if self.flavor == "vsp" and not is_vsp_map(q):
                raise ValueError("vsp flavor requires shuffle-vanishing components")
            if self.flavor == "prelie" and not is_symmetric_map(q, q.arity - 1):
                raise ValueError("prelie flavor requires components symmetric in leading slots")

    @property
    def max_arity(self) -> int:
        return max(q.arity for q in self.components)

    @property
    def space(self) -> GradedSpace:
        return self.components[0].space


@dataclass(frozen=True)
class StructureReport:
    ok: bool
    component_ok: tuple[tuple[int, bool], ...]
    witness: tuple | None

    def summary(self) -> str:
        if self.ok:
            return "structure equation holds: [Q,Q] = 0"
        return "structure equation FAILS, first nonzero coefficient at %s" % (self.witness,)


def check_structure_equation(t: TaylorCoderivation) -> StructureReport:
    """Compute [T,T] arity by arity and report the first nonzero coefficient."""
    for q in t.components:
        if q.degree != 1:
            raise ValueError("structure equations require degree-1 coderivations")
    bracket = flavor_bracket(t.flavor)
    by_arity: dict[int, MultiMap] = {}
    for qa in t.components:
        for qb in t.components:
            res = bracket(qa, qb)
            if res.arity in by_arity:
                by_arity[res.arity] = by_arity[res.arity] + res
            else:
                by_arity[res.arity] = res
    component_ok = []
    witness = None
    ok = True
    for arity in sorted(by_arity):
        good = by_arity[arity].is_zero()
        component_ok.append((arity, good))
        if not good and witness is None:
            key = min(by_arity[arity].coeffs)
            witness = (arity, key, by_arity[arity].coeffs[key])
            ok = False
    return StructureReport(ok, tuple(component_ok), witness)
