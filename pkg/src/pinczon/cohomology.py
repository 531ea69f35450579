"""Coboundary operators, cochain bases, exact cohomology dimensions.

Five theories are implemented over algebras whose spaces are concentrated
in degree 0:

* hochschild -- primary definition through the coderivation bracket on the
  semidirect product V x M, unshifted and restricted; the classical
  alternating-sum formula is the independent cross-check.
* harrison   -- the Hochschild operator restricted to cochains whose
  shifted companion vanishes on shuffle products.
* chevalley  -- primary definition through the symmetric-flavor bracket of
  the lifted cochain with the structure map on the double, un-lifted;
  cross-checked against the classical formula.
* prelie     -- the explicit four-sum operator on wedge-shaped cochains;
  cross-checked against the coderivation bracket on the semidirect product.
* pinczon    -- the bracket with the structure form, on cyclic or
  bi-symmetric forms, graded by arity.

Ranks, kernels and coboundary solves all go through the exact sparse
eliminator; certificates of insolvability are returned as exact
functionals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product

from pinczon import linalg
from pinczon.graded import ONE, ZERO, BilinearForm, GradedSpace, Vec, vec_add, vec_is_zero, vec_scale
from pinczon.forms import (
    BiSymForm,
    MultiForm,
    bisym_basis_keys,
    bisym_bracket,
    cyclic_form_basis,
    cyclic_sym,
    is_cyclic,
    is_vsp,
    pinczon_bracket,
    shuffle_perms,
    symmetric_form_basis,
)
from pinczon.coderiv import (
    MultiMap,
    act_perm_map,
    bracket_sym,
    bracket_tensor,
    is_vsp_map,
    omega_of,
    prelie_bracket,
    shift_map,
    unshift_map,
)
from pinczon.structures import (
    AlgebraStructure,
    Bimodule,
    CheckReport,
    adjoint_module,
    double_product,
    lift_cochain,
    semidirect_product,
    verify_identity,
)

THEORIES = ("hochschild", "harrison", "chevalley", "prelie", "pinczon")

THEORY_KINDS = {
    "hochschild": ("associative", "commutative"),
    "harrison": ("commutative",),
    "chevalley": ("lie",),
    "prelie": ("prelie",),
}


def _require_degree_zero(space: GradedSpace):
    if any(d != 0 for d in space.degrees):
        raise ValueError("cochain theories are implemented for spaces concentrated in degree 0")


class Cochain:
    """A k-cochain of one of the four map-valued theories.

    hochschild / harrison: data maps k-tuples of algebra indices to module
    vectors.  chevalley: keys are strictly increasing k-tuples (skew
    storage).  prelie: keys are (strictly increasing k-tuple, extra index),
    skew in the leading block.  For k = 0 the single key is ().
    """

    def __init__(self, theory: str, k: int, algebra: AlgebraStructure, module: Bimodule, data):
        if theory not in ("hochschild", "harrison", "chevalley", "prelie"):
            raise ValueError("unknown cochain theory %r" % theory)
        _require_degree_zero(algebra.space)
        self.theory = theory
        self.k = k
        self.algebra = algebra
        self.module = module
        clean = {}
        for key, vec in data.items():
            key = tuple(key)
            vec = tuple(Fraction(c) for c in vec)
            if vec_is_zero(vec):
                continue
            if theory in ("chevalley",) and list(key) != sorted(set(key)):
                raise ValueError("chevalley cochains are stored on strictly increasing keys")
            if theory == "prelie" and list(key[:-1]) != sorted(set(key[:-1])):
                raise ValueError("prelie cochains are stored on strictly increasing leading keys")
            clean[key] = vec
        self.data = clean

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.theory, self.k, self.data) == (other.theory, other.k, other.data)

    def value(self, key) -> Vec:
        """Value on an arbitrary index tuple, expanding skew storage."""
        key = tuple(key)
        zero = self.module.space.zero_vector()
        if self.theory in ("hochschild", "harrison"):
            return self.data.get(key, zero)
        if self.theory == "chevalley":
            canon, sign = _plain_anti(key)
            if canon is None:
                return zero
            vec = self.data.get(canon, zero)
            return vec_scale(sign, vec) if sign != 1 else vec
        canon, sign = _plain_anti(key[:-1])
        if canon is None:
            return zero
        vec = self.data.get(canon + (key[-1],), zero)
        return vec_scale(sign, vec) if sign != 1 else vec

    def value_vecs(self, args) -> Vec:
        """Multilinear evaluation on a list of algebra vectors."""
        out = self.module.space.zero_vector()
        for combo in product(*[[(i, c) for i, c in enumerate(v) if c != 0] for v in args]):
            key = tuple(i for i, _ in combo)
            weight = ONE
            for _, c in combo:
                weight *= c
            val = self.value(key)
            if not vec_is_zero(val):
                out = vec_add(out, vec_scale(weight, val))
        return out


def _plain_anti(key):
    key = tuple(key)
    if len(set(key)) != len(key):
        return None, 0
    order = sorted(range(len(key)), key=lambda p: key[p])
    inv = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
    return tuple(key[p] for p in order), (-1 if inv % 2 else 1)


# ---------------------------------------------------------------------------
# cochain bases
# ---------------------------------------------------------------------------

def cochain_basis(theory: str, k: int, algebra: AlgebraStructure, module: Bimodule) -> list[Cochain]:
    """Deterministic basis of the theory's k-cochains."""
    _require_degree_zero(algebra.space)
    n = algebra.space.dim
    m = module.space.dim
    basis = []
    if theory in ("hochschild",):
        for key in product(range(n), repeat=k):
            for p in range(m):
                basis.append(Cochain(theory, k, algebra, module,
                                     {key: module.space.basis_vector(p)}))
        return basis
    if theory == "harrison":
        return _harrison_basis(k, algebra, module)
    if theory == "chevalley":
        for key in combinations(range(n), k):
            for p in range(m):
                basis.append(Cochain(theory, k, algebra, module,
                                     {key: module.space.basis_vector(p)}))
        return basis
    if theory == "prelie":
        for key in combinations(range(n), k - 1):
            for y in range(n):
                for p in range(m):
                    basis.append(Cochain(theory, k, algebra, module,
                                         {key + (y,): module.space.basis_vector(p)}))
        return basis
    raise ValueError("unknown theory %r" % theory)


def _harrison_basis(k: int, algebra: AlgebraStructure, module: Bimodule) -> list[Cochain]:
    """Kernel of the shuffle symmetrizations applied to the shifted companions."""
    if k < 2:
        return cochain_basis("hochschild", k, algebra, module)
    n = algebra.space.dim
    m = module.space.dim
    keys = list(product(range(n), repeat=k))
    key_pos = {key: i for i, key in enumerate(keys)}
    nvar = len(keys) * m
    wspace = semidirect_product(algebra, module).space
    nv = algebra.space.dim
    rows = []
    for var, (key0, comp) in enumerate((key, p) for key in keys for p in range(m)):
        unit = Cochain("hochschild", k, algebra, module,
                       {key0: module.space.basis_vector(comp)})
        shifted = shift_map(wspace, k, _extend_cochain(unit))
        for p in range(1, k):
            total = None
            for sigma in shuffle_perms(p, k - p):
                acted = act_perm_map(shifted, sigma)
                total = acted if total is None else total + acted
            for key, vec in total.coeffs.items():
                for outp, val in enumerate(vec):
                    if val != 0:
                        rows.append((p, key, outp, var, val))
    row_index = {}
    entries = []
    for p, key, outp, var, val in rows:
        rid = row_index.setdefault((p, key, outp), len(row_index))
        entries.append((rid, var, val))
    matrix = linalg.SparseMatrix.from_entries(len(row_index), nvar, entries)
    basis = []
    for vec in linalg.kernel_basis(matrix):
        data = {}
        for i, key in enumerate(keys):
            out = [vec[i * m + p] for p in range(m)]
            if any(c != 0 for c in out):
                data[key] = tuple(out)
        basis.append(Cochain("harrison", k, algebra, module, data))
    return basis


def is_vsp_cochain(c: Cochain) -> bool:
    """Whether the shifted companion of the cochain vanishes on shuffles."""
    if c.k < 2:
        return True
    shifted = shift_map(_semidirect_for(c).space, c.k, _extend_cochain(c))
    return is_vsp_map(shifted)


# ---------------------------------------------------------------------------
# the coboundary operators
# ---------------------------------------------------------------------------

def _semidirect_for(c: Cochain) -> AlgebraStructure:
    return semidirect_product(c.algebra, c.module)


def _extend_cochain(c: Cochain) -> dict:
    """Extension of c to the semidirect product: V-block inputs, M-block output."""
    nv = c.algebra.space.dim
    nm = c.module.space.dim
    out = {}
    for key in product(range(nv), repeat=c.k):
        vec = c.value(key)
        if vec_is_zero(vec):
            continue
        out[key] = (ZERO,) * nv + tuple(vec)
    return out


def _restrict_to_module(dmap: dict, nv: int, nm: int) -> dict:
    """Keys over the V block, outputs projected to the M block."""
    out = {}
    for key, vec in dmap.items():
        if any(i >= nv for i in key):
            continue
        mpart = tuple(vec[nv:nv + nm])
        if any(c != 0 for c in mpart):
            out[key] = mpart
    return out


def d_hochschild(c: Cochain) -> Cochain:
    """Hochschild coboundary: the coderivation bracket on the semidirect
    product, unshifted and restricted."""
    if c.theory not in ("hochschild", "harrison"):
        raise ValueError("not a Hochschild-type cochain")
    if c.algebra.kind not in ("associative", "commutative"):
        raise ValueError("Hochschild theory needs an associative algebra")
    out = _d_hochschild_data(c)
    return Cochain("hochschild", c.k + 1, c.algebra, c.module, out)


def _d_hochschild_data(c: Cochain) -> dict:
    w = _semidirect_for(c)
    nv = c.algebra.space.dim
    nm = c.module.space.dim
    if c.k == 0:
        # d m (x) = x.m - m.x
        mvec = c.data.get((), c.module.space.zero_vector())
        out = {}
        for i in range(nv):
            x = c.algebra.space.basis_vector(i)
            val = vec_add(c.module.act_left_vec(x, mvec),
                          vec_scale(-1, c.module.act_right_vec(mvec, x)))
            if not vec_is_zero(val):
                out[(i,)] = val
        return out
    qw = w.shifted_map()
    cbar = shift_map(w.space, c.k, _extend_cochain(c))
    bracket = bracket_tensor(qw, cbar)
    unshifted = unshift_map(bracket)
    return _restrict_to_module(unshifted, nv, nm)


def d_hochschild_classical(c: Cochain) -> Cochain:
    """The alternating-sum formula; independent of the coderivation path."""
    nv = c.algebra.space.dim
    out = {}
    a = c.algebra
    m = c.module
    k = c.k
    for key in product(range(nv), repeat=k + 1):
        total = m.space.zero_vector()
        x0 = a.space.basis_vector(key[0])
        total = vec_add(total, m.act_left_vec(x0, c.value(key[1:])))
        for i in range(1, k + 1):
            inner = a.mul(key[i - 1], key[i])
            args = [a.space.basis_vector(t) for t in key[: i - 1]] + [inner] + \
                   [a.space.basis_vector(t) for t in key[i + 1:]]
            term = c.value_vecs(args)
            total = vec_add(total, vec_scale((-1) ** i, term))
        last = m.act_right_vec(c.value(key[:-1]), a.space.basis_vector(key[-1]))
        total = vec_add(total, vec_scale((-1) ** (k + 1), last))
        if not vec_is_zero(total):
            out[key] = total
    return Cochain("hochschild", k + 1, c.algebra, c.module, out)


def d_harrison(c: Cochain) -> Cochain:
    """The Hochschild operator on shuffle-vanishing cochains over a
    commutative algebra; the output is again shuffle-vanishing."""
    if c.algebra.kind != "commutative":
        raise ValueError("Harrison theory needs a commutative algebra")
    if not is_vsp_cochain(c):
        raise ValueError("cochain does not vanish on shuffle products")
    out = d_hochschild(Cochain("harrison", c.k, c.algebra, c.module, c.data))
    result = Cochain("harrison", c.k + 1, c.algebra, c.module, out.data)
    if not is_vsp_cochain(result):
        raise AssertionError("Harrison coboundary left the shuffle-vanishing space")
    return result


_DOUBLE_CACHE: dict = {}


def double_for(algebra: AlgebraStructure, module: Bimodule) -> AlgebraStructure:
    """The double of the pair, cached per live object pair."""
    key = (id(algebra), id(module))
    hit = _DOUBLE_CACHE.get(key)
    if hit is not None and hit[0] is algebra and hit[1] is module:
        return hit[2]
    tilde = double_product(algebra, module)
    _DOUBLE_CACHE[key] = (algebra, module, tilde)
    return tilde


def d_chevalley(c: Cochain, tilde: AlgebraStructure | None = None) -> Cochain:
    """Chevalley coboundary: symmetric-flavor bracket with the structure map
    on the double, un-lifted and unshifted."""
    if c.theory != "chevalley":
        raise ValueError("not a chevalley cochain")
    if c.algebra.kind != "lie":
        raise ValueError("Chevalley theory needs a Lie algebra")
    nv = c.algebra.space.dim
    nm = c.module.space.dim
    if c.k == 0:
        mvec = c.data.get((), c.module.space.zero_vector())
        out = {}
        for i in range(nv):
            val = c.module.act_left_vec(c.algebra.space.basis_vector(i), mvec)
            if not vec_is_zero(val):
                out[(i,)] = val
        return Cochain("chevalley", 1, c.algebra, c.module, out)
    if tilde is None:
        tilde = double_for(c.algebra, c.module)
    full = {}
    for key in product(range(nv), repeat=c.k):
        vec = c.value(key)
        if not vec_is_zero(vec):
            full[key] = vec
    lifted = lift_cochain(full, c.k, c.algebra, c.module, tilde)
    qt = tilde.shifted_map()
    bracket = bracket_sym(qt, lifted)
    unshifted = unshift_map(bracket)
    data = _restrict_to_module(unshifted, nv, nm)
    out = {}
    for key, vec in data.items():
        canon, sign = _plain_anti(key)
        if canon is None or canon in out:
            continue
        out[canon] = vec_scale(sign, vec)
    return Cochain("chevalley", c.k + 1, c.algebra, c.module, out)


def d_chevalley_classical(c: Cochain) -> Cochain:
    nv = c.algebra.space.dim
    a, m, k = c.algebra, c.module, c.k
    out = {}
    for key in combinations(range(nv), k + 1):
        total = m.space.zero_vector()
        for i in range(k + 1):
            rest = key[:i] + key[i + 1:]
            term = m.act_left_vec(a.space.basis_vector(key[i]), c.value(rest))
            total = vec_add(total, vec_scale((-1) ** i, term))
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                inner = a.mul(key[i], key[j])
                rest = tuple(t for p, t in enumerate(key) if p != i and p != j)
                args = [inner] + [a.space.basis_vector(t) for t in rest]
                term = c.value_vecs(args)
                total = vec_add(total, vec_scale((-1) ** (i + j), term))
        if not vec_is_zero(total):
            out[key] = total
    return Cochain("chevalley", k + 1, c.algebra, c.module, out)


def d_prelie(c: Cochain) -> Cochain:
    """The explicit four-sum operator on wedge-shaped pre-Lie cochains."""
    if c.theory != "prelie":
        raise ValueError("not a prelie cochain")
    if c.algebra.kind != "prelie":
        raise ValueError("pre-Lie theory needs a pre-Lie algebra")
    nv = c.algebra.space.dim
    a, m = c.algebra, c.module
    k = c.k - 1  # wedge slots of the input
    out = {}
    for wedge in combinations(range(nv), k + 1):
        for y in range(nv):
            total = m.space.zero_vector()
            yv = a.space.basis_vector(y)
            for i in range(k + 1):
                rest = wedge[:i] + wedge[i + 1:]
                sign = (-1) ** i
                xi = a.space.basis_vector(wedge[i])
                # c(rest (x) x_i) * y
                term1 = m.act_right_vec(c.value(rest + (wedge[i],)), yv)
                total = vec_add(total, vec_scale(sign, term1))
                # - c(rest (x) q(x_i, y))
                term2 = c.value_vecs([a.space.basis_vector(t) for t in rest] + [a.mul(wedge[i], y)])
                total = vec_add(total, vec_scale(-sign, term2))
                # + x_i . c(rest (x) y)
                term4 = m.act_left_vec(xi, c.value(rest + (y,)))
                total = vec_add(total, vec_scale(sign, term4))
            for i in range(k + 1):
                for j in range(i + 1, k + 1):
                    rest = tuple(t for p, t in enumerate(wedge) if p != i and p != j)
                    lie = vec_add(a.mul(wedge[i], wedge[j]),
                                  vec_scale(-1, a.mul(wedge[j], wedge[i])))
                    args = [lie] + [a.space.basis_vector(t) for t in rest] + [yv]
                    term3 = c.value_vecs(args)
                    total = vec_add(total, vec_scale((-1) ** (i + j), term3))
            if not vec_is_zero(total):
                out[wedge + (y,)] = total
    return Cochain("prelie", c.k + 1, c.algebra, c.module, out)


def d_prelie_coderivation(c: Cochain) -> Cochain:
    """Cross-check route: the pre-Lie coderivation bracket on the semidirect
    product, restricted and unshifted."""
    w = _semidirect_for(c)
    nv = c.algebra.space.dim
    nm = c.module.space.dim
    qw = w.shifted_map()
    cbar = shift_map(w.space, c.k, _extend_cochain(c))
    bracket = prelie_bracket(qw, cbar)
    unshifted = unshift_map(bracket)
    data = _restrict_to_module(unshifted, nv, nm)
    out = {}
    for key, vec in data.items():
        canon, sign = _plain_anti(key[:-1])
        if canon is None:
            continue
        full = canon + (key[-1],)
        if full in out:
            continue
        out[full] = vec_scale(sign, vec)
    return Cochain("prelie", c.k + 1, c.algebra, c.module, out)


def d_pinczon(lam, omega, b: BilinearForm):
    """The bracket with a structure form; requires {Omega,Omega} = 0."""
    if isinstance(omega, BiSymForm):
        if not bisym_bracket(omega, omega, b).is_zero():
            raise ValueError("structure equation {Omega,Omega} = 0 fails")
        return bisym_bracket(omega, lam, b)
    if not pinczon_bracket(omega, omega, b).is_zero():
        raise ValueError("structure equation {Omega,Omega} = 0 fails")
    return pinczon_bracket(omega, lam, b)


def coboundary(theory: str, c: Cochain) -> Cochain:
    if theory in ("hochschild",):
        return d_hochschild(c)
    if theory == "harrison":
        return d_harrison(c)
    if theory == "chevalley":
        return d_chevalley(c)
    if theory == "prelie":
        return d_prelie(c)
    raise ValueError("unknown theory %r" % theory)


# ---------------------------------------------------------------------------
# dimensions, solving, certificates
# ---------------------------------------------------------------------------

def _coordinates(c: Cochain, basis_index: dict) -> dict:
    """Coordinates of a cochain in the canonical (key, component) indexing."""
    out = {}
    for key, vec in c.data.items():
        for p, val in enumerate(vec):
            if val != 0:
                out[basis_index[(key, p)]] = val
    return out


def _basis_indexing(theory: str, k: int, algebra: AlgebraStructure, module: Bimodule):
    n = algebra.space.dim
    m = module.space.dim
    index = {}
    if theory in ("hochschild", "harrison"):
        keys = list(product(range(n), repeat=k))
    elif theory == "chevalley":
        keys = list(combinations(range(n), k))
    else:
        keys = [key + (y,) for key in combinations(range(n), k - 1) for y in range(n)]
    for key in keys:
        for p in range(m):
            index[(key, p)] = len(index)
    return index


def coboundary_matrix(theory: str, k: int, algebra: AlgebraStructure, module: Bimodule,
                      basis: list[Cochain] | None = None) -> linalg.SparseMatrix:
    """Matrix of d on the degree-k cochain basis (columns = source basis)."""
    if basis is None:
        basis = cochain_basis(theory, k, algebra, module)
    target_theory = "hochschild" if theory == "harrison" else theory
    target = _basis_indexing(target_theory, k + 1, algebra, module)
    columns = []
    for coch in basis:
        image = coboundary(theory, coch)
        columns.append(_coordinates(image, target))
    return linalg.SparseMatrix.from_columns(len(target), len(basis), columns)


@dataclass(frozen=True)
class CohomologyReport:
    theory: str
    rows: tuple  # (k, dim cochains, dim Z, dim B, dim H)
    d_squared_ok: bool

    def summary(self) -> str:
        lines = ["%s cohomology (d^2 = 0 %s)" %
                 (self.theory, "verified" if self.d_squared_ok else "FAILED")]
        lines.append("  k   dim C   dim Z   dim B   dim H")
        for k, dc, dz, db, dh in self.rows:
            lines.append("%3d %7d %7d %7d %7d" % (k, dc, dz, db, dh))
        return "\n".join(lines)

    def h(self, k: int) -> int:
        for row in self.rows:
            if row[0] == k:
                return row[4]
        raise KeyError(k)


def cohomology_dims(theory: str, algebra: AlgebraStructure, module: Bimodule,
                    k_range) -> CohomologyReport:
    """Exact Z/B/H dimensions per degree; d^2 = 0 is verified, not assumed."""
    ks = sorted(k_range)
    report = verify_identity(algebra)
    if not report.ok:
        raise ValueError("structure invalid: %s" % report.summary())
    lowest = 1 if theory == "prelie" else 0
    wanted = sorted(k for k in set(ks) | {k - 1 for k in ks} if k >= lowest)
    bases = {k: cochain_basis(theory, k, algebra, module) for k in wanted}
    matrices = {k: coboundary_matrix(theory, k, algebra, module, bases[k]) for k in wanted}
    d_sq_ok = True
    for k in wanted:
        for coch in bases[k]:
            if not coboundary(theory, coboundary(theory, coch)).is_zero():
                d_sq_ok = False
                break
        if not d_sq_ok:
            break
    rows = []
    ranks = {k: linalg.rank(matrices[k]) for k in matrices}
    for k in ks:
        if k not in bases:
            continue
        dim_c = len(bases[k])
        rank_k = ranks.get(k, 0)
        dim_z = dim_c - rank_k
        dim_b = ranks.get(k - 1, 0)
        rows.append((k, dim_c, dim_z, dim_b, dim_z - dim_b))
    return CohomologyReport(theory, tuple(rows), d_sq_ok)


@dataclass(frozen=True)
class CoboundarySolution:
    status: str  # "primitive" | "certificate" | "not_cocycle"
    primitive: Cochain | None = None
    certificate: tuple | None = None
    witness: tuple | None = None

    def summary(self) -> str:
        if self.status == "primitive":
            return "coboundary: primitive found"
        if self.status == "certificate":
            return "NOT a coboundary: exact annihilating functional certifies it"
        return "not a cocycle: d c != 0 at %s" % (self.witness,)


def solve_coboundary(theory: str, c: Cochain) -> CoboundarySolution:
    """Exact solve d x = c; on failure an exact left functional y with
    y(d x) = 0 for all x and y(c) = 1 certifies insolvability."""
    image = coboundary(theory, c)
    if not image.is_zero():
        witness = min(image.data)
        return CoboundarySolution("not_cocycle", witness=(witness, image.data[witness]))
    k = c.k
    algebra, module = c.algebra, c.module
    if theory == "prelie" and k <= 1:
        raise ValueError("no lower-degree prelie cochains to solve from")
    basis = cochain_basis(theory, k - 1, algebra, module)
    matrix = coboundary_matrix(theory, k - 1, algebra, module, basis)
    target_theory = "hochschild" if theory == "harrison" else theory
    index = _basis_indexing(target_theory, k, algebra, module)
    rhs = [ZERO] * len(index)
    for pos, val in _coordinates(c, index).items():
        rhs[pos] = val
    solution = linalg.solve(matrix, rhs)
    if solution is not None:
        data = {}
        for coeff, coch in zip(solution, basis):
            if coeff == 0:
                continue
            for key, vec in coch.data.items():
                cur = data.get(key, module.space.zero_vector())
                data[key] = vec_add(cur, vec_scale(coeff, vec))
        primitive = Cochain(c.theory, k - 1, algebra, module,
                            {key: vec for key, vec in data.items() if not vec_is_zero(vec)})
        return CoboundarySolution("primitive", primitive=primitive)
    certificate = linalg.insolvability_certificate(matrix, rhs)
    if certificate is None:
        raise AssertionError("solve failed but no certificate found")
    check = sum(certificate[i] * rhs[i] for i in range(len(rhs)))
    if check != 1:
        raise AssertionError("certificate does not pair to 1 with the cochain")
    return CoboundarySolution("certificate", certificate=certificate)


# ---------------------------------------------------------------------------
# dual numbers and order-1 deformations
# ---------------------------------------------------------------------------

class DualNumber:
    """a + t b with t^2 = 0, over exact rationals."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, other):
        other = _dual(other)
        return DualNumber(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _dual(other)
        return DualNumber(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _dual(other) - self

    def __mul__(self, other):
        other = _dual(other)
        return DualNumber(self.a * other.a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __neg__(self):
        return DualNumber(-self.a, -self.b)

    def __eq__(self, other):
        other = _dual(other)
        return self.a == other.a and self.b == other.b

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __repr__(self):
        return "(%s + %s t)" % (self.a, self.b)


def _dual(x) -> DualNumber:
    return x if isinstance(x, DualNumber) else DualNumber(x)


def _dual_identity_witness(kind: str, n: int, mul):
    """Kind identity over dual numbers on basis triples; None when it holds."""
    zero = DualNumber(0)

    def mulvec(u, v):
        out = [zero] * n
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for j, bb in enumerate(v):
                if bb.is_zero():
                    continue
                prod_ij = mul(i, j)
                coeff = a * bb
                out = [o + coeff * p for o, p in zip(out, prod_ij)]
        return out

    def basis(i):
        return [DualNumber(1) if p == i else zero for p in range(n)]

    if kind in ("associative", "commutative"):
        if kind == "commutative":
            for i in range(n):
                for j in range(n):
                    if any(not (x - y).is_zero() for x, y in zip(mul(i, j), mul(j, i))):
                        return ("commutativity", i, j)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = mulvec(mul(i, j), basis(k))
                    right = mulvec(basis(i), mul(j, k))
                    if any(not (x - y).is_zero() for x, y in zip(left, right)):
                        return ("associativity", i, j, k)
        return None
    if kind == "lie":
        for i in range(n):
            for j in range(n):
                if any(not (x + y).is_zero() for x, y in zip(mul(i, j), mul(j, i))):
                    return ("antisymmetry", i, j)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = mulvec(basis(i), mul(j, k))
                    rhs = [x + y for x, y in zip(mulvec(mul(i, j), basis(k)),
                                                 mulvec(basis(j), mul(i, k)))]
                    if any(not (x - y).is_zero() for x, y in zip(lhs, rhs)):
                        return ("jacobi", i, j, k)
        return None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a1 = [x - y for x, y in zip(mulvec(basis(i), mul(j, k)),
                                            mulvec(mul(i, j), basis(k)))]
                a2 = [x - y for x, y in zip(mulvec(basis(j), mul(i, k)),
                                            mulvec(mul(j, i), basis(k)))]
                if any(not (x - y).is_zero() for x, y in zip(a1, a2)):
                    return ("prelie identity", i, j, k)
    return None


@dataclass(frozen=True)
class DeformationVerdict:
    verdict: str  # "not order-1 structure" | "trivial deformation" | "true deformation at order 1"
    witness: tuple | None = None
    solution: CoboundarySolution | None = None

    def summary(self) -> str:
        if self.witness is not None:
            return "%s (failing tuple %s)" % (self.verdict, self.witness)
        return self.verdict


KIND_THEORY = {
    "associative": "hochschild",
    "commutative": "harrison",
    "lie": "chevalley",
    "prelie": "prelie",
}


def deformation_check(algebra: AlgebraStructure, c: Cochain) -> DeformationVerdict:
    """Verdict on q + t c over dual numbers.

    "order-1 structure" means the kind's identity holds with t^2 = 0;
    it is a "true deformation at order 1" when additionally c is not a
    coboundary.
    """
    if c.k != 2:
        raise ValueError("order-1 deformations are driven by 2-cochains")
    n = algebra.space.dim

    def mul(i, j):
        base = algebra.mul(i, j)
        extra = c.value((i, j))
        return [DualNumber(base[p], extra[p]) for p in range(n)]

    witness = _dual_identity_witness(algebra.kind, n, mul)
    if witness is not None:
        return DeformationVerdict("not order-1 structure", witness=witness)
    theory = KIND_THEORY[algebra.kind]
    cocycle_check = coboundary(theory, c)
    if not cocycle_check.is_zero():
        raise AssertionError("identity holds over dual numbers but d c != 0")
    solution = solve_coboundary(theory, c)
    if solution.status == "primitive":
        return DeformationVerdict("trivial deformation", solution=solution)
    return DeformationVerdict("true deformation at order 1", solution=solution)


# ---------------------------------------------------------------------------
# Pinczon cohomology of forms, graded by arity
# ---------------------------------------------------------------------------

def _form_basis_coordinates(basis, form):
    """Coordinates of a form in a basis of orbit-sum forms (one rep each)."""
    reps = []
    for elt in basis:
        rep = min(elt.coeffs)
        reps.append((rep, elt.coeffs[rep]))
    coords = {}
    remaining = dict(form.coeffs)
    for pos, (rep, norm) in enumerate(reps):
        val = remaining.get(rep, ZERO)
        if val != 0:
            lam = val / norm
            coords[pos] = lam
            for key, coeff in basis[pos].coeffs.items():
                new = remaining.get(key, ZERO) - lam * coeff
                if new == 0:
                    remaining.pop(key, None)
                else:
                    remaining[key] = new
    if remaining:
        raise ValueError("form is not in the span of the basis")
    return coords


def pinczon_dims(algebra: AlgebraStructure, arity_range) -> CohomologyReport:
    """Arity-graded cohomology of d_P = {Omega, .} for a quadratic structure.

    associative/commutative kinds use cyclic forms, the lie kind symmetric
    forms with the quotient bracket, the prelie kind bi-symmetric forms.
    """
    if algebra.form is None:
        raise ValueError("pinczon theory needs the structure's bilinear form")
    b = algebra.form
    space = algebra.space
    q = algebra.shifted_map()
    ks = sorted(arity_range)
    if algebra.kind == "prelie":
        omega = omega_of(q, b, flavor="prelie")
        if not bisym_bracket(omega, omega, b).is_zero():
            raise ValueError("structure equation fails")

        def basis_fn(a):
            return [BiSymForm(space, a, {key: ONE}) for key in bisym_basis_keys(space, a)]

        def dP(lam):
            return bisym_bracket(omega, lam, b)

        def coords(basis, form):
            index = {min(elt.coeffs): pos for pos, elt in enumerate(basis)}
            out = {}
            for key, val in form.coeffs.items():
                out[index[key]] = val
            return out
    elif algebra.kind == "lie":
        from pinczon.forms import symmetrize as _symmetrize, sym_bracket as _sym_bracket
        omega = _symmetrize(omega_of(q, b))
        if not _sym_bracket(omega, omega, b).is_zero():
            raise ValueError("structure equation fails")

        def basis_fn(a):
            return symmetric_form_basis(space, a)

        def dP(lam):
            return _sym_bracket(omega, lam, b)

        coords = _form_basis_coordinates
    else:
        omega = omega_of(q, b)
        if not pinczon_bracket(omega, omega, b).is_zero():
            raise ValueError("structure equation fails")

        def basis_fn(a):
            return cyclic_form_basis(space, a)

        def dP(lam):
            return pinczon_bracket(omega, lam, b)

        coords = _form_basis_coordinates

    wanted = sorted(k for k in set(ks) | {k - 1 for k in ks} if k >= 1)
    bases = {k: basis_fn(k) for k in set(wanted) | {max(wanted) + 1}}
    matrices = {}
    d_sq_ok = True
    for k in wanted:
        columns = []
        for elt in bases[k]:
            image = dP(elt)
            if not dP(image).is_zero():
                d_sq_ok = False
            columns.append(coords(bases[k + 1], image))
        matrices[k] = linalg.SparseMatrix.from_columns(
            len(bases[k + 1]), len(bases[k]), columns)
    ranks = {k: linalg.rank(matrices[k]) for k in matrices}
    rows = []
    for k in ks:
        if k not in bases:
            continue
        dim_c = len(bases[k])
        dim_z = dim_c - ranks.get(k, 0)
        dim_b = ranks.get(k - 1, 0)
        rows.append((k, dim_c, dim_z, dim_b, dim_z - dim_b))
    return CohomologyReport("pinczon", tuple(rows), d_sq_ok)
