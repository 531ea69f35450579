"""Concrete algebra structures, bimodules, semidirect and double products.

An ``AlgebraStructure`` holds degree-0 structure constants of one of four
kinds (associative, commutative, lie, prelie) over a graded space, with an
optional compatible bilinear form.  Identities and invariance are verified
on basis tuples with the graded signs; every identity verdict is
cross-checked against the structure equation of the shifted map.

The double of an algebra by a bimodule is built compositionally: W = V x M
with the semidirect product, W* with the kind's dual actions, and the
double is W x W* with the canonical hyperbolic pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from pinczon.graded import (
    ONE,
    ZERO,
    BilinearForm,
    GradedSpace,
    Vec,
    validate_form,
    vec_add,
    vec_is_zero,
    vec_scale,
)
from pinczon.forms import MultiForm, cyclic_sym, is_cyclic
from pinczon.coderiv import (
    MultiMap,
    TaylorCoderivation,
    check_structure_equation,
    is_b_quadratic,
    is_symmetric_map,
    map_of,
    omega_of,
    shift_map,
)
from pinczon import linalg

KINDS = ("associative", "commutative", "lie", "prelie")

KIND_FLAVOR = {
    "associative": "tensor",
    "commutative": "vsp",
    "lie": "symmetric",
    "prelie": "prelie",
}


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    title: str
    witness: tuple | None = None
    detail: str = ""

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = ""
        if not self.ok and self.witness is not None:
            tail = " witness=%s" % (self.witness,)
        if self.detail:
            tail += " [%s]" % self.detail
        return "%s: %s%s" % (status, self.title, tail)


class AlgebraStructure:
    """Algebra of one of the four kinds, given by structure constants.

    ``product`` maps basis index pairs to coefficient vectors; constants
    must be degree 0.  With validate=True (the default) the kind's identity
    is verified eagerly and a failure raises with a witness triple.
    """

    def __init__(self, space: GradedSpace, kind: str, product: dict, form: BilinearForm | None = None,
                 name: str = "", validate: bool = True):
        if kind not in KINDS:
            raise ValueError("unknown kind %r" % kind)
        self.space = space
        self.kind = kind
        self.name = name
        clean = {}
        for (i, j), vec in product.items():
            vec = tuple(Fraction(c) for c in vec)
            if len(vec) != space.dim:
                raise ValueError("product vector has wrong dimension")
            if vec_is_zero(vec):
                continue
            out_deg = space.vector_degree(vec)
            if out_deg is not None and out_deg != space.degrees[i] + space.degrees[j]:
                raise ValueError("structure constants are not degree 0 at (%d, %d)" % (i, j))
            clean[(i, j)] = vec
        self.product = clean
        if form is not None and form.space != space:
            raise ValueError("form lives on a different space")
        self.form = form
        if validate:
            report = verify_identity(self)
            if not report.ok:
                raise ValueError("invalid %s structure: %s" % (kind, report.summary()))

    def mul(self, i: int, j: int) -> Vec:
        return self.product.get((i, j), self.space.zero_vector())

    def mul_vec(self, u: Vec, v: Vec) -> Vec:
        out = self.space.zero_vector()
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                out = vec_add(out, vec_scale(a * b, self.mul(i, j)))
        return out

    def shifted_map(self) -> MultiMap:
        return shift_map(self.space, 2, self.product)

    def structure_coderivation(self) -> TaylorCoderivation:
        return TaylorCoderivation(KIND_FLAVOR[self.kind], (self.shifted_map(),))

    def __repr__(self):
        return "AlgebraStructure(%s, dim=%d%s)" % (self.kind, self.space.dim,
                                                   ", %s" % self.name if self.name else "")


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _identity_defect(a: AlgebraStructure):
    """First failing basis tuple of the kind's defining identity, or None."""
    n = a.space.dim
    deg = a.space.degrees
    mul, mulv = a.mul, a.mul_vec

    if a.kind in ("associative", "commutative"):
        if a.kind == "commutative":
            for i in range(n):
                for j in range(n):
                    if mul(i, j) != vec_scale(_sign(deg[i] * deg[j]), mul(j, i)):
                        return ("commutativity", i, j)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = mulv(mul(i, j), a.space.basis_vector(k))
                    right = mulv(a.space.basis_vector(i), mul(j, k))
                    if left != right:
                        return ("associativity", i, j, k)
        return None

    if a.kind == "lie":
        for i in range(n):
            for j in range(n):
                if mul(i, j) != vec_scale(-_sign(deg[i] * deg[j]), mul(j, i)):
                    return ("antisymmetry", i, j)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = mulv(a.space.basis_vector(i), mul(j, k))
                    rhs = vec_add(
                        mulv(mul(i, j), a.space.basis_vector(k)),
                        vec_scale(_sign(deg[i] * deg[j]),
                                  mulv(a.space.basis_vector(j), mul(i, k))),
                    )
                    if lhs != rhs:
                        return ("jacobi", i, j, k)
        return None

    # prelie: the associator is graded-symmetric in its first two arguments
    for i in range(n):
        for j in range(n):
            for k in range(n):
                def assoc(p, q, r):
                    return vec_add(
                        mulv(a.space.basis_vector(p), mul(q, r)),
                        vec_scale(-1, mulv(mul(p, q), a.space.basis_vector(r))),
                    )
                lhs = assoc(i, j, k)
                rhs = vec_scale(_sign(deg[i] * deg[j]), assoc(j, i, k))
                if lhs != rhs:
                    return ("prelie identity", i, j, k)
    return None


def verify_identity(a: AlgebraStructure) -> CheckReport:
    """Check the kind's identity on all basis tuples.

    The verdict is cross-checked against the structure equation of the
    shifted map in the kind's coderivation flavor; the two must agree.
    """
    witness = _identity_defect(a)
    direct_ok = witness is None
    try:
        coderiv_ok = check_structure_equation(a.structure_coderivation()).ok
    except ValueError:
        # flavor symmetry of the component already fails (e.g. a non-skew
        # bracket); that counts as a failed structure equation
        coderiv_ok = False
    if direct_ok != coderiv_ok:
        raise AssertionError("identity check and structure equation disagree")
    return CheckReport(direct_ok, "%s identity" % a.kind, witness)


def verify_invariance(a: AlgebraStructure, b: BilinearForm | None = None) -> CheckReport:
    """Kind-dispatched invariance of the bilinear form on all basis triples."""
    if b is None:
        b = a.form
    if b is None:
        raise ValueError("no bilinear form to check")
    n = a.space.dim
    deg = a.space.degrees
    for i in range(n):
        for j in range(n):
            for k in range(n):
                qij = a.mul(i, j)
                qjk = a.mul(j, k)
                left = sum(qij[m] * b.matrix[m][k] for m in range(n) if qij[m] != 0)
                if a.kind == "prelie":
                    qik = a.mul(i, k)
                    right = sum(qik[m] * b.matrix[j][m] for m in range(n) if qik[m] != 0)
                    if left + _sign(deg[i] * deg[j]) * right != 0:
                        return CheckReport(False, "prelie invariance", (i, j, k))
                else:
                    right = sum(qjk[m] * b.matrix[i][m] for m in range(n) if qjk[m] != 0)
                    if left != right:
                        return CheckReport(False, "invariance", (i, j, k))
    title = "prelie invariance" if a.kind == "prelie" else "invariance"
    return CheckReport(True, title)


class Bimodule:
    """Module data over an algebra; actions are validated at construction.

    ``left`` maps (algebra index, module index) to module vectors x . a;
    ``right`` maps (module index, algebra index) to a * x and is absent for
    the lie kind.
    """

    def __init__(self, base: AlgebraStructure, space: GradedSpace, left: dict,
                 right: dict | None = None, name: str = "", validate: bool = True):
        self.base = base
        self.space = space
        self.name = name
        self.left = {k: tuple(Fraction(c) for c in v) for k, v in left.items()
                     if not vec_is_zero(tuple(Fraction(c) for c in v))}
        if base.kind == "lie":
            if right is not None:
                raise ValueError("lie modules carry a single action")
            self.right = None
        else:
            right = right or {}
            self.right = {k: tuple(Fraction(c) for c in v) for k, v in right.items()
                          if not vec_is_zero(tuple(Fraction(c) for c in v))}
        if validate:
            report = verify_module_axioms(self)
            if not report.ok:
                raise ValueError("invalid module: %s" % report.summary())

    def act_left(self, i: int, aidx: int) -> Vec:
        return self.left.get((i, aidx), self.space.zero_vector())

    def act_right(self, aidx: int, i: int) -> Vec:
        if self.right is None:
            raise ValueError("no right action")
        return self.right.get((aidx, i), self.space.zero_vector())

    def act_left_vec(self, x: Vec, a: Vec) -> Vec:
        out = self.space.zero_vector()
        for i, c in enumerate(x):
            if c == 0:
                continue
            for j, d in enumerate(a):
                if d != 0:
                    out = vec_add(out, vec_scale(c * d, self.act_left(i, j)))
        return out

    def act_right_vec(self, a: Vec, x: Vec) -> Vec:
        out = self.space.zero_vector()
        for j, d in enumerate(a):
            if d == 0:
                continue
            for i, c in enumerate(x):
                if c != 0:
                    out = vec_add(out, vec_scale(c * d, self.act_right(j, i)))
        return out


def verify_module_axioms(m: Bimodule) -> CheckReport:
    """Kind-appropriate module and bimodule axioms on all basis tuples."""
    a = m.base
    nv = a.space.dim
    nm = m.space.dim
    vdeg = a.space.degrees
    mdeg = m.space.degrees
    basis = m.space.basis_vector

    if a.kind == "lie":
        for i in range(nv):
            for j in range(nv):
                for p in range(nm):
                    lhs = m.act_left_vec(a.mul(i, j), basis(p))
                    rhs = vec_add(
                        m.act_left_vec(a.space.basis_vector(i), m.act_left(j, p)),
                        vec_scale(-_sign(vdeg[i] * vdeg[j]),
                                  m.act_left_vec(a.space.basis_vector(j), m.act_left(i, p))),
                    )
                    if lhs != rhs:
                        return CheckReport(False, "lie module axiom", (i, j, p))
        return CheckReport(True, "lie module axiom")

    if a.kind == "prelie":
        for i in range(nv):
            for j in range(nv):
                for p in range(nm):
                    lhs = vec_add(m.act_left_vec(a.mul(i, j), basis(p)),
                                  vec_scale(-1, m.act_left_vec(a.space.basis_vector(i),
                                                               m.act_left(j, p))))
                    rhs = vec_add(m.act_left_vec(a.mul(j, i), basis(p)),
                                  vec_scale(-1, m.act_left_vec(a.space.basis_vector(j),
                                                               m.act_left(i, p))))
                    if lhs != vec_scale(_sign(vdeg[i] * vdeg[j]), rhs):
                        return CheckReport(False, "prelie left module axiom", (i, j, p))
        for p in range(nm):
            for i in range(nv):
                for j in range(nv):
                    lhs = vec_add(m.act_right_vec(m.act_right(p, i), a.space.basis_vector(j)),
                                  vec_scale(-1, m.act_right_vec(basis(p), a.mul(i, j))))
                    rhs = vec_add(m.act_right_vec(m.act_left(i, p), a.space.basis_vector(j)),
                                  vec_scale(-1, m.act_left_vec(a.space.basis_vector(i),
                                                               m.act_right(p, j))))
                    if lhs != vec_scale(_sign(vdeg[i] * mdeg[p]), rhs):
                        return CheckReport(False, "prelie bimodule axiom", (p, i, j))
        return CheckReport(True, "prelie bimodule axioms")

    # associative / commutative bimodule axioms
    for i in range(nv):
        for j in range(nv):
            for p in range(nm):
                if m.act_left_vec(a.mul(i, j), basis(p)) != \
                        m.act_left_vec(a.space.basis_vector(i), m.act_left(j, p)):
                    return CheckReport(False, "left module axiom", (i, j, p))
                if m.act_right_vec(m.act_right(p, i), a.space.basis_vector(j)) != \
                        m.act_right_vec(basis(p), a.mul(i, j)):
                    return CheckReport(False, "right module axiom", (p, i, j))
                if m.act_right_vec(m.act_left(i, p), a.space.basis_vector(j)) != \
                        m.act_left_vec(a.space.basis_vector(i), m.act_right(p, j)):
                    return CheckReport(False, "bimodule axiom", (i, p, j))
    if a.kind == "commutative":
        for i in range(nv):
            for p in range(nm):
                if m.act_left(i, p) != vec_scale(_sign(vdeg[i] * mdeg[p]), m.act_right(p, i)):
                    return CheckReport(False, "commutative module symmetry", (i, p))
    return CheckReport(True, "bimodule axioms")


def adjoint_module(a: AlgebraStructure) -> Bimodule:
    """The algebra acting on itself."""
    left = {}
    right = {}
    for (i, j), vec in a.product.items():
        left[(i, j)] = vec
        right[(i, j)] = vec
    if a.kind == "lie":
        return Bimodule(a, a.space, left, None, name="adjoint")
    return Bimodule(a, a.space, left, right, name="adjoint")


def dual_space(space: GradedSpace, suffix: str = "'") -> GradedSpace:
    return GradedSpace(tuple(-d for d in space.degrees),
                       tuple(n + suffix for n in space.names))


def dual_module(a: AlgebraStructure) -> Bimodule:
    """The dual of the algebra with the kind's dual action(s)."""
    n = a.space.dim
    dual = dual_space(a.space)
    left = {}
    right = {}
    for i in range(n):
        for p in range(n):
            if a.kind in ("associative", "commutative"):
                lvec = [ZERO] * n
                rvec = [ZERO] * n
                for z in range(n):
                    lvec[z] += a.mul(z, i)[p]     # (x.f)(z) = f(q(z,x))
                    rvec[z] += a.mul(i, z)[p]     # (f.x)(z) = f(q(x,z))
                if any(c != 0 for c in lvec):
                    left[(i, p)] = tuple(lvec)
                if any(c != 0 for c in rvec):
                    right[(p, i)] = tuple(rvec)
            elif a.kind == "lie":
                lvec = [ZERO] * n
                for z in range(n):
                    lvec[z] -= a.mul(i, z)[p]     # (x.f)(z) = -f([x,z])
                if any(c != 0 for c in lvec):
                    left[(i, p)] = tuple(lvec)
            else:  # prelie: left module (x.f)(z) = -f(q(x,z)), trivial right action
                lvec = [ZERO] * n
                for z in range(n):
                    lvec[z] -= a.mul(i, z)[p]
                if any(c != 0 for c in lvec):
                    left[(i, p)] = tuple(lvec)
    if a.kind == "lie":
        return Bimodule(a, dual, left, None, name="dual")
    return Bimodule(a, dual, left, right, name="dual")


def semidirect_product(a: AlgebraStructure, m: Bimodule) -> AlgebraStructure:
    """Structure of the same kind on V + M; identity re-verified."""
    if m.base is not a and m.base.product != a.product:
        raise ValueError("module is not over this algebra")
    nv = a.space.dim
    nm = m.space.dim
    space = GradedSpace(a.space.degrees + m.space.degrees,
                        a.space.names + tuple("%s@%s" % (m.name or "m", nm_) for nm_ in m.space.names))
    vdeg = a.space.degrees
    mdeg = m.space.degrees

    def emb_v(vec: Vec) -> Vec:
        return tuple(vec) + (ZERO,) * nm

    def emb_m(vec: Vec) -> Vec:
        return (ZERO,) * nv + tuple(vec)

    product: dict[tuple, Vec] = {}

    def put(i, j, vec):
        if not vec_is_zero(vec):
            product[(i, j)] = vec

    for i in range(nv):
        for j in range(nv):
            put(i, j, emb_v(a.mul(i, j)))
    for i in range(nv):
        for p in range(nm):
            put(i, nv + p, emb_m(m.act_left(i, p)))
            if a.kind == "lie":
                sign = -_sign(vdeg[i] * mdeg[p])
                put(nv + p, i, emb_m(vec_scale(sign, m.act_left(i, p))))
            elif a.kind in ("associative", "commutative", "prelie"):
                if m.right is not None:
                    put(nv + p, i, emb_m(m.act_right(p, i)))
    return AlgebraStructure(space, a.kind, product, name="%s semidirect" % a.kind)


def hyperbolic_form(space_w: GradedSpace, total: GradedSpace) -> BilinearForm:
    """The canonical pairing on W x W*: b((w,f),(w',f')) = f(w') + f'(w)."""
    n = space_w.dim
    gram = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        gram[i][n + i] = ONE
        gram[n + i][i] = ONE
    return BilinearForm(total, tuple(tuple(row) for row in gram))


def double_product(a: AlgebraStructure, m: Bimodule) -> AlgebraStructure:
    """The double of (V,q) by M: the semidirect product of W = V x M by W*,
    carrying the canonical hyperbolic form.

    The output passes identity, invariance and nondegeneracy checks by
    construction (and they are re-run here).
    """
    if a.kind not in ("associative", "commutative", "lie"):
        raise ValueError("double is defined for associative, commutative and lie kinds")
    w = semidirect_product(a, m)
    wdual = dual_module(w)
    tilde = semidirect_product(w, wdual)
    form = hyperbolic_form(w.space, tilde.space)
    inv = verify_invariance(tilde, form)
    if not inv.ok:
        raise AssertionError("double product form is not invariant: %s" % inv.summary())
    return AlgebraStructure(tilde.space, tilde.kind, tilde.product, form,
                            name="double of %s" % (a.name or a.kind))


# ---------------------------------------------------------------------------
# cochain lifting
# ---------------------------------------------------------------------------

def extend_cochain_to_double(c: dict, arity: int, a: AlgebraStructure, m: Bimodule,
                             tilde: AlgebraStructure) -> dict:
    """Extend c: V^k -> M by zero to the double's space (V-block inputs,
    M-block outputs)."""
    nv = a.space.dim
    nm = m.space.dim
    nt = tilde.space.dim
    out = {}
    for key, vec in c.items():
        if len(key) != arity:
            raise ValueError("cochain key of wrong arity")
        tvec = [ZERO] * nt
        for p, coeff in enumerate(vec):
            tvec[nv + p] = coeff
        if any(x != 0 for x in tvec):
            out[tuple(key)] = tuple(tvec)
    return out


def lift_cochain(c: dict, arity: int, a: AlgebraStructure, m: Bimodule,
                 tilde: AlgebraStructure) -> MultiMap:
    """Lift a k-linear map c: V^k -> M to a B-quadratic map on the double.

    The lift is the unique B-quadratic map whose form restricts to the
    pairing of the shifted c against the last argument: concretely, the
    cyclic symmetrization of that pairing form, converted back to a map.
    For the lie kind (skew c) the lift is totally symmetric.
    """
    if tilde.form is None:
        raise ValueError("the double must carry its form")
    ext = extend_cochain_to_double(c, arity, a, m, tilde)
    base = shift_map(tilde.space, arity, ext)
    omega0 = omega_of(base, tilde.form)
    omega = cyclic_sym(omega0)
    if omega.is_zero():
        return shift_map(tilde.space, arity, {})
    lifted = map_of(omega, tilde.form)
    return lifted


def invariant_form_space(a: AlgebraStructure):
    """Basis of symmetric degree-0 invariant bilinear forms, as Gram matrices.

    Solves the linear system of the kind's invariance plus symmetry and the
    degree-0 constraint; returns a list of Gram matrices (not necessarily
    nondegenerate ones).
    """
    n = a.space.dim
    deg = a.space.degrees
    variables = [(i, j) for i in range(n) for j in range(i, n) if deg[i] + deg[j] == 0]
    index = {v: p for p, v in enumerate(variables)}

    def var(i, j):
        return index.get((i, j) if i <= j else (j, i))

    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row: dict[int, Fraction] = {}

                def add(i1, j1, coeff):
                    p = var(i1, j1)
                    if p is not None and coeff != 0:
                        row[p] = row.get(p, ZERO) + coeff

                qij = a.mul(i, j)
                for mth in range(n):
                    if qij[mth] != 0:
                        add(mth, k, qij[mth])
                if a.kind == "prelie":
                    qik = a.mul(i, k)
                    s = _sign(deg[i] * deg[j])
                    for mth in range(n):
                        if qik[mth] != 0:
                            add(j, mth, s * qik[mth])
                else:
                    qjk = a.mul(j, k)
                    for mth in range(n):
                        if qjk[mth] != 0:
                            add(i, mth, -qjk[mth])
                if row:
                    rows.append(row)
    matrix = linalg.SparseMatrix(len(rows), len(variables))
    for r, row in enumerate(rows):
        for c, v in row.items():
            matrix.set_entry(r, c, v)
    basis = []
    for vec in linalg.kernel_basis(matrix):
        gram = [[ZERO] * n for _ in range(n)]
        for (i, j), p in index.items():
            gram[i][j] = vec[p]
            gram[j][i] = vec[p]
        basis.append(tuple(tuple(row) for row in gram))
    return basis
