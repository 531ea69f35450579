"""Graded vector spaces, Koszul signs and bilinear forms, over exact rationals.

Degree conventions.  A basis vector ``e_i`` carries an integer degree
``|e_i|``; its degree on the shifted space is ``deg(e_i) = |e_i| - 1``.
All sign bookkeeping downstream (permutation actions, circle products,
bracket formulas) is generated mechanically from lists of shifted degrees
by the two primitives ``eta`` and ``koszul_sign``; no formula carries a
hand-written sign of its own.

Scalars are ``fractions.Fraction`` throughout: exact, lowest terms,
positive denominator.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class NondegeneracyError(ValueError):
    """A bilinear form expected to be nondegenerate has a kernel.

    Carries a nonzero kernel vector as a witness.
    """

    def __init__(self, message: str, kernel_vector: Vec):
        super().__init__(message)
        self.kernel_vector = kernel_vector


def eta(shifted_degrees) -> int:
    """Sign (-1)^(sum over j of (k-j)*d_j) for a list of shifted degrees.

    This is the sign relating a multilinear map on V to its companion on
    the shifted space; the empty list gives +1.
    """
    degs = list(shifted_degrees)
    k = len(degs)
    exponent = sum((k - j) * d for j, d in enumerate(degs, start=1))
    return -1 if exponent % 2 else 1


def koszul_sign(perm, shifted_degrees) -> int:
    """Koszul sign of a permutation: one factor (-1)^(d_i*d_j) per inversion.

    ``perm`` is a tuple of images (0-based), ``shifted_degrees`` the degrees
    of the letters in their original order.  Only odd-degree letters
    contribute.
    """
    degs = list(shifted_degrees)
    if len(perm) != len(degs):
        raise ValueError("permutation size %d does not match degree list %d" % (len(perm), len(degs)))
    exponent = 0
    k = len(perm)
    for i in range(k):
        if degs[i] % 2 == 0:
            continue
        for j in range(i + 1, k):
            if perm[i] > perm[j] and degs[j] % 2:
                exponent += 1
    return -1 if exponent % 2 else 1


def perm_sign(perm) -> int:
    """Ordinary sign of a permutation given as a tuple of images."""
    inversions = 0
    k = len(perm)
    for i in range(k):
        for j in range(i + 1, k):
            if perm[i] > perm[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def compose_perms(sigma, tau):
    """Composition sigma after tau: (sigma*tau)(i) = sigma(tau(i))."""
    return tuple(sigma[t] for t in tau)


def invert_perm(sigma):
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def reorder_sign(parities, order) -> int:
    """Koszul sign of rearranging letters 0..n-1 into the given target order.

    ``parities`` are the letters' degree parities in source order; ``order``
    lists source positions in their target order.  A pair crossing costs
    (-1) exactly when both letters are odd.
    """
    exponent = 0
    n = len(order)
    for a in range(n):
        ia = order[a]
        if parities[ia] % 2 == 0:
            continue
        for bpos in range(a + 1, n):
            ib = order[bpos]
            if ia > ib and parities[ib] % 2:
                exponent += 1
    return -1 if exponent % 2 else 1


def sort_with_sign(indices, shifted_degrees):
    """Stable-sort a tuple of basis indices, returning (sorted tuple, Koszul sign).

    ``shifted_degrees[i]`` is the shifted degree of basis vector ``i``.  The
    sign counts crossings of odd-degree letters during the sort; the caller
    decides what a repeated index means for its symmetry type.
    """
    order = sorted(range(len(indices)), key=lambda p: (indices[p], p))
    exponent = 0
    for a in range(len(order)):
        ia = order[a]
        if shifted_degrees[indices[ia]] % 2 == 0:
            continue
        for b in range(a + 1, len(order)):
            ib = order[b]
            if ia > ib and shifted_degrees[indices[ib]] % 2:
                exponent += 1
    return tuple(indices[p] for p in order), (-1 if exponent % 2 else 1)


@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional Z-graded vector space with a named basis."""

    degrees: tuple[int, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.degrees) == 0:
            raise ValueError("space must have positive dimension")
        if len(self.names) != len(self.degrees):
            raise ValueError("need one name per basis vector")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def deg(self, i: int) -> int:
        """Shifted degree deg(e_i) = |e_i| - 1."""
        return self.degrees[i] - 1

    def shifted_degrees(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.degrees)

    def basis_vector(self, i: int) -> Vec:
        return tuple(ONE if j == i else ZERO for j in range(self.dim))

    def zero_vector(self) -> Vec:
        return (ZERO,) * self.dim

    def vector_degree(self, v: Vec):
        """Unshifted degree of a homogeneous vector, None for the zero vector.

        Raises ValueError on non-homogeneous input.
        """
        found = None
        for i, c in enumerate(v):
            if c != 0:
                if found is None:
                    found = self.degrees[i]
                elif self.degrees[i] != found:
                    raise ValueError("vector is not homogeneous")
        return found

    def index_of(self, name: str) -> int:
        return self.names.index(name)


def standard_space(dim: int, degrees=None, prefix: str = "e") -> GradedSpace:
    """Space with basis e1..en (degree 0 unless given)."""
    if degrees is None:
        degrees = (0,) * dim
    names = tuple("%s%d" % (prefix, i + 1) for i in range(dim))
    return GradedSpace(tuple(degrees), names)


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in v)


def vec_is_zero(v: Vec) -> bool:
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class BilinearForm:
    """Degree-0 symmetric bilinear form b(e_i, e_j), stored as a Gram matrix.

    Constructors reject anything that is not symmetric, degree 0 and
    nondegenerate; use ``validate_form`` to inspect a candidate matrix
    without raising.
    """

    space: GradedSpace
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        report = validate_form(self.space, self.matrix)
        if not report.ok:
            if not report.nondegenerate and report.kernel_vector is not None:
                raise NondegeneracyError(
                    "degenerate bilinear form; kernel contains %s" % (report.kernel_vector,),
                    report.kernel_vector,
                )
            raise ValueError("invalid bilinear form: %s" % report.summary())

    def pair(self, u: Vec, v: Vec) -> Fraction:
        total = ZERO
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self.matrix[i]
            for j, b in enumerate(v):
                if b != 0:
                    total += a * b * row[j]
        return total

    def entry(self, i: int, j: int) -> Fraction:
        return self.matrix[i][j]


@dataclass(frozen=True)
class FormValidation:
    symmetric: bool
    degree_zero: bool
    nondegenerate: bool
    witness: tuple | None
    kernel_vector: Vec | None

    @property
    def ok(self) -> bool:
        return self.symmetric and self.degree_zero and self.nondegenerate

    def summary(self) -> str:
        parts = []
        parts.append("symmetric" if self.symmetric else "NOT symmetric")
        parts.append("degree 0" if self.degree_zero else "NOT degree 0")
        parts.append("nondegenerate" if self.nondegenerate else "DEGENERATE")
        return ", ".join(parts)


def validate_form(space: GradedSpace, matrix) -> FormValidation:
    """Report symmetry, degree-0 and nondegeneracy verdicts for a Gram matrix."""
    n = space.dim
    matrix = tuple(tuple(Fraction(x) for x in row) for row in matrix)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("Gram matrix must be %d x %d" % (n, n))
    symmetric = True
    degree_zero = True
    witness = None
    for i in range(n):
        for j in range(n):
            if matrix[i][j] != matrix[j][i]:
                symmetric = False
                witness = witness or (i, j)
            if matrix[i][j] != 0 and space.degrees[i] + space.degrees[j] != 0:
                degree_zero = False
                witness = witness or (i, j)
    kernel_vector = _kernel_vector(matrix, n)
    return FormValidation(symmetric, degree_zero, kernel_vector is None, witness, kernel_vector)


def _kernel_vector(matrix, n: int):
    """A nonzero kernel vector of a square matrix, or None if invertible."""
    rows = [list(row) for row in matrix]
    where = list(range(n))  # where[r] = original index of current row r
    pivots = []  # (row, col)
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, n):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        where[rank], where[pivot] = where[pivot], where[rank]
        pv = rows[rank][col]
        for r in range(n):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        pivots.append((rank, col))
        rank += 1
    if rank == n:
        return None
    pivot_cols = {c for _, c in pivots}
    free = min(c for c in range(n) if c not in pivot_cols)
    v = [ZERO] * n
    v[free] = ONE
    for r, c in pivots:
        v[c] = -rows[r][free] / rows[r][c]
    return tuple(v)


@lru_cache(maxsize=None)
def dual_basis(b: BilinearForm) -> tuple[Vec, ...]:
    """Basis (e'_i) with b(e'_j, e_i) = delta_ij.

    The rows of the inverse Gram matrix; for symmetric b these are also its
    columns.
    """
    n = b.space.dim
    inv = _invert(b.matrix, n)
    return tuple(tuple(inv[j][m] for m in range(n)) for j in range(n))


def _invert(matrix, n: int):
    aug = [list(matrix[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            kv = _kernel_vector(matrix, n)
            raise NondegeneracyError("degenerate form; kernel contains %s" % (kv,), kv)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [a / pv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * c for a, c in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def shifted_B(b: BilinearForm, u: Vec, v: Vec) -> Fraction:
    """The companion form on the shifted space: B(x,y) = (-1)^deg(x) b(x,y).

    Both arguments must be homogeneous; the sign is eta of the two shifted
    degrees.
    """
    du = b.space.vector_degree(u)
    b.space.vector_degree(v)  # homogeneity check
    value = b.pair(u, v)
    if du is None or value == 0:
        return ZERO
    return value if (du - 1) % 2 == 0 else -value


def shifted_B_entry(b: BilinearForm, i: int, j: int) -> Fraction:
    """B(e_i, e_j) without building vectors."""
    value = b.matrix[i][j]
    if value == 0:
        return ZERO
    return value if b.space.deg(i) % 2 == 0 else -value
