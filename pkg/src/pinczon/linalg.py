"""Exact sparse linear algebra over the rationals.

Working rows are dicts column -> integer, kept primitive (denominators
cleared, content divided out), so elimination is fraction-free.  Pivoting
within a column picks the entry of smallest absolute value, ties broken by
row index, which keeps coefficient growth down and makes every result
deterministic.  Row operations only ever combine rows sharing the pivot
column, so block structure hidden in the sparsity pattern is exploited for
free.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _primitive_with_scale(row: dict) -> tuple[dict[int, int], Fraction]:
    """Return (integer row, s) with integer_row = s * row, s > 0."""
    entries = {c: Fraction(v) for c, v in row.items() if v != 0}
    if not entries:
        return {}, Fraction(1)
    denom_lcm = 1
    for v in entries.values():
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = {c: int(v * denom_lcm) for c, v in entries.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, abs(v))
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints, Fraction(denom_lcm, g if g > 1 else 1)


class SparseMatrix:
    """Sparse matrix of exact rationals in row-major coordinate storage."""

    def __init__(self, nrows: int, ncols: int):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: list[dict[int, Fraction]] = [dict() for _ in range(nrows)]

    def set_entry(self, r: int, c: int, v) -> None:
        v = Fraction(v)
        if v == 0:
            self.rows[r].pop(c, None)
        else:
            self.rows[r][c] = v

    def add_entry(self, r: int, c: int, v) -> None:
        new = self.rows[r].get(c, Fraction(0)) + Fraction(v)
        self.set_entry(r, c, new)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries) -> "SparseMatrix":
        """Build from an iterable of (row, col, value); repeats accumulate."""
        out = cls(nrows, ncols)
        for r, c, v in entries:
            out.add_entry(r, c, v)
        return out

    @classmethod
    def from_columns(cls, nrows: int, ncols: int, columns) -> "SparseMatrix":
        """Build from ncols columns given as dicts row -> value."""
        out = cls(nrows, ncols)
        for j, col in enumerate(columns):
            for r, v in col.items():
                out.add_entry(r, j, v)
        return out

    def transpose(self) -> "SparseMatrix":
        out = SparseMatrix(self.ncols, self.nrows)
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                out.rows[c][r] = v
        return out

    def apply(self, x) -> tuple[Fraction, ...]:
        """Matrix-vector product with an ncols-length vector."""
        out = []
        for row in self.rows:
            s = Fraction(0)
            for c, v in row.items():
                if x[c] != 0:
                    s += v * x[c]
            out.append(s)
        return tuple(out)

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows)


def _echelonize(rows: list[dict[int, int]], ncols: int, rhs: list[Fraction] | None = None):
    """Forward elimination in place.  Returns the pivot list [(row, col)].

    Column order is ascending; within a column the pivot is the entry of
    smallest absolute value (ties by row index).  If ``rhs`` is given it is
    carried through the same row operations.
    """
    col_index: dict[int, set[int]] = {}
    for r, row in enumerate(rows):
        for c in row:
            col_index.setdefault(c, set()).add(r)
    pivots: list[tuple[int, int]] = []
    pivot_rows: set[int] = set()
    for col in range(ncols):
        holders = col_index.get(col)
        if not holders:
            continue
        candidates = [r for r in holders if r not in pivot_rows]
        if not candidates:
            continue
        pivot = min(candidates, key=lambda r: (abs(rows[r][col]), r))
        pivot_rows.add(pivot)
        pivots.append((pivot, col))
        prow = rows[pivot]
        pval = prow[col]
        for r in sorted(candidates):
            if r == pivot:
                continue
            val = rows[r][col]
            g = gcd(abs(pval), abs(val))
            a, b = pval // g, val // g
            # row_r <- a*row_r - b*row_pivot kills the entry in this column
            row = rows[r]
            for c in row:
                row[c] = a * row[c]
            for c, pv in prow.items():
                new = row.get(c, 0) - b * pv
                if new == 0:
                    if c in row:
                        del row[c]
                        col_index[c].discard(r)
                else:
                    if c not in row:
                        col_index.setdefault(c, set()).add(r)
                    row[c] = new
            content = 0
            for v in row.values():
                content = gcd(content, abs(v))
            if content > 1:
                for c in row:
                    row[c] //= content
            if rhs is not None:
                rhs[r] = a * rhs[r] - b * rhs[pivot]
                if content > 1:
                    rhs[r] = rhs[r] / content
    return pivots


def _working_rows(matrix: SparseMatrix) -> list[dict[int, int]]:
    return [_primitive_with_scale(row)[0] for row in matrix.rows]


def rank(matrix: SparseMatrix) -> int:
    rows = _working_rows(matrix)
    return len(_echelonize(rows, matrix.ncols))


def kernel_basis(matrix: SparseMatrix) -> list[tuple[Fraction, ...]]:
    """Deterministic basis of the right kernel, one vector per free column."""
    rows = _working_rows(matrix)
    pivots = _echelonize(rows, matrix.ncols)
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(matrix.ncols):
        if free in pivot_cols:
            continue
        v = [Fraction(0)] * matrix.ncols
        v[free] = Fraction(1)
        for r, c in reversed(pivots):
            row = rows[r]
            s = Fraction(0)
            for j, a in row.items():
                if j != c and v[j] != 0:
                    s += a * v[j]
            v[c] = -s / row[c]
        basis.append(tuple(v))
    return basis


def solve(matrix: SparseMatrix, rhs) -> tuple[Fraction, ...] | None:
    """One exact solution of A x = rhs, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    if len(rhs) != matrix.nrows:
        raise ValueError("right-hand side has wrong length")
    rows = []
    vec = []
    for row, v in zip(matrix.rows, rhs):
        ints, scale = _primitive_with_scale(row)
        rows.append(ints)
        vec.append(Fraction(v) * scale)
    pivots = _echelonize(rows, matrix.ncols, vec)
    pivot_row_ids = {r for r, _ in pivots}
    for r in range(matrix.nrows):
        if r not in pivot_row_ids and vec[r] != 0:
            return None
    x = [Fraction(0)] * matrix.ncols
    for r, c in reversed(pivots):
        row = rows[r]
        s = Fraction(0)
        for j, a in row.items():
            if j != c and x[j] != 0:
                s += a * x[j]
        x[c] = (vec[r] - s) / row[c]
    return tuple(x)


def insolvability_certificate(matrix: SparseMatrix, rhs) -> tuple[Fraction, ...] | None:
    """A functional y with y^T A = 0 and y^T rhs = 1, or None when rhs is in
    the column space.

    Such a y is an exact witness that A x = rhs has no solution.
    """
    m = matrix.nrows
    stacked = SparseMatrix(matrix.ncols + 1, m)
    for r, row in enumerate(matrix.rows):
        for c, v in row.items():
            stacked.rows[c][r] = Fraction(v)
    bottom = {i: Fraction(v) for i, v in enumerate(rhs) if v != 0}
    if not bottom:
        return None
    stacked.rows[matrix.ncols] = bottom
    target = [Fraction(0)] * (matrix.ncols + 1)
    target[matrix.ncols] = Fraction(1)
    return solve(stacked, target)
