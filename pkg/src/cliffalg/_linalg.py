"""Exact linear algebra over the rationals.

Matrices are lists of rows, rows are lists of Fraction.  Every function is
pure: arguments are never mutated, results are freshly allocated.  All
pivoting is lowest-index-first, so results are deterministic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch

ZERO = Fraction(0)
ONE = Fraction(1)


def to_matrix(rows):
    """Copy a rows-of-entries iterable into a rectangular Fraction matrix."""
    out = [[Fraction(entry) for entry in row] for row in rows]
    if out:
        width = len(out[0])
        if any(len(row) != width for row in out):
            raise DimensionMismatch("ragged rows in matrix")
    return out


def to_vector(entries):
    return [Fraction(entry) for entry in entries]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a, b):
    if not a or not b:
        return []
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(m, v):
    if m and len(m[0]) != len(v):
        raise DimensionMismatch(f"matrix width {len(m[0])} does not match vector length {len(v)}")
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, m):
    c = Fraction(c)
    return [[c * x for x in row] for row in m]


def mat_eq(a, b):
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    return sum(x * y for x, y in zip(u, v))


def determinant(m):
    """Exact determinant by Gaussian elimination with lowest-index pivots."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("determinant needs a square matrix")
    work = [list(row) for row in m]
    det = ONE
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        pivot = work[col][col]
        det *= pivot
        for r in range(col + 1, n):
            factor = work[r][col] / pivot
            if factor:
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return det


def rref(m):
    """Reduced row echelon form.

    Returns (reduced, pivot_columns).  Zero rows are kept at the bottom.
    """
    work = [list(row) for row in m]
    rows = len(work)
    cols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pivot = work[r][c]
        work[r] = [x / pivot for x in work[r]]
        for i in range(rows):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return work, pivots


def rank(m):
    return len(rref(m)[1]) if m else 0


def row_space_basis(m):
    """Canonical (RREF) basis of the row space."""
    reduced, pivots = rref(m)
    return [reduced[i] for i in range(len(pivots))]


def solve(a, b):
    """One exact solution of A x = b, or None when the system is inconsistent.

    Free variables are set to zero, so the result is deterministic.
    """
    if len(a) != len(b):
        raise DimensionMismatch("matrix height does not match right-hand side")
    cols = len(a[0]) if a else 0
    augmented = [list(row) + [rhs] for row, rhs in zip(a, b)]
    reduced, pivots = rref(augmented)
    if cols in pivots:
        return None
    # with free variables pinned to zero, each pivot equation reads off directly
    x = [ZERO] * cols
    for row_index, c in enumerate(pivots):
        x[c] = reduced[row_index][-1]
    return x


def matrix_inverse(m):
    """Exact inverse, or None when the matrix is singular."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("inverse needs a square matrix")
    augmented = [list(row) + ident_row for row, ident_row in zip(m, identity(n))]
    reduced, pivots = rref(augmented)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in reduced[:n]]


def nullspace_basis(m):
    """Canonical basis of the kernel of A, read off the RREF."""
    if not m:
        return []
    cols = len(m[0])
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vec = [ZERO] * cols
        vec[free] = ONE
        for row_index, c in enumerate(pivots):
            vec[c] = -reduced[row_index][free]
        basis.append(vec)
    return basis


def coordinates_in_basis(basis_rows, target):
    """Coefficients expressing target as a combination of basis rows, or None."""
    if not basis_rows:
        return None if any(x != 0 for x in target) else []
    return solve(transpose(basis_rows), list(target))
