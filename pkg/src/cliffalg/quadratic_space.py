"""Symmetric bilinear forms over the rationals.

Evaluation, vector classification, orthogonal diagonalization by symmetric
congruence, hyperplane reflections, isometry checks, and a constructive
factorization of isometries into reflections.  Everything is exact; diagonal
entries are never rescaled to +-1 (that would need square roots), only their
signs are read off.

Shared text format (also used by the CLI): matrix rows separated by ';',
entries by ',', rationals written "a/b" or "a".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .core_algebra import Signature
from .errors import (
    DegenerateForm,
    DimensionMismatch,
    IsotropicVector,
    NotAnIsometry,
    ParseError,
    ZeroVector,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _freeze(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class BilinearForm:
    """An n x n symmetric rational matrix."""

    mat: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.mat)
        if any(len(row) != n for row in self.mat):
            raise DimensionMismatch("bilinear form matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.mat[i][j] != self.mat[j][i]:
                    raise ValueError("bilinear form matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows) -> "BilinearForm":
        return cls(_freeze(rows))

    @classmethod
    def diagonal(cls, entries) -> "BilinearForm":
        entries = [Fraction(x) for x in entries]
        n = len(entries)
        return cls(_freeze([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]))

    @classmethod
    def from_signature(cls, sig: Signature) -> "BilinearForm":
        """Standard diagonal form: +1 (p times), -1 (q times), 0 (s times)."""
        return cls.diagonal([sig.generator_square(i) for i in range(1, sig.n + 1)])

    @property
    def n(self) -> int:
        return len(self.mat)

    def rows(self) -> list[list[Fraction]]:
        return [list(row) for row in self.mat]


@dataclass(frozen=True)
class IsometryMatrix:
    """An invertible rational matrix M with M^T B M = B, certified on construction."""

    form: BilinearForm
    mat: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = [list(r) for r in self.mat]
        if len(rows) != self.form.n or any(len(r) != self.form.n for r in rows):
            raise DimensionMismatch("isometry matrix size does not match the form")
        if not is_isometry(self.form, rows):
            raise NotAnIsometry("matrix does not preserve the bilinear form")

    @classmethod
    def from_rows(cls, form: BilinearForm, rows) -> "IsometryMatrix":
        return cls(form, _freeze(rows))

    @property
    def n(self) -> int:
        return self.form.n

    def rows(self) -> list[list[Fraction]]:
        return [list(row) for row in self.mat]


@dataclass(frozen=True)
class DiagonalizationResult:
    """Columns of basis are an orthogonal basis; diag holds their quadratic values."""

    basis: tuple[tuple[Fraction, ...], ...]
    diag: tuple[Fraction, ...]
    signature: tuple[int, int, int]

    def basis_rows(self) -> list[list[Fraction]]:
        return [list(row) for row in self.basis]


def evaluate_form(form: BilinearForm, u, v) -> Fraction:
    """u^T B v."""
    u = _linalg.to_vector(u)
    v = _linalg.to_vector(v)
    if len(u) != form.n or len(v) != form.n:
        raise DimensionMismatch(f"expected vectors of length {form.n}")
    return _linalg.dot(u, _linalg.mat_vec(form.rows(), v))


def quadratic_value(form: BilinearForm, u) -> Fraction:
    return evaluate_form(form, u, u)


def classify_vector(form: BilinearForm, v) -> str:
    """"timelike" (Phi > 0), "spacelike" (Phi < 0), or "lightlike" (Phi = 0)."""
    v = _linalg.to_vector(v)
    if all(x == 0 for x in v):
        raise ZeroVector("cannot classify the zero vector")
    value = quadratic_value(form, v)
    if value > 0:
        return "timelike"
    if value < 0:
        return "spacelike"
    return "lightlike"


def orthogonal_diagonalize(form: BilinearForm) -> DiagonalizationResult:
    """Deterministic symmetric congruence elimination.

    Pivots are taken lowest index first.  A zero diagonal pivot is repaired
    using its lowest nonzero off-diagonal partner j: when entry (j,j) is
    nonzero the two basis vectors are swapped, otherwise v_i <- v_i + v_j,
    which makes the pivot 2*b(v_i, v_j) != 0.
    """
    n = form.n
    a = form.rows()
    basis = _linalg.identity(n)

    def add_column(i, j):
        # v_i <- v_i + v_j, applied to the congruence a and the basis columns
        for r in range(n):
            a[r][i] += a[r][j]
        for c in range(n):
            a[i][c] += a[j][c]
        for r in range(n):
            basis[r][i] += basis[r][j]

    def swap_columns(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            basis[r][i], basis[r][j] = basis[r][j], basis[r][i]

    for i in range(n):
        if a[i][i] == 0:
            partner = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
            if partner is None:
                continue  # row i is already clear; its vector is in the radical
            if a[partner][partner] != 0:
                swap_columns(i, partner)
            else:
                add_column(i, partner)
        pivot = a[i][i]
        for r in range(i + 1, n):
            if a[i][r] != 0:
                factor = a[i][r] / pivot
                # v_r <- v_r - factor * v_i
                for k in range(n):
                    a[k][r] -= factor * a[k][i]
                for k in range(n):
                    a[r][k] -= factor * a[i][k]
                for k in range(n):
                    basis[k][r] -= factor * basis[k][i]
    diag = [a[i][i] for i in range(n)]
    p = sum(1 for d in diag if d > 0)
    q = sum(1 for d in diag if d < 0)
    s = n - p - q
    return DiagonalizationResult(_freeze(basis), tuple(diag), (p, q, s))


def signature_of(form: BilinearForm) -> tuple[int, int, int]:
    return orthogonal_diagonalize(form).signature


def is_degenerate(form: BilinearForm) -> bool:
    return signature_of(form)[2] > 0


def reflection_matrix(form: BilinearForm, x) -> IsometryMatrix:
    """Hyperplane reflection s_x(u) = u - (2 phi(u,x) / Phi(x)) x.

    Requires Phi(x) != 0.  Fixes the hyperplane orthogonal to x, negates x,
    has determinant -1, and depends only on the line through x.
    """
    x = _linalg.to_vector(x)
    if len(x) != form.n:
        raise DimensionMismatch(f"expected a vector of length {form.n}")
    qx = quadratic_value(form, x)
    if qx == 0:
        raise IsotropicVector("reflection axis must be anisotropic")
    bx = _linalg.mat_vec(form.rows(), x)  # phi(e_i, x) per row
    n = form.n
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            value = _ONE if r == c else _ZERO
            row.append(value - 2 * bx[c] * x[r] / qx)
        rows.append(row)
    return IsometryMatrix.from_rows(form, rows)


def is_isometry(form: BilinearForm, rows) -> bool:
    """Exact check M^T B M = B and M invertible."""
    rows = _linalg.to_matrix(rows)
    if len(rows) != form.n or any(len(r) != form.n for r in rows):
        return False
    b = form.rows()
    if not _linalg.mat_eq(_linalg.mat_mul(_linalg.mat_mul(_linalg.transpose(rows), b), rows), b):
        return False
    return _linalg.determinant(rows) != 0


def det_sign(m) -> int:
    """Sign of the determinant: +1 or -1 for any invertible matrix."""
    rows = m.rows() if isinstance(m, IsometryMatrix) else _linalg.to_matrix(m)
    det = _linalg.determinant(rows)
    if det == 0:
        raise ValueError("matrix is singular")
    return 1 if det > 0 else -1


def _factor_against_diagonal(diag, m):
    """Reflection vectors for an isometry m of the regular diagonal form diag.

    Settles basis directions lowest index first.  One reflection through
    (M e_i - e_i) maps the current image back to e_i when that difference is
    anisotropic; otherwise the difference is isotropic, which forces
    Phi(M e_i + e_i) = 4 * diag[i] != 0, and the pair s_{e_i} after
    s_{M e_i + e_i} does the same job.  Both fix every earlier basis vector,
    so at most 2n reflections are emitted.
    """
    n = len(diag)
    form = BilinearForm.diagonal(diag)
    cur = [list(row) for row in m]
    vectors = []

    def apply_reflection(w):
        nonlocal cur
        cur = _linalg.mat_mul(reflection_matrix(form, w).rows(), cur)
        vectors.append(list(w))

    for i in range(n):
        image = [cur[r][i] for r in range(n)]
        unit = [_ONE if r == i else _ZERO for r in range(n)]
        if image == unit:
            continue
        difference = [x - y for x, y in zip(image, unit)]
        if quadratic_value(form, difference) != 0:
            apply_reflection(difference)
        else:
            apply_reflection([x + y for x, y in zip(image, unit)])
            apply_reflection(unit)
    if not _linalg.mat_eq(cur, _linalg.identity(n)):
        raise NotAnIsometry("factorization did not terminate at the identity")
    return vectors


def cartan_dieudonne_factor(form: BilinearForm, m) -> list[list[Fraction]]:
    """Anisotropic vectors w_1..w_k with s_{w_1} o ... o s_{w_k} = M, k <= 2n.

    The form must be regular and M an exact isometry of it.  The composition
    is matrix-product order: the product of the reflection matrices taken in
    list order equals M.  A non-diagonal form is first diagonalized and the
    reflection vectors are mapped back through the congruence basis.
    """
    rows = m.rows() if isinstance(m, IsometryMatrix) else _linalg.to_matrix(m)
    diagonalization = orthogonal_diagonalize(form)
    if diagonalization.signature[2] > 0:
        raise DegenerateForm("factorization requires a regular form")
    if not is_isometry(form, rows):
        raise NotAnIsometry("matrix does not preserve the bilinear form")
    basis = diagonalization.basis_rows()
    already_diagonal = _linalg.mat_eq(basis, _linalg.identity(form.n))
    if already_diagonal:
        reduced = rows
    else:
        basis_inv = _linalg.matrix_inverse(basis)
        reduced = _linalg.mat_mul(basis_inv, _linalg.mat_mul(rows, basis))
    vectors = _factor_against_diagonal(diagonalization.diag, reduced)
    if already_diagonal:
        return vectors
    return [_linalg.mat_vec(basis, w) for w in vectors]


# text format shared with the CLI


_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/[1-9]\d*)?")


def parse_rational(text: str) -> Fraction:
    """Exactly "a" or "a/b" with b > 0; floats and exponents are rejected."""
    stripped = text.strip()
    if not _RATIONAL_RE.fullmatch(stripped):
        raise ParseError(f"bad rational {stripped!r}; expected \"a\" or \"a/b\"")
    return Fraction(stripped)


def parse_vector(text: str) -> list[Fraction]:
    entries = text.split(",")
    if not any(e.strip() for e in entries):
        raise ParseError("empty vector text")
    return [parse_rational(e) for e in entries]


def parse_matrix(text: str) -> list[list[Fraction]]:
    rows = [parse_vector(row) for row in text.split(";") if row.strip()]
    if not rows:
        raise ParseError("empty matrix text")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("matrix rows have differing lengths")
    return rows


def format_vector(v) -> str:
    return ",".join(str(Fraction(x)) for x in v)


def format_matrix(rows) -> str:
    return ";".join(format_vector(row) for row in rows)
