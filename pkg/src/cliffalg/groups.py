"""Clifford-Lipschitz group, twisted adjoint action, Pin/Spin membership, lifts.

The twisted adjoint of x sends a vector v to grade_involution(x) * v * x^-1.
For an anisotropic vector x it is the hyperplane reflection through x, and on
the whole group its image preserves the standard diagonal form of the
signature.  Lifting an isometry composes the reflection vectors produced by
the factorization in quadratic_space.

Lifts are projective: the twisted adjoint is unchanged under rescaling, so a
lift is rescaled onto norm +-1 only when that is possible inside the
rationals (|N| a rational square); otherwise it is returned unscaled with
needs_normalization set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .core_algebra import (
    Multivector,
    Rational,
    Signature,
    clifford_conjugation,
    embed_vector,
    even_part,
    extract_vector,
    geometric_product,
    grade_involution,
    inverse,
    norm,
    scalar_mul,
)
from .errors import (
    DegenerateForm,
    DimensionMismatch,
    NotAVector,
    NotInGroup,
    NotInvertible,
    NotStable,
    SignatureMismatch,
)
from .quadratic_space import (
    BilinearForm,
    IsometryMatrix,
    cartan_dieudonne_factor,
    quadratic_value,
)


@dataclass(frozen=True)
class GroupElement:
    """An invertible element with scalar norm, with its inverse cached."""

    x: Multivector
    inv: Multivector
    n_value: Rational

    @classmethod
    def from_multivector(cls, x: Multivector) -> "GroupElement":
        inv = inverse(x)  # raises NotInvertible
        return cls(x, inv, norm_scalar(x))


@dataclass(frozen=True)
class LiftResult:
    """A product of reflection vectors whose twisted adjoint is the lifted isometry."""

    element: Multivector
    n_value: Rational
    reflection_count: int
    needs_normalization: bool

    def approx_normalized(self) -> dict:
        """Float rendering of element / sqrt(|N|), for display only."""
        scale = 1.0 / math.sqrt(abs(self.n_value))
        return {mask: float(value) * scale for mask, value in self.element.terms()}


def _twisted_apply(x: Multivector, x_inv: Multivector, coords) -> list[Rational]:
    sig = x.sig
    v = embed_vector(coords, sig)
    image = geometric_product(geometric_product(grade_involution(x), v), x_inv)
    try:
        return extract_vector(image)
    except NotAVector as exc:
        raise NotStable(f"twisted adjoint leaves the vector space: {exc}") from None


def twisted_adjoint_apply(x: Multivector, coords) -> list[Rational]:
    """grade_involution(x) * v * x^-1 as coordinates; NotStable if not grade 1."""
    return _twisted_apply(x, inverse(x), coords)


def twisted_adjoint_matrix(x: Multivector) -> IsometryMatrix:
    """Matrix with columns rho_x(e_i), certified against the standard form."""
    sig = x.sig
    x_inv = inverse(x)
    columns = []
    for i in range(sig.n):
        coords = [Fraction(1) if j == i else Fraction(0) for j in range(sig.n)]
        columns.append(_twisted_apply(x, x_inv, coords))
    rows = [[columns[c][r] for c in range(sig.n)] for r in range(sig.n)]
    return IsometryMatrix.from_rows(BilinearForm.from_signature(sig), rows)


def in_clifford_group(x: Multivector) -> bool:
    """True iff x is invertible and its twisted adjoint keeps every e_i in V.

    Checking the basis vectors suffices because v maps linearly to the image.
    """
    try:
        x_inv = inverse(x)
    except NotInvertible:
        return False
    sig = x.sig
    for i in range(sig.n):
        coords = [Fraction(1) if j == i else Fraction(0) for j in range(sig.n)]
        try:
            _twisted_apply(x, x_inv, coords)
        except NotStable:
            return False
    return True


def norm_scalar(x: Multivector) -> Rational:
    """The scalar lambda with x * conjugate(x) = lambda; NotInGroup otherwise."""
    value = norm(x)
    if not value.is_scalar():
        raise NotInGroup("norm is not a scalar")
    return value.scalar_part()


def _check_expected_signature(x: Multivector, sig) -> None:
    if sig is not None and sig != x.sig:
        raise SignatureMismatch(f"element lives in Cl{x.sig}, not Cl{sig}")


def in_pin(x: Multivector, sig: Signature | None = None) -> bool:
    """Clifford group membership with norm +1 or -1.

    The optional signature is validated against the element's own; the same
    definition covers every signature, and for negative-definite forms it
    coincides with the kernel-of-N formulation (a tested property).
    """
    _check_expected_signature(x, sig)
    if not in_clifford_group(x):
        return False
    try:
        value = norm_scalar(x)
    except NotInGroup:
        return False
    return value in (1, -1)


def in_spin(x: Multivector, sig: Signature | None = None) -> bool:
    """Pin membership restricted to the even subalgebra."""
    _check_expected_signature(x, sig)
    return even_part(x) == x and in_pin(x)


def _is_rational_square(value: Fraction) -> bool:
    if value < 0:
        return False
    num, den = value.numerator, value.denominator
    return math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den


def _rational_sqrt(value: Fraction) -> Fraction:
    return Fraction(math.isqrt(value.numerator), math.isqrt(value.denominator))


def lift_isometry(sig: Signature, m) -> LiftResult:
    """Product of reflection vectors whose twisted adjoint equals M exactly.

    The signature must be regular (s = 0) and M an exact isometry of its
    standard diagonal form.  det(M) = +1 yields an even element built from an
    even number of reflections.  The element is rescaled onto norm +-1 when
    |N| is the square of a rational; otherwise needs_normalization is set
    (the twisted adjoint is correct either way).
    """
    if sig.s > 0:
        raise DegenerateForm("lifting requires a regular signature")
    form = BilinearForm.from_signature(sig)
    rows = m.rows() if isinstance(m, IsometryMatrix) else _linalg.to_matrix(m)
    if len(rows) != sig.n or any(len(r) != sig.n for r in rows):
        raise DimensionMismatch(f"expected a {sig.n}x{sig.n} matrix")
    vectors = cartan_dieudonne_factor(form, rows)  # raises NotAnIsometry
    element = Multivector.one(sig)
    n_value = Fraction(1)
    for w in vectors:
        element = geometric_product(element, embed_vector(w, sig))
        n_value *= -quadratic_value(form, w)
    needs_normalization = False
    if n_value not in (1, -1):
        if _is_rational_square(abs(n_value)):
            scale = _rational_sqrt(abs(n_value))
            element = scalar_mul(1 / scale, element)
            n_value = n_value / (scale * scale)
        else:
            needs_normalization = True
    return LiftResult(element, n_value, len(vectors), needs_normalization)
