"""Exact multivector arithmetic for real Clifford algebras Cl(p,q,s).

Basis blades are integer bit masks: bit i-1 set means generator e_i is a
factor, with factors always in ascending index order.  The product of two
blades lands on the XOR of their masks, with a sign from the transposition
parity of interleaving the factors times the squares of shared generators.
Coefficients are exact rationals, so every identity used downstream is
decided exactly.  All values are immutable and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _linalg
from .errors import (
    DimensionCapExceeded,
    DimensionMismatch,
    NotAVector,
    NotInvertible,
    SignatureMismatch,
)

Rational = Fraction
Blade = int

DEFAULT_DIMENSION_CAP = 10

_ZERO = Fraction(0)
_ONE = Fraction(1)
_MINUS_ONE = Fraction(-1)


@dataclass(frozen=True, order=True)
class Signature:
    """Counts of generators squaring to +1 (p), -1 (q), and 0 (s).

    Generator indices are 1-based and ordered: 1..p square to +1,
    p+1..p+q to -1, and p+q+1..n to 0.
    """

    p: int
    q: int
    s: int = 0

    def __post_init__(self):
        if min(self.p, self.q, self.s) < 0:
            raise ValueError("signature counts must be non-negative")

    @property
    def n(self) -> int:
        return self.p + self.q + self.s

    def generator_square(self, index: int) -> int:
        """Square of e_index as an int in {1, -1, 0}."""
        if not 1 <= index <= self.n:
            raise ValueError(f"generator index {index} out of range 1..{self.n}")
        if index <= self.p:
            return 1
        if index <= self.p + self.q:
            return -1
        return 0

    def __str__(self):
        return f"({self.p},{self.q},{self.s})"


@lru_cache(maxsize=None)
def _negative_mask(sig: Signature) -> int:
    """Bit mask of the generators squaring to -1."""
    return ((1 << sig.q) - 1) << sig.p


@lru_cache(maxsize=None)
def _zero_mask(sig: Signature) -> int:
    """Bit mask of the generators squaring to 0."""
    return ((1 << sig.s) - 1) << (sig.p + sig.q)


def blade_grade(mask: Blade) -> int:
    return mask.bit_count()


def blade_indices(mask: Blade) -> tuple[int, ...]:
    """Ascending 1-based generator indices of a blade mask."""
    out = []
    index = 1
    while mask:
        if mask & 1:
            out.append(index)
        mask >>= 1
        index += 1
    return tuple(out)


def blade_from_indices(indices, n: int) -> Blade:
    """Mask of a blade from distinct 1-based generator indices."""
    mask = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range 1..{n}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated generator index {i} in blade")
        mask |= bit
    return mask


def blade_name(mask: Blade, n: int) -> str:
    """Display name of a blade: "1", "e12", or "e{1,2}" when n > 9."""
    if mask == 0:
        return "1"
    indices = blade_indices(mask)
    if n <= 9:
        return "e" + "".join(str(i) for i in indices)
    return "e{" + ",".join(str(i) for i in indices) + "}"


def _check_blade(mask: Blade, sig: Signature) -> None:
    if not 0 <= mask < (1 << sig.n):
        raise ValueError(f"blade mask {mask} out of range for signature {sig}")


def _merge_swaps(a: Blade, b: Blade) -> int:
    """Transpositions needed to interleave the factors of b into a."""
    total = 0
    rest = b
    while rest:
        low = rest & -rest
        total += (a >> low.bit_length()).bit_count()
        rest ^= low
    return total


def _blade_mul_sign(a: Blade, b: Blade, neg_mask: int, zero_mask: int) -> int:
    """Sign of the blade product as an int in {1, -1, 0}."""
    shared = a & b
    if shared & zero_mask:
        return 0
    exponent = _merge_swaps(a, b) + (shared & neg_mask).bit_count()
    return -1 if exponent & 1 else 1


def blade_mul(a: Blade, b: Blade, sig: Signature) -> tuple[Rational, Blade]:
    """Product of two basis blades: (coefficient, result mask).

    The result mask is always a XOR b.  The coefficient is the transposition
    parity times the product of the squares of shared generators, hence one
    of +1, -1, or 0 (0 exactly when a shared generator squares to 0).
    """
    _check_blade(a, sig)
    _check_blade(b, sig)
    sign = _blade_mul_sign(a, b, _negative_mask(sig), _zero_mask(sig))
    if sign == 1:
        return _ONE, a ^ b
    if sign == -1:
        return _MINUS_ONE, a ^ b
    return _ZERO, a ^ b


class Multivector:
    """Element of Cl(p,q,s): a sparse map from blade mask to rational.

    Instances are immutable; arithmetic returns new values.  Equality is
    signature plus coefficient map equality (zeros are never stored).
    """

    __slots__ = ("sig", "_coeffs")

    def __init__(self, sig: Signature, coeffs=None):
        object.__setattr__(self, "sig", sig)
        clean = {}
        if coeffs:
            limit = 1 << sig.n
            for mask, value in dict(coeffs).items():
                if not 0 <= mask < limit:
                    raise ValueError(f"blade mask {mask} out of range for signature {sig}")
                value = Fraction(value)
                if value:
                    clean[mask] = value
        object.__setattr__(self, "_coeffs", clean)

    @classmethod
    def _raw(cls, sig: Signature, coeffs: dict) -> "Multivector":
        """Internal constructor: coeffs already validated Fractions, may hold zeros."""
        self = object.__new__(cls)
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "_coeffs", {m: c for m, c in coeffs.items() if c})
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # constructors

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls._raw(sig, {})

    @classmethod
    def scalar(cls, sig: Signature, value) -> "Multivector":
        return cls._raw(sig, {0: Fraction(value)})

    @classmethod
    def one(cls, sig: Signature) -> "Multivector":
        return cls.scalar(sig, 1)

    @classmethod
    def basis_blade(cls, sig: Signature, mask: Blade, coefficient=1) -> "Multivector":
        _check_blade(mask, sig)
        return cls._raw(sig, {mask: Fraction(coefficient)})

    @classmethod
    def generator(cls, sig: Signature, index: int) -> "Multivector":
        """The grade-1 generator e_index (1-based)."""
        if not 1 <= index <= sig.n:
            raise ValueError(f"generator index {index} out of range 1..{sig.n}")
        return cls._raw(sig, {1 << (index - 1): _ONE})

    # inspection

    def terms(self) -> tuple[tuple[Blade, Rational], ...]:
        """Coefficients as (mask, value) pairs in ascending mask order."""
        return tuple(sorted(self._coeffs.items()))

    def coefficient(self, mask: Blade) -> Rational:
        _check_blade(mask, self.sig)
        return self._coeffs.get(mask, _ZERO)

    def scalar_part(self) -> Rational:
        return self._coeffs.get(0, _ZERO)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_scalar(self) -> bool:
        return all(mask == 0 for mask in self._coeffs)

    def grades(self) -> tuple[int, ...]:
        return tuple(sorted({mask.bit_count() for mask in self._coeffs}))

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.sig == other.sig and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            value = Fraction(other)
            if not value:
                return self.is_zero()
            return self._coeffs == {0: value}
        return NotImplemented

    def __hash__(self):
        return hash((self.sig, tuple(sorted(self._coeffs.items()))))

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        from .expr import pretty_print

        return f"<{pretty_print(self)} in Cl{self.sig}>"

    # arithmetic sugar, delegating to the module-level operations

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Multivector.scalar(self.sig, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Multivector.scalar(self.sig, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return add(self, scalar_mul(-1, other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return scalar_mul(-1, self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scalar_mul(other, self)
        if not isinstance(other, Multivector):
            return NotImplemented
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scalar_mul(other, self)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return scalar_mul(Fraction(1, 1) / Fraction(other), self)
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Multivector.one(self.sig)
        for _ in range(exponent):
            result = geometric_product(result, self)
        return result


def _require_same_signature(x: Multivector, y: Multivector) -> None:
    if x.sig != y.sig:
        raise SignatureMismatch(f"signatures differ: {x.sig} vs {y.sig}")


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    """Bilinear extension of the blade product; associative and unital."""
    _require_same_signature(x, y)
    sig = x.sig
    neg_mask = _negative_mask(sig)
    zero_mask = _zero_mask(sig)
    acc: dict = {}
    for a, ca in x._coeffs.items():
        for b, cb in y._coeffs.items():
            sign = _blade_mul_sign(a, b, neg_mask, zero_mask)
            if sign == 0:
                continue
            mask = a ^ b
            term = ca * cb if sign == 1 else -(ca * cb)
            prior = acc.get(mask)
            acc[mask] = term if prior is None else prior + term
    return Multivector._raw(sig, acc)


def add(x: Multivector, y: Multivector) -> Multivector:
    _require_same_signature(x, y)
    acc = dict(x._coeffs)
    for mask, value in y._coeffs.items():
        prior = acc.get(mask)
        acc[mask] = value if prior is None else prior + value
    return Multivector._raw(x.sig, acc)


def scalar_mul(c, x: Multivector) -> Multivector:
    c = Fraction(c)
    return Multivector._raw(x.sig, {mask: c * value for mask, value in x._coeffs.items()})


def grade_projection(x: Multivector, k: int) -> Multivector:
    """Keep exactly the blades of grade k."""
    if not 0 <= k <= x.sig.n:
        raise ValueError(f"grade {k} out of range 0..{x.sig.n}")
    return Multivector._raw(
        x.sig, {mask: value for mask, value in x._coeffs.items() if mask.bit_count() == k}
    )


def even_part(x: Multivector) -> Multivector:
    return Multivector._raw(
        x.sig, {mask: value for mask, value in x._coeffs.items() if mask.bit_count() % 2 == 0}
    )


def odd_part(x: Multivector) -> Multivector:
    return Multivector._raw(
        x.sig, {mask: value for mask, value in x._coeffs.items() if mask.bit_count() % 2 == 1}
    )


_INVOLUTION_KINDS = ("grade", "reverse", "conjugate")


def _involution_negates(kind: str, grade: int) -> bool:
    if kind == "grade":
        return grade % 2 == 1
    if kind == "reverse":
        return grade % 4 in (2, 3)
    if kind == "conjugate":
        return grade % 4 in (1, 2)
    raise ValueError(f"unknown involution kind {kind!r}; expected one of {_INVOLUTION_KINDS}")


def involution(x: Multivector, kind: str) -> Multivector:
    """Canonical (anti)automorphisms, blade by blade.

    kind "grade": sign (-1)^k, the automorphism negating each generator.
    kind "reverse": sign (-1)^(k(k-1)/2), the antiautomorphism reversing
    products.  kind "conjugate": their composition, sign (-1)^(k(k+1)/2).
    """
    return Multivector._raw(
        x.sig,
        {
            mask: (-value if _involution_negates(kind, mask.bit_count()) else value)
            for mask, value in x._coeffs.items()
        },
    )


def grade_involution(x: Multivector) -> Multivector:
    return involution(x, "grade")


def reversion(x: Multivector) -> Multivector:
    return involution(x, "reverse")


def clifford_conjugation(x: Multivector) -> Multivector:
    return involution(x, "conjugate")


def norm(x: Multivector) -> Multivector:
    """The full product x * conjugate(x).

    A multivector in general; a scalar exactly when x lies in the
    Clifford-Lipschitz group of a regular form.
    """
    return geometric_product(x, clifford_conjugation(x))


def embed_vector(coords, sig: Signature) -> Multivector:
    """Grade-1 element with the given coordinates; embed(v)^2 = Phi(v)."""
    coords = list(coords)
    if len(coords) != sig.n:
        raise DimensionMismatch(f"expected {sig.n} coordinates, got {len(coords)}")
    return Multivector._raw(
        sig, {1 << i: Fraction(value) for i, value in enumerate(coords) if Fraction(value)}
    )


def extract_vector(x: Multivector) -> list[Rational]:
    """Coordinates of a purely grade-1 multivector."""
    coords = [_ZERO] * x.sig.n
    for mask, value in x._coeffs.items():
        if mask.bit_count() != 1:
            raise NotAVector(f"component {blade_name(mask, x.sig.n)} has grade {mask.bit_count()}")
        coords[mask.bit_length() - 1] = value
    return coords


def inverse(x: Multivector) -> Multivector:
    """Two-sided inverse, found by solving L_x y = 1 exactly.

    L_x is the 2^n x 2^n matrix of left multiplication by x on the blade
    basis.  A right inverse in a finite-dimensional unital associative
    algebra is automatically two-sided; both sides are still checked.
    """
    sig = x.sig
    dim = 1 << sig.n
    if x.is_zero():
        raise NotInvertible("zero is not invertible")
    columns = []
    for b in range(dim):
        col = [_ZERO] * dim
        for a, ca in x._coeffs.items():
            coef, mask = blade_mul(a, b, sig)
            if coef:
                col[mask] += ca * coef
        columns.append(col)
    matrix = [[columns[c][r] for c in range(dim)] for r in range(dim)]
    rhs = [_ONE] + [_ZERO] * (dim - 1)
    solution = _linalg.solve(matrix, rhs)
    if solution is None:
        raise NotInvertible("element has no inverse")
    y = Multivector._raw(sig, {mask: value for mask, value in enumerate(solution)})
    one = Multivector.one(sig)
    if geometric_product(x, y) != one or geometric_product(y, x) != one:
        raise NotInvertible("element has no two-sided inverse")
    return y


def multiplication_table(sig: Signature, cap: int = DEFAULT_DIMENSION_CAP):
    """Complete blade product table, table[a][b] = (coefficient, mask).

    Uses a per-row parity mask so the 4^n entries cost one AND and one
    popcount each; the kernel agrees with blade_mul on every pair (tested).
    """
    if sig.n > cap:
        raise DimensionCapExceeded(f"signature {sig} has n={sig.n} > cap {cap}")
    dim = 1 << sig.n
    neg_mask = _negative_mask(sig)
    zero_mask = _zero_mask(sig)
    table = []
    for a in range(dim):
        # bit t of parity holds the parity of the factor count of a above index t+1
        parity = 0
        for t in range(sig.n):
            if (a >> (t + 1)).bit_count() & 1:
                parity |= 1 << t
        row = []
        for b in range(dim):
            shared = a & b
            if shared & zero_mask:
                row.append((_ZERO, a ^ b))
                continue
            exponent = (b & parity).bit_count() + (shared & neg_mask).bit_count()
            row.append((_MINUS_ONE if exponent & 1 else _ONE, a ^ b))
        table.append(row)
    return table
