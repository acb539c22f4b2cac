"""Idempotent calculus and algebraic spinor spaces.

A complete set of 2^k primitive orthogonal idempotents is built from k
commuting, multiplicatively independent basis blades squaring to +1, with
k = q - r(q - p) where r is the Radon-Hurwitz sequence.  Minimal left ideals
are spanned by exact row reduction of the blade images b * f; the division
ring f * A * f fixes the coefficient ring (R, C, or H) of the spinor module;
the center decides simplicity; E_ij elements realize the equivalence of the
minimal representations inside one simple component.

Everything here requires a regular signature (s = 0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .core_algebra import (
    DEFAULT_DIMENSION_CAP,
    Multivector,
    Signature,
    add,
    blade_mul,
    blade_name,
    geometric_product,
    scalar_mul,
)
from .errors import (
    DegenerateForm,
    DimensionCapExceeded,
    NoSolution,
    NotIdempotent,
    NotSimple,
    SearchFailed,
    SignatureMismatch,
    UnexpectedDimension,
)

_HALF = Fraction(1, 2)

_RADON_HURWITZ_BASE = (0, 1, 2, 2, 3, 3, 3, 3)


def radon_hurwitz(j: int) -> int:
    """The sequence 0,1,2,2,3,3,3,3 on 0..7, extended by r(j+8) = r(j) + 4.

    The same recursion applied downward defines the value for negative j.
    """
    return _RADON_HURWITZ_BASE[j % 8] + 4 * (j // 8)


def idempotent_count_exponent(sig: Signature) -> int:
    """The exponent k with 2^k primitive idempotents: k = q - r(q - p)."""
    if sig.s:
        raise DegenerateForm("idempotent structure requires a regular signature")
    k = sig.q - radon_hurwitz(sig.q - sig.p)
    assert k >= 0, f"negative idempotent exponent for {sig}"
    return k


def _blade_squares_to_one(mask: int, sig: Signature) -> bool:
    coef, out = blade_mul(mask, mask, sig)
    return out == 0 and coef == 1


def _blades_commute(a: int, b: int, sig: Signature) -> bool:
    return blade_mul(a, b, sig)[0] == blade_mul(b, a, sig)[0]


def _dependent_on(masks, candidate: int) -> bool:
    """True when some nonempty sub-product of masks lands on candidate.

    Blade products live on XOR of masks, so a sub-product of the chosen
    blades times the candidate is scalar exactly when the masks XOR to 0.
    """
    for size in range(len(masks) + 1):
        for subset in itertools.combinations(masks, size):
            acc = candidate
            for m in subset:
                acc ^= m
            if acc == 0:
                return True
    return False


@dataclass(frozen=True)
class CommutingBladeSet:
    """Commuting blades squaring to +1 with no nonempty sub-product equal to +-1."""

    sig: Signature
    blades: tuple[int, ...]

    def __post_init__(self):
        seen = []
        for mask in self.blades:
            if not _blade_squares_to_one(mask, self.sig):
                raise ValueError(f"blade {blade_name(mask, self.sig.n)} does not square to +1")
            if any(not _blades_commute(mask, other, self.sig) for other in seen):
                raise ValueError(f"blade {blade_name(mask, self.sig.n)} does not commute with the set")
            if _dependent_on(seen, mask):
                raise ValueError("blades are not multiplicatively independent")
            seen.append(mask)


def find_commuting_blades(sig: Signature, cap: int = DEFAULT_DIMENSION_CAP) -> CommutingBladeSet:
    """Deterministic search for k commuting independent +1-square blades.

    Depth-first over blade masks in ascending order, so the result is the
    lexicographically smallest solution.  Exhaustion would contradict the
    counting theorem and is reported as SearchFailed.
    """
    if sig.s:
        raise DegenerateForm("blade search requires a regular signature")
    if sig.n > cap:
        raise DimensionCapExceeded(f"signature {sig} has n={sig.n} > cap {cap}")
    k = idempotent_count_exponent(sig)
    dim = 1 << sig.n
    chosen: list[int] = []

    def admissible(mask: int) -> bool:
        return (
            _blade_squares_to_one(mask, sig)
            and all(_blades_commute(mask, other, sig) for other in chosen)
            and not _dependent_on(chosen, mask)
        )

    def extend(start: int) -> bool:
        if len(chosen) == k:
            return True
        for mask in range(start, dim):
            if admissible(mask):
                chosen.append(mask)
                if extend(mask + 1):
                    return True
                chosen.pop()
        return False

    if not extend(1):
        raise SearchFailed(f"no commuting blade set of size {k} in Cl{sig}")
    return CommutingBladeSet(sig, tuple(chosen))


@dataclass(frozen=True)
class IdempotentSet:
    """All 2^k products prod (1 + eps_t u_t) / 2: a complete orthogonal set."""

    idems: tuple[Multivector, ...]
    generating_blades: CommutingBladeSet

    def __post_init__(self):
        sig = self.generating_blades.sig
        one = Multivector.one(sig)
        total = Multivector.zero(sig)
        for f in self.idems:
            if geometric_product(f, f) != f:
                raise ValueError("member is not idempotent")
            total = add(total, f)
        if total != one:
            raise ValueError("idempotents do not sum to 1")
        for i, f in enumerate(self.idems):
            for g in self.idems[i + 1 :]:
                if not geometric_product(f, g).is_zero() or not geometric_product(g, f).is_zero():
                    raise ValueError("idempotents are not pairwise orthogonal")


def build_idempotent_set(blades: CommutingBladeSet) -> IdempotentSet:
    """Expand every sign choice of prod (1 + eps * u) / 2 over the blade set."""
    sig = blades.sig
    one = Multivector.one(sig)
    idems = []
    for signs in itertools.product((1, -1), repeat=len(blades.blades)):
        f = one
        for eps, mask in zip(signs, blades.blades):
            factor = add(
                scalar_mul(_HALF, one),
                Multivector.basis_blade(sig, mask, Fraction(eps, 2)),
            )
            f = geometric_product(f, factor)
        idems.append(f)
    return IdempotentSet(tuple(idems), blades)


def _coords(x: Multivector) -> list[Fraction]:
    out = [Fraction(0)] * (1 << x.sig.n)
    for mask, value in x.terms():
        out[mask] = value
    return out


def _from_coords(sig: Signature, coords) -> Multivector:
    return Multivector(sig, {mask: value for mask, value in enumerate(coords) if value})


def _require_idempotent(f: Multivector) -> None:
    if geometric_product(f, f) != f:
        raise NotIdempotent("element does not satisfy f*f = f")


@dataclass(frozen=True)
class IdealBasis:
    """Row-reduced basis of the left ideal generated by an idempotent."""

    generator: Multivector
    basis: tuple[Multivector, ...]
    dim: int
    pivots: tuple[int, ...]  # RREF pivot blade masks, used for coordinate reads

    def __post_init__(self):
        for b in self.basis:
            if geometric_product(b, self.generator) != b:
                raise ValueError("basis element is not stabilized by the generator")

    @property
    def sig(self) -> Signature:
        return self.generator.sig


def left_ideal_basis(f: Multivector) -> IdealBasis:
    """Exact row reduction of {b * f : b a basis blade} to a canonical basis."""
    _require_idempotent(f)
    sig = f.sig
    rows = [_coords(geometric_product(Multivector.basis_blade(sig, b), f)) for b in range(1 << sig.n)]
    reduced, pivot_cols = _linalg.rref(rows)
    basis = tuple(_from_coords(sig, reduced[i]) for i in range(len(pivot_cols)))
    return IdealBasis(f, basis, len(pivot_cols), tuple(pivot_cols))


def left_ideal_dimension(f: Multivector) -> int:
    """dim A*f as the trace of the projector x -> x * f.

    Right multiplication by an idempotent is a projection onto the ideal, and
    the only term of b * f landing back on blade b is the scalar term of f,
    so the trace is 2^n times the scalar coefficient of f.  Agrees with
    len(left_ideal_basis(f).basis); this form stays cheap in high dimension.
    """
    _require_idempotent(f)
    value = f.scalar_part() * (1 << f.sig.n)
    assert value.denominator == 1 and value >= 0
    return int(value)


def _commutation_sign(a: int, b: int) -> int:
    """+1 when blades a and b commute, -1 when they anticommute (s = 0 forms)."""
    exponent = a.bit_count() * b.bit_count() - (a & b).bit_count()
    return -1 if exponent & 1 else 1


def peirce_dimension(f: Multivector, g: Multivector) -> int:
    """dim f*A*g as the trace of the projector x -> f * x * g.

    For basis blades, m * b * m' contributes to blade b only when m = m',
    and then m * b * m = sigma(m,b) * tau_m * b with sigma the commutation
    sign and tau_m the scalar square of m.  Hence the trace is
    sum_m f_m g_m tau_m sum_b sigma(m,b), which stays cheap in high
    dimension.  Agrees with the row-reduction rank (tested).
    """
    if f.sig != g.sig:
        raise SignatureMismatch(f"signatures differ: {f.sig} vs {g.sig}")
    sig = f.sig
    if sig.s:
        raise DegenerateForm("Peirce dimensions require a regular signature")
    _require_idempotent(f)
    _require_idempotent(g)
    dim = 1 << sig.n
    g_coeffs = dict(g.terms())
    total = Fraction(0)
    for mask, f_value in f.terms():
        g_value = g_coeffs.get(mask)
        if g_value is None:
            continue
        tau = blade_mul(mask, mask, sig)[0]
        sigma_sum = sum(_commutation_sign(mask, b) for b in range(dim))
        total += f_value * g_value * tau * sigma_sum
    assert total.denominator == 1 and total >= 0
    return int(total)


@dataclass(frozen=True)
class DivisionRingInfo:
    """Basis and kind of the division ring f * A * f for a primitive idempotent."""

    basis: tuple[Multivector, ...]
    dim: int
    kind: str  # "R", "C", or "H"


def _coordinates_in_span(vectors, target):
    """Coefficients of target against the given coordinate rows, or None."""
    return _linalg.coordinates_in_basis([_coords(v) for v in vectors], _coords(target))


def _scalar_multiple_of(x: Multivector, base: Multivector):
    """lambda with x = lambda * base, or None."""
    coeffs = _coordinates_in_span([base], x)
    return coeffs[0] if coeffs is not None else None


def _square_decomposition(u: Multivector, f: Multivector):
    """(alpha, beta) with u*u = alpha*f + beta*u, or None outside that plane."""
    coeffs = _coordinates_in_span([f, u], geometric_product(u, u))
    return (coeffs[0], coeffs[1]) if coeffs is not None else None


def _traceless_part(u: Multivector, f: Multivector):
    if _scalar_multiple_of(u, f) is not None:
        return Multivector.zero(u.sig)
    decomposition = _square_decomposition(u, f)
    if decomposition is None:
        return None
    _, beta = decomposition
    return add(u, scalar_mul(-beta / 2, f))


def _anticommutator(x: Multivector, y: Multivector) -> Multivector:
    return add(geometric_product(x, y), geometric_product(y, x))


def _negative_square_scalar(u: Multivector, f: Multivector):
    """mu < 0 with u*u = mu*f, or None."""
    mu = _scalar_multiple_of(geometric_product(u, u), f)
    if mu is None or mu >= 0:
        return None
    return mu


def _classify_quaternionic(basis, f: Multivector) -> bool:
    """Exhibit three pairwise anticommuting units with negative square."""
    traceless = []
    for u in basis:
        w = _traceless_part(u, f)
        if w is None:
            return False
        if not w.is_zero():
            traceless.append(w)
    if not traceless:
        return False
    u1 = traceless[0]
    nu = _negative_square_scalar(u1, f)
    if nu is None:
        return False
    u2 = None
    for w in traceless[1:]:
        paired = _scalar_multiple_of(_anticommutator(u1, w), f)
        if paired is None:
            return False
        candidate = add(w, scalar_mul(-paired / (2 * nu), u1))
        if not candidate.is_zero():
            u2 = candidate
            break
    if u2 is None:
        return False
    u3 = geometric_product(u1, u2)
    units = (u1, u2, u3)
    for u in units:
        if _negative_square_scalar(u, f) is None:
            return False
    for a, b in itertools.combinations(units, 2):
        if not _anticommutator(a, b).is_zero():
            return False
    return True


def division_ring_info(f: Multivector) -> DivisionRingInfo:
    """Basis of f*A*f with its kind: dim 1 -> R, 2 -> C, 4 -> H.

    The dimension is cross-checked structurally: for C a traceless element
    must square to a negative multiple of f, for H three pairwise
    anticommuting such units must exist.  Any other outcome means f is not
    primitive and is reported as UnexpectedDimension.
    """
    _require_idempotent(f)
    sig = f.sig
    rows = []
    for b in range(1 << sig.n):
        sandwich = geometric_product(geometric_product(f, Multivector.basis_blade(sig, b)), f)
        rows.append(_coords(sandwich))
    reduced = _linalg.row_space_basis(rows)
    basis = tuple(_from_coords(sig, row) for row in reduced)
    dim = len(basis)
    if dim == 1:
        kind = "R"
    elif dim == 2:
        candidate = next((u for u in basis if _scalar_multiple_of(u, f) is None), None)
        w = _traceless_part(candidate, f) if candidate is not None else None
        if w is None or w.is_zero() or _negative_square_scalar(w, f) is None:
            raise UnexpectedDimension("f*A*f of dimension 2 splits; f is not primitive")
        kind = "C"
    elif dim == 4:
        if not _classify_quaternionic(basis, f):
            raise UnexpectedDimension("f*A*f of dimension 4 is not quaternionic")
        kind = "H"
    else:
        raise UnexpectedDimension(f"f*A*f has dimension {dim}, expected 1, 2, or 4")
    return DivisionRingInfo(basis, dim, kind)


def _generator_masks(sig: Signature):
    return [1 << i for i in range(sig.n)]


def algebra_center(sig: Signature) -> tuple[Multivector, ...]:
    """Canonical basis of the center, from [x, e_i] = 0 for all generators.

    On a regular form the commutator system is diagonal in the blade basis:
    [b, e_i] is a single signed blade on mask b XOR e_i, and distinct b map
    to distinct masks, so a blade belongs to the center exactly when it
    commutes with every generator.
    """
    if sig.s:
        raise DegenerateForm("center computation requires a regular signature")
    members = []
    for mask in range(1 << sig.n):
        if all(
            blade_mul(mask, g, sig)[0] == blade_mul(g, mask, sig)[0]
            for g in _generator_masks(sig)
        ):
            members.append(mask)
    return tuple(Multivector.basis_blade(sig, mask) for mask in members)


def is_simple(sig: Signature) -> bool:
    """True when the algebra has no proper two-sided ideal.

    A center of dimension 1 always means simple.  A two-dimensional center
    is spanned by 1 and a central blade z with z*z = +-1: the algebra splits
    into two simple components exactly when z*z = +1 (then (1 +- z)/2 are
    central idempotents); z*z = -1 leaves the algebra simple.
    """
    center = algebra_center(sig)
    if len(center) == 1:
        return True
    assert len(center) == 2, "regular Clifford center has dimension 1 or 2"
    z_mask = center[1].terms()[0][0]
    return blade_mul(z_mask, z_mask, sig)[0] == -1


def faithful_ideal(sig: Signature) -> IdealBasis:
    """A left ideal on which left multiplication is faithful.

    For a simple algebra any minimal ideal works and the first idempotent of
    the canonical set is used.  For a split algebra the ideal of f + g is
    returned, with f and g minimal idempotents absorbed by the two central
    idempotents (1 + z)/2 and (1 - z)/2.
    """
    idems = build_idempotent_set(find_commuting_blades(sig)).idems
    if is_simple(sig):
        return left_ideal_basis(idems[0])
    center = algebra_center(sig)
    one = Multivector.one(sig)
    c_plus = scalar_mul(_HALF, add(one, center[1]))
    c_minus = scalar_mul(_HALF, add(one, scalar_mul(-1, center[1])))
    f = next(h for h in idems if geometric_product(h, c_plus) == h)
    g = next(h for h in idems if geometric_product(h, c_minus) == h)
    return left_ideal_basis(add(f, g))


def _coordinates_against(ideal: IdealBasis, y: Multivector):
    """Coordinates of y in the RREF ideal basis, or None when y leaves the span."""
    coords = _coords(y)
    coefficients = [coords[p] for p in ideal.pivots]
    reconstructed = Multivector.zero(ideal.sig)
    for c, b in zip(coefficients, ideal.basis):
        reconstructed = add(reconstructed, scalar_mul(c, b))
    if reconstructed != y:
        return None
    return coefficients


def regular_rep_matrix(x: Multivector, ideal: IdealBasis):
    """Matrix of left multiplication by x on the ideal basis (columns = images).

    Column j holds the coordinates of x * basis_j, so the map is a unital
    homomorphism: rep(x*y) = rep(x) rep(y).
    """
    if x.sig != ideal.sig:
        raise SignatureMismatch(f"signatures differ: {x.sig} vs {ideal.sig}")
    columns = []
    for b in ideal.basis:
        coords = _coordinates_against(ideal, geometric_product(x, b))
        if coords is None:
            raise NoSolution("image leaves the ideal span")
        columns.append(coords)
    return [[columns[c][r] for c in range(len(columns))] for r in range(ideal.dim)]


def interbasis_element(f_i: Multivector, f_j: Multivector):
    """(E_ij, E_ji) with E_ij * E_ji = f_i and E_ji * E_ij = f_j.

    E_ij is any nonzero element of f_i * A * f_j (NotSimple when that space
    is zero, which happens across central components of a split algebra);
    its partial inverse E_ji is found by an exact linear solve.
    """
    _require_idempotent(f_i)
    _require_idempotent(f_j)
    if f_i.sig != f_j.sig:
        raise SignatureMismatch(f"signatures differ: {f_i.sig} vs {f_j.sig}")
    if f_i == f_j:
        return f_i, f_i
    sig = f_i.sig
    dim = 1 << sig.n

    def sandwich_basis(left, right):
        rows = []
        for b in range(dim):
            rows.append(_coords(geometric_product(geometric_product(left, Multivector.basis_blade(sig, b)), right)))
        return [_from_coords(sig, row) for row in _linalg.row_space_basis(rows)]

    space_ij = sandwich_basis(f_i, f_j)
    if not space_ij:
        raise NotSimple("f_i * A * f_j is zero; the idempotents sit in different components")
    e_ij = space_ij[0]
    space_ji = sandwich_basis(f_j, f_i)
    if not space_ji:
        raise NotSimple("f_j * A * f_i is zero; the idempotents sit in different components")
    # solve e_ij * v = f_i and v * e_ij = f_j for v in span(space_ji)
    columns = []
    for w in space_ji:
        columns.append(_coords(geometric_product(e_ij, w)) + _coords(geometric_product(w, e_ij)))
    matrix = [[columns[c][r] for c in range(len(columns))] for r in range(2 * dim)]
    rhs = _coords(f_i) + _coords(f_j)
    solution = _linalg.solve(matrix, rhs)
    if solution is None:
        raise NoSolution("no partial inverse for the chosen element")
    e_ji = Multivector.zero(sig)
    for t, w in zip(solution, space_ji):
        e_ji = add(e_ji, scalar_mul(t, w))
    assert geometric_product(e_ij, e_ji) == f_i and geometric_product(e_ji, e_ij) == f_j
    return e_ij, e_ji


@dataclass(frozen=True)
class RepresentationIntertwiner:
    """Invertible change of basis phi with rep_j(a) = phi rep_i(a) phi^-1."""

    source: IdealBasis
    target: IdealBasis
    matrix: tuple[tuple[Fraction, ...], ...]
    inverse: tuple[tuple[Fraction, ...], ...]


def representation_intertwiner(f_i: Multivector, f_j: Multivector) -> RepresentationIntertwiner:
    """Equivalence of the regular representations on A*f_i and A*f_j.

    phi(psi) = psi * E_ij maps A*f_i onto A*f_j and commutes with left
    multiplication; psi * E_ji inverts it.
    """
    e_ij, e_ji = interbasis_element(f_i, f_j)
    source = left_ideal_basis(f_i)
    target = left_ideal_basis(f_j)

    def map_matrix(ideal_from, ideal_to, mover):
        columns = []
        for b in ideal_from.basis:
            coords = _coordinates_against(ideal_to, geometric_product(b, mover))
            if coords is None:
                raise NoSolution("intertwiner image leaves the target ideal")
            columns.append(coords)
        return [[columns[c][r] for c in range(len(columns))] for r in range(ideal_to.dim)]

    forward = map_matrix(source, target, e_ij)
    backward = map_matrix(target, source, e_ji)
    if not _linalg.mat_eq(_linalg.mat_mul(forward, backward), _linalg.identity(target.dim)):
        raise NoSolution("intertwiner is not invertible")
    if not _linalg.mat_eq(_linalg.mat_mul(backward, forward), _linalg.identity(source.dim)):
        raise NoSolution("intertwiner is not invertible")
    freeze = lambda m: tuple(tuple(row) for row in m)
    return RepresentationIntertwiner(source, target, freeze(forward), freeze(backward))
