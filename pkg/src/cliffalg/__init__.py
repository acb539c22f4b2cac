"""Exact real Clifford algebras Cl(p,q,s).

Multivector arithmetic over the rationals, canonical involutions, symmetric
bilinear forms with constructive Cartan-Dieudonne factorization, the
Clifford-Lipschitz/Pin/Spin groups with twisted-adjoint lifts, and algebraic
spinor spaces built from primitive idempotents and minimal left ideals.
"""

from .core_algebra import (
    Blade,
    DEFAULT_DIMENSION_CAP,
    Multivector,
    Rational,
    Signature,
    add,
    blade_from_indices,
    blade_grade,
    blade_indices,
    blade_mul,
    blade_name,
    clifford_conjugation,
    embed_vector,
    even_part,
    extract_vector,
    geometric_product,
    grade_involution,
    grade_projection,
    inverse,
    involution,
    multiplication_table,
    norm,
    odd_part,
    reversion,
    scalar_mul,
)
from .errors import (
    CliffordError,
    DegenerateForm,
    DimensionCapExceeded,
    DimensionMismatch,
    IsotropicVector,
    NoSolution,
    NotAVector,
    NotAnIsometry,
    NotIdempotent,
    NotInGroup,
    NotInvertible,
    NotSimple,
    NotStable,
    ParseError,
    SearchFailed,
    SignatureMismatch,
    UnexpectedDimension,
    ZeroVector,
)
from .expr import evaluate, parse, parse_multivector, pretty_print
from .groups import (
    GroupElement,
    LiftResult,
    in_clifford_group,
    in_pin,
    in_spin,
    lift_isometry,
    norm_scalar,
    twisted_adjoint_apply,
    twisted_adjoint_matrix,
)
from .quadratic_space import (
    BilinearForm,
    DiagonalizationResult,
    IsometryMatrix,
    cartan_dieudonne_factor,
    classify_vector,
    det_sign,
    evaluate_form,
    format_matrix,
    format_vector,
    is_degenerate,
    is_isometry,
    orthogonal_diagonalize,
    parse_matrix,
    parse_rational,
    parse_vector,
    quadratic_value,
    reflection_matrix,
    signature_of,
)
from .spinors import (
    CommutingBladeSet,
    DivisionRingInfo,
    IdealBasis,
    IdempotentSet,
    RepresentationIntertwiner,
    algebra_center,
    build_idempotent_set,
    division_ring_info,
    faithful_ideal,
    find_commuting_blades,
    idempotent_count_exponent,
    interbasis_element,
    is_simple,
    left_ideal_basis,
    left_ideal_dimension,
    peirce_dimension,
    radon_hurwitz,
    regular_rep_matrix,
    representation_intertwiner,
)

__all__ = [name for name in dir() if not name.startswith("_")]
