"""Command-line interface.

Every pipeline is drivable from here: blade tables, expression evaluation,
vector classification, diagonalization, reflections, isometry factorization,
Pin lifts, group membership, idempotents, ideals, representation matrices,
and the center.  Results go to stdout, error text to stderr.  Exit codes:
0 success, 1 domain error (degenerate form, non-isometry, non-invertible,
cap exceeded, ...), 2 parse or usage error.

JSON mode emits one object with keys {command, signature, result, checks};
all rationals are rendered as exact strings "a/b".  The --approx flag adds
float renderings for display; it never changes the exact fields.  Matrices
and vectors use the shared text format: rows separated by ';', entries by
',', rationals as "a/b" or "a".
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import _linalg
from .core_algebra import (
    DEFAULT_DIMENSION_CAP,
    Multivector,
    Signature,
    blade_name,
    geometric_product,
    multiplication_table,
    norm,
)
from .errors import (
    CliffordError,
    DimensionCapExceeded,
    DimensionMismatch,
    ParseError,
    UnexpectedDimension,
)
from .expr import parse_multivector, pretty_print
from .groups import (
    in_clifford_group,
    in_pin,
    in_spin,
    lift_isometry,
    twisted_adjoint_matrix,
)
from .quadratic_space import (
    BilinearForm,
    cartan_dieudonne_factor,
    classify_vector,
    format_matrix,
    format_vector,
    orthogonal_diagonalize,
    parse_matrix,
    parse_vector,
    quadratic_value,
    reflection_matrix,
)
from .spinors import (
    algebra_center,
    build_idempotent_set,
    division_ring_info,
    faithful_ideal,
    find_commuting_blades,
    idempotent_count_exponent,
    is_simple,
    left_ideal_basis,
    regular_rep_matrix,
)

MAX_CAP = 16


def parse_signature(text: str) -> Signature:
    parts = [piece.strip() for piece in text.split(",")]
    if len(parts) not in (2, 3):
        raise ParseError(f"signature must be \"p,q\" or \"p,q,s\", got {text!r}")
    try:
        numbers = [int(piece) for piece in parts]
    except ValueError:
        raise ParseError(f"signature entries must be integers, got {text!r}") from None
    if min(numbers) < 0:
        raise ParseError(f"signature entries must be non-negative, got {text!r}")
    if len(numbers) == 2:
        numbers.append(0)
    return Signature(*numbers)


def _rat(value) -> str:
    return str(Fraction(value))


def _vec(values) -> list:
    return [_rat(v) for v in values]


def _mat(rows) -> list:
    return [_vec(row) for row in rows]


def _approx_terms(x: Multivector) -> dict:
    return {blade_name(mask, x.sig.n): float(value) for mask, value in x.terms()}


def _form_from_matrix_text(text: str) -> BilinearForm:
    rows = parse_matrix(text)
    try:
        return BilinearForm.from_rows(rows)
    except (ValueError, DimensionMismatch) as exc:
        raise ParseError(str(exc)) from None


def _entry_text(coefficient: Fraction, mask: int, n: int) -> str:
    if coefficient == 0:
        return "0"
    name = blade_name(mask, n)
    if mask == 0:
        return _rat(coefficient)
    if coefficient == 1:
        return name
    if coefficient == -1:
        return "-" + name
    return f"{_rat(coefficient)}*{name}"


def _grid_lines(header: list, rows: list) -> list:
    table = [header] + rows
    widths = [max(len(row[c]) for row in table) for c in range(len(header))]
    return ["  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)) for row in table]


# command handlers: each returns (result, checks, text_lines)


def cmd_table(args, sig: Signature):
    table = multiplication_table(sig, cap=args.cap)
    dim = 1 << sig.n
    names = [blade_name(mask, sig.n) for mask in range(dim)]
    entries = [
        [_entry_text(coefficient, mask, sig.n) for coefficient, mask in row] for row in table
    ]
    result = {"blades": names, "entries": entries}
    checks = {}
    lines = _grid_lines([""] + names, [[names[a]] + entries[a] for a in range(dim)])
    return result, checks, lines


def cmd_eval(args, sig: Signature):
    x = parse_multivector(args.expression, sig)
    result = {"value": pretty_print(x)}
    lines = [result["value"]]
    if args.approx:
        result["approx"] = _approx_terms(x)
        lines.append(f"approx: {result['approx']}")
    return result, {}, lines


def cmd_classify(args, sig: Signature):
    v = parse_vector(args.vector)
    form = BilinearForm.from_signature(sig)
    kind = classify_vector(form, v)
    value = quadratic_value(form, v)
    result = {"vector": _vec(v), "quadratic_value": _rat(value), "class": kind}
    lines = [f"vector: {format_vector(v)}", f"quadratic value: {_rat(value)}", f"class: {kind}"]
    if args.approx:
        result["quadratic_value_approx"] = float(value)
        lines.insert(2, f"quadratic value approx: {float(value)}")
    return result, {}, lines


def cmd_diagonalize(args, sig: Signature):
    form = _form_from_matrix_text(args.matrix)
    outcome = orthogonal_diagonalize(form)
    basis = outcome.basis_rows()
    diagonal = list(outcome.diag)
    # certify P^T B P = diag here so the report never lies
    congruent = _linalg.mat_eq(
        _linalg.mat_mul(_linalg.mat_mul(_linalg.transpose(basis), form.rows()), basis),
        [[diagonal[i] if i == j else Fraction(0) for j in range(form.n)] for i in range(form.n)],
    )
    result = {
        "basis": _mat(basis),
        "diagonal": _vec(diagonal),
        "signature": list(outcome.signature),
    }
    checks = {"congruence": congruent}
    lines = [
        f"basis: {format_matrix(basis)}",
        f"diagonal: {format_vector(diagonal)}",
        f"signature: ({outcome.signature[0]},{outcome.signature[1]},{outcome.signature[2]})",
        f"congruence check: {'pass' if congruent else 'FAIL'}",
    ]
    if args.approx:
        result["diagonal_approx"] = [float(d) for d in diagonal]
    return result, checks, lines


def cmd_reflect(args, sig: Signature):
    v = parse_vector(args.vector)
    form = BilinearForm.from_signature(sig)
    matrix = reflection_matrix(form, v)
    rows = matrix.rows()
    result = {"matrix": _mat(rows)}
    checks = {"isometry": True}  # certified by IsometryMatrix construction
    lines = [f"matrix: {format_matrix(rows)}"]
    return result, checks, lines


def cmd_factor(args, sig: Signature):
    form = BilinearForm.from_signature(sig)
    rows = parse_matrix(args.matrix)
    vectors = cartan_dieudonne_factor(form, rows)
    recomposed = _linalg.identity(sig.n)
    for w in vectors:
        recomposed = _linalg.mat_mul(recomposed, reflection_matrix(form, w).rows())
    recomposition = _linalg.mat_eq(recomposed, _linalg.to_matrix(rows))
    result = {"vectors": [_vec(w) for w in vectors], "count": len(vectors)}
    checks = {"recomposition": recomposition, "count_le_2n": len(vectors) <= 2 * sig.n}
    lines = [f"count: {len(vectors)}"]
    lines += [f"w{i + 1}: {format_vector(w)}" for i, w in enumerate(vectors)]
    lines.append(f"recomposition check: {'pass' if recomposition else 'FAIL'}")
    return result, checks, lines


def cmd_lift(args, sig: Signature):
    rows = parse_matrix(args.matrix)
    lift = lift_isometry(sig, rows)
    matches = twisted_adjoint_matrix(lift.element).rows() == _linalg.to_matrix(rows)
    result = {
        "element": pretty_print(lift.element),
        "n_value": _rat(lift.n_value),
        "reflection_count": lift.reflection_count,
        "needs_normalization": lift.needs_normalization,
    }
    checks = {"twisted_adjoint_matches": matches}
    lines = [
        f"element: {result['element']}",
        f"n_value: {result['n_value']}",
        f"reflection count: {lift.reflection_count}",
        f"needs normalization: {str(lift.needs_normalization).lower()}",
        f"twisted adjoint check: {'pass' if matches else 'FAIL'}",
    ]
    if args.approx:
        approx = {
            blade_name(mask, sig.n): value for mask, value in lift.approx_normalized().items()
        }
        result["approx_normalized"] = approx
        lines.append(f"approx normalized: {approx}")
    return result, checks, lines


def cmd_check(args, sig: Signature):
    x = parse_multivector(args.expression, sig)
    n_mv = norm(x)
    n_text = _rat(n_mv.scalar_part()) if n_mv.is_scalar() else None
    result = {
        "element": pretty_print(x),
        "in_clifford_group": in_clifford_group(x),
        "in_pin": in_pin(x),
        "in_spin": in_spin(x),
        "n_value": n_text,
    }
    lines = [
        f"element: {result['element']}",
        f"in_clifford_group: {str(result['in_clifford_group']).lower()}",
        f"in_pin: {str(result['in_pin']).lower()}",
        f"in_spin: {str(result['in_spin']).lower()}",
        f"n_value: {n_text if n_text is not None else 'not scalar'}",
    ]
    return result, {}, lines


def cmd_idempotents(args, sig: Signature):
    blades = find_commuting_blades(sig, cap=args.cap)
    idset = build_idempotent_set(blades)
    one = Multivector.one(sig)
    total = Multivector.zero(sig)
    idempotent_ok = True
    orthogonal_ok = True
    for i, f in enumerate(idset.idems):
        total = total + f
        if geometric_product(f, f) != f:
            idempotent_ok = False
        for g in idset.idems[i + 1 :]:
            if not geometric_product(f, g).is_zero() or not geometric_product(g, f).is_zero():
                orthogonal_ok = False
    sum_ok = total == one
    result = {
        "exponent": idempotent_count_exponent(sig),
        "count": len(idset.idems),
        "blades": [blade_name(mask, sig.n) for mask in blades.blades],
        "idempotents": [pretty_print(f) for f in idset.idems],
    }
    checks = {
        "idempotent": idempotent_ok,
        "pairwise_orthogonal": orthogonal_ok,
        "sum_to_one": sum_ok,
    }
    lines = [
        f"exponent: {result['exponent']}",
        f"count: {result['count']}",
        f"blades: {', '.join(result['blades']) if result['blades'] else '(none)'}",
    ]
    lines += [f"f{i + 1}: {text}" for i, text in enumerate(result["idempotents"])]
    lines += [
        f"idempotency check: {'pass' if idempotent_ok else 'FAIL'}",
        f"orthogonality check: {'pass' if orthogonal_ok else 'FAIL'}",
        f"sum-to-one check: {'pass' if sum_ok else 'FAIL'}",
    ]
    return result, checks, lines


def cmd_ideal(args, sig: Signature):
    if args.faithful:
        ideal = faithful_ideal(sig)
    else:
        idems = build_idempotent_set(find_commuting_blades(sig, cap=args.cap)).idems
        ideal = left_ideal_basis(idems[0])
    division = None
    try:
        info = division_ring_info(ideal.generator)
        division = {"dimension": info.dim, "kind": info.kind}
    except UnexpectedDimension:
        pass  # faithful generator of a split algebra is not primitive
    result = {
        "generator": pretty_print(ideal.generator),
        "dimension": ideal.dim,
        "basis": [pretty_print(b) for b in ideal.basis],
        "division_ring": division,
    }
    checks = {"absorbs_generator": True}  # certified by IdealBasis construction
    lines = [f"generator: {result['generator']}", f"dimension: {ideal.dim}"]
    lines += [f"b{i + 1}: {text}" for i, text in enumerate(result["basis"])]
    if division is None:
        lines.append("division ring: n/a (generator is not primitive)")
    else:
        lines.append(f"division ring: {division['kind']} (dimension {division['dimension']})")
    return result, checks, lines


def cmd_rep(args, sig: Signature):
    ideal = faithful_ideal(sig)
    x = parse_multivector(args.expression, sig)
    matrix = regular_rep_matrix(x, ideal)
    unital = _linalg.mat_eq(
        regular_rep_matrix(Multivector.one(sig), ideal), _linalg.identity(ideal.dim)
    )
    square = _linalg.mat_eq(
        regular_rep_matrix(geometric_product(x, x), ideal), _linalg.mat_mul(matrix, matrix)
    )
    result = {"ideal_dimension": ideal.dim, "matrix": _mat(matrix)}
    checks = {"unital": unital, "homomorphism_square": square}
    lines = [
        f"ideal dimension: {ideal.dim}",
        f"matrix: {format_matrix(matrix)}",
        f"unital check: {'pass' if unital else 'FAIL'}",
        f"homomorphism check (x*x): {'pass' if square else 'FAIL'}",
    ]
    return result, checks, lines


def cmd_center(args, sig: Signature):
    basis = algebra_center(sig)
    simple = is_simple(sig)
    result = {
        "basis": [pretty_print(z) for z in basis],
        "dimension": len(basis),
        "simple": simple,
    }
    lines = [
        f"center basis: {', '.join(result['basis'])}",
        f"dimension: {len(basis)}",
        f"simple: {str(simple).lower()}",
    ]
    return result, {}, lines


_HANDLERS = {
    "table": cmd_table,
    "eval": cmd_eval,
    "classify": cmd_classify,
    "diagonalize": cmd_diagonalize,
    "reflect": cmd_reflect,
    "factor": cmd_factor,
    "lift": cmd_lift,
    "check": cmd_check,
    "idempotents": cmd_idempotents,
    "ideal": cmd_ideal,
    "rep": cmd_rep,
    "center": cmd_center,
}

_NEEDS_SIG = frozenset(_HANDLERS) - {"diagonalize"}


def _cap_type(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cap must be an integer, got {text!r}") from None
    if not 1 <= value <= MAX_CAP:
        raise argparse.ArgumentTypeError(f"cap must be between 1 and {MAX_CAP}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffalg",
        description="Exact computation in real Clifford algebras Cl(p,q,s).",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument(
        "--approx", action="store_true", help="add float renderings (display only)"
    )
    common.add_argument(
        "--cap",
        type=_cap_type,
        default=DEFAULT_DIMENSION_CAP,
        help=f"dimension cap on n (default {DEFAULT_DIMENSION_CAP}, max {MAX_CAP})",
    )
    sig_opt = argparse.ArgumentParser(add_help=False)
    sig_opt.add_argument("--sig", required=True, help='signature "p,q" or "p,q,s"')

    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("table", parents=[common, sig_opt], help="blade multiplication table")

    p = sub.add_parser("eval", parents=[common, sig_opt], help="evaluate an expression")
    p.add_argument("expression")

    p = sub.add_parser("classify", parents=[common, sig_opt], help="classify a vector")
    p.add_argument("vector", help='coordinates "v1,...,vn"')

    p = sub.add_parser("diagonalize", parents=[common], help="diagonalize a symmetric form")
    p.add_argument("--matrix", required=True, help='rows "a,b;c,d"')

    p = sub.add_parser("reflect", parents=[common, sig_opt], help="hyperplane reflection matrix")
    p.add_argument("--vector", required=True, help='axis coordinates "v1,...,vn"')

    p = sub.add_parser("factor", parents=[common, sig_opt], help="factor an isometry into reflections")
    p.add_argument("--matrix", required=True, help='rows "a,b;c,d"')

    p = sub.add_parser("lift", parents=[common, sig_opt], help="lift an isometry to the Pin group")
    p.add_argument("--matrix", required=True, help='rows "a,b;c,d"')

    p = sub.add_parser("check", parents=[common, sig_opt], help="group membership of an element")
    p.add_argument("expression")

    sub.add_parser("idempotents", parents=[common, sig_opt], help="primitive idempotent set")

    p = sub.add_parser("ideal", parents=[common, sig_opt], help="minimal left ideal basis")
    p.add_argument("--faithful", action="store_true", help="use the faithful ideal")

    p = sub.add_parser("rep", parents=[common, sig_opt], help="regular representation matrix")
    p.add_argument("expression")

    sub.add_parser("center", parents=[common, sig_opt], help="center basis and simplicity")

    return parser


_VALUE_OPTIONS = ("--sig", "--matrix", "--vector", "--cap")


def _merge_option_values(argv: list) -> list:
    """Turn ["--matrix", "-7/25,..."] into ["--matrix=-7/25,..."].

    argparse would otherwise mistake a leading-minus value for an option.
    Tokens after a literal "--" are positional and left untouched.
    """
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token == "--":
            out.extend(argv[i:])
            break
        if token in _VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_merge_option_values(list(argv)))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        sig = None
        if args.command in _NEEDS_SIG:
            sig = parse_signature(args.sig)
            if sig.n > args.cap:
                raise DimensionCapExceeded(
                    f"signature {sig} has n={sig.n} > cap {args.cap}"
                )
        result, checks, lines = _HANDLERS[args.command](args, sig)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CliffordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command == "diagonalize":
        signature_value = result["signature"]
    else:
        signature_value = [sig.p, sig.q, sig.s]
    if args.json:
        payload = {
            "command": args.command,
            "signature": signature_value,
            "result": result,
            "checks": checks,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
