"""Quadratic forms: diagonalization, classification, reflections, the
constructive isometry factorization, and the shared text formats."""

import random
from fractions import Fraction

import pytest

from cliffalg import _linalg
from cliffalg import (
    BilinearForm,
    DegenerateForm,
    DimensionMismatch,
    IsometryMatrix,
    IsotropicVector,
    NotAnIsometry,
    ParseError,
    Signature,
    ZeroVector,
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
from support import rand_anisotropic_vector, rand_fraction, rand_isometry, rand_vector


def rand_symmetric(rng, n, span=4):
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            value = Fraction(rng.randint(-span, span))
            rows[i][j] = rows[j][i] = value
    return rows


def congruence_holds(form, result):
    p = result.basis_rows()
    lhs = _linalg.mat_mul(_linalg.mat_mul(_linalg.transpose(p), form.rows()), p)
    d = [
        [result.diag[i] if i == j else Fraction(0) for j in range(form.n)]
        for i in range(form.n)
    ]
    return _linalg.mat_eq(lhs, d)


class TestBilinearForm:
    def test_symmetry_required(self):
        with pytest.raises(ValueError):
            BilinearForm.from_rows([[0, 1], [0, 0]])

    def test_square_required(self):
        with pytest.raises(DimensionMismatch):
            BilinearForm.from_rows([[1, 0]])

    def test_from_signature(self):
        form = BilinearForm.from_signature(Signature(1, 2, 1))
        assert form.rows() == [
            [1, 0, 0, 0],
            [0, -1, 0, 0],
            [0, 0, -1, 0],
            [0, 0, 0, 0],
        ]

    def test_evaluate(self):
        form = BilinearForm.from_rows([[0, 1], [1, 0]])
        assert evaluate_form(form, [1, 0], [0, 1]) == 1
        assert quadratic_value(form, [1, 1]) == 2
        with pytest.raises(DimensionMismatch):
            evaluate_form(form, [1], [0, 1])


class TestClassify:
    def test_minkowski(self):
        form = BilinearForm.from_signature(Signature(1, 1))
        assert classify_vector(form, [2, 1]) == "timelike"
        assert classify_vector(form, [1, 2]) == "spacelike"
        assert classify_vector(form, [1, 1]) == "lightlike"
        assert classify_vector(form, [1, -1]) == "lightlike"

    def test_zero_vector_rejected(self):
        form = BilinearForm.from_signature(Signature(1, 1))
        with pytest.raises(ZeroVector):
            classify_vector(form, [0, 0])


class TestDiagonalize:
    def test_random_congruence_exact(self):
        rng = random.Random(101)
        for n in range(1, 6):
            for _ in range(40):
                form = BilinearForm.from_rows(rand_symmetric(rng, n))
                result = orthogonal_diagonalize(form)
                assert congruence_holds(form, result)
                p, q, s = result.signature
                assert p + q + s == n
                assert sum(1 for d in result.diag if d > 0) == p
                assert sum(1 for d in result.diag if d < 0) == q
                assert result.diag.count(Fraction(0)) == s
                assert _linalg.determinant(result.basis_rows()) != 0

    def test_zero_pivot_rescue(self):
        # hyperbolic plane: both diagonal entries are zero
        form = BilinearForm.from_rows([[0, 1], [1, 0]])
        result = orthogonal_diagonalize(form)
        assert congruence_holds(form, result)
        assert result.signature == (1, 1, 0)

    def test_zero_pivot_swap_branch(self):
        form = BilinearForm.from_rows([[0, 1, 0], [1, 1, 0], [0, 0, 3]])
        result = orthogonal_diagonalize(form)
        assert congruence_holds(form, result)
        assert result.signature[2] == 0

    def test_deterministic(self):
        form = BilinearForm.from_rows([[0, 1], [1, 0]])
        assert orthogonal_diagonalize(form) == orthogonal_diagonalize(form)

    def test_signature_is_congruence_invariant(self):
        rng = random.Random(103)
        for _ in range(25):
            n = rng.randint(1, 4)
            form = BilinearForm.from_rows(rand_symmetric(rng, n))
            while True:
                t = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
                if _linalg.determinant(t) != 0:
                    break
            moved = _linalg.mat_mul(_linalg.mat_mul(_linalg.transpose(t), form.rows()), t)
            assert signature_of(BilinearForm.from_rows(moved)) == signature_of(form)

    def test_is_degenerate(self):
        assert is_degenerate(BilinearForm.from_signature(Signature(1, 0, 1)))
        assert not is_degenerate(BilinearForm.from_signature(Signature(1, 1)))
        assert is_degenerate(BilinearForm.from_rows([[1, 1], [1, 1]]))


class TestReflection:
    def test_euclidean_axis_example(self):
        form = BilinearForm.diagonal([1, 1])
        m = reflection_matrix(form, [1, 0])
        assert m.rows() == [[-1, 0], [0, 1]]

    def test_core_properties_random(self):
        rng = random.Random(107)
        for diag in ([1, 1], [1, -1], [1, 1, 1], [-1, -1, 3], [2, -3, 5, 7]):
            form = BilinearForm.diagonal(diag)
            for _ in range(15):
                x = rand_anisotropic_vector(rng, form)
                m = reflection_matrix(form, x)
                rows = m.rows()
                # negates the axis
                assert _linalg.mat_vec(rows, _linalg.to_vector(x)) == [
                    -c for c in _linalg.to_vector(x)
                ]
                # involutive isometry of determinant -1
                assert _linalg.mat_eq(_linalg.mat_mul(rows, rows), _linalg.identity(form.n))
                assert is_isometry(form, rows)
                assert det_sign(m) == -1
                # depends only on the line through x
                scaled = [Fraction(-7, 3) * c for c in _linalg.to_vector(x)]
                assert reflection_matrix(form, scaled).rows() == rows

    def test_fixes_orthogonal_complement(self):
        form = BilinearForm.diagonal([1, 1, 1])
        rows = reflection_matrix(form, [1, 1, 0]).rows()
        for u in ([1, -1, 0], [0, 0, 1]):
            assert _linalg.mat_vec(rows, _linalg.to_vector(u)) == _linalg.to_vector(u)

    def test_isotropic_axis_rejected(self):
        form = BilinearForm.from_signature(Signature(1, 1))
        with pytest.raises(IsotropicVector):
            reflection_matrix(form, [1, 1])
        with pytest.raises(IsotropicVector):
            reflection_matrix(BilinearForm.from_signature(Signature(1, 0, 1)), [0, 1])

    def test_dimension_checked(self):
        form = BilinearForm.diagonal([1, 1])
        with pytest.raises(DimensionMismatch):
            reflection_matrix(form, [1, 0, 0])


class TestIsometryChecks:
    def test_is_isometry(self):
        form = BilinearForm.diagonal([1, 1])
        assert is_isometry(form, _linalg.identity(2))
        assert is_isometry(form, [[0, -1], [1, 0]])
        assert not is_isometry(form, [[2, 0], [0, 1]])
        assert not is_isometry(form, [[1, 0]])

    def test_certified_wrapper(self):
        form = BilinearForm.diagonal([1, 1])
        with pytest.raises(NotAnIsometry):
            IsometryMatrix.from_rows(form, [[2, 0], [0, 1]])

    def test_det_sign(self):
        assert det_sign([[0, -1], [1, 0]]) == 1
        assert det_sign([[0, 1], [1, 0]]) == -1
        with pytest.raises(ValueError):
            det_sign([[1, 1], [1, 1]])


class TestCartanDieudonne:
    def recompose(self, form, vectors):
        m = _linalg.identity(form.n)
        for w in vectors:
            m = _linalg.mat_mul(m, reflection_matrix(form, w).rows())
        return m

    def test_identity_needs_no_reflections(self):
        form = BilinearForm.diagonal([1, 1, 1])
        assert cartan_dieudonne_factor(form, _linalg.identity(3)) == []

    def test_single_reflection_recovered(self):
        form = BilinearForm.diagonal([1, 1])
        m = reflection_matrix(form, [1, 1])
        vectors = cartan_dieudonne_factor(form, m)
        assert len(vectors) <= 2
        assert _linalg.mat_eq(self.recompose(form, vectors), m.rows())

    def test_rotation_by_quarter_turn(self):
        form = BilinearForm.diagonal([1, 1])
        vectors = cartan_dieudonne_factor(form, [[0, -1], [1, 0]])
        assert len(vectors) == 2
        assert _linalg.mat_eq(self.recompose(form, vectors), [[0, -1], [1, 0]])

    def test_random_isometries_diagonal_forms(self):
        rng = random.Random(109)
        for diag in ([1, 1], [1, -1], [1, 1, 1], [1, 1, -1], [2, -3, 5], [1, 1, 1, -1]):
            form = BilinearForm.diagonal(diag)
            for count in range(0, 2 * form.n + 1):
                m = rand_isometry(rng, form, count)
                vectors = cartan_dieudonne_factor(form, m)
                assert len(vectors) <= 2 * form.n
                assert _linalg.mat_eq(self.recompose(form, vectors), m)
                for w in vectors:
                    assert quadratic_value(form, w) != 0

    def test_random_isometries_nondiagonal_forms(self):
        rng = random.Random(113)
        trials = 0
        while trials < 30:
            n = rng.randint(2, 4)
            form_rows = rand_symmetric(rng, n, span=3)
            form = BilinearForm.from_rows(form_rows)
            if signature_of(form)[2] > 0:
                continue
            trials += 1
            m = rand_isometry(rng, form, rng.randint(0, 2 * n))
            vectors = cartan_dieudonne_factor(form, m)
            assert len(vectors) <= 2 * n
            assert _linalg.mat_eq(self.recompose(form, vectors), m)

    def test_hyperbolic_plane_isometry(self):
        # the form itself has no nonzero diagonal entry, forcing the rescue path
        form = BilinearForm.from_rows([[0, 1], [1, 0]])
        m = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(1, 2)]]
        assert is_isometry(form, m)
        vectors = cartan_dieudonne_factor(form, m)
        assert len(vectors) <= 4
        assert _linalg.mat_eq(self.recompose(form, vectors), m)

    def test_degenerate_form_rejected(self):
        form = BilinearForm.from_signature(Signature(1, 0, 1))
        with pytest.raises(DegenerateForm):
            cartan_dieudonne_factor(form, _linalg.identity(2))

    def test_non_isometry_rejected(self):
        form = BilinearForm.diagonal([1, 1])
        with pytest.raises(NotAnIsometry):
            cartan_dieudonne_factor(form, [[2, 0], [0, 1]])


class TestTextFormats:
    def test_rational_accepts(self):
        assert parse_rational("3") == 3
        assert parse_rational("-3/4") == Fraction(-3, 4)
        assert parse_rational("+2/6") == Fraction(1, 3)
        assert parse_rational(" 5 ") == 5

    @pytest.mark.parametrize("bad", ["0.5", "1e3", "2/0", "2/-3", "", "a", "1/", "/2", "1 2"])
    def test_rational_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_rational(bad)

    def test_vector_roundtrip(self):
        rng = random.Random(127)
        for _ in range(20):
            v = rand_vector(rng, rng.randint(1, 5))
            assert parse_vector(format_vector(v)) == v
        with pytest.raises(ParseError):
            parse_vector("")

    def test_matrix_roundtrip(self):
        rng = random.Random(131)
        for _ in range(20):
            n = rng.randint(1, 4)
            rows = [[rand_fraction(rng) for _ in range(n)] for _ in range(n)]
            assert parse_matrix(format_matrix(rows)) == rows

    def test_matrix_rejects_ragged(self):
        with pytest.raises(ParseError):
            parse_matrix("1,2;3")
        with pytest.raises(ParseError):
            parse_matrix(";;")
