from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from postlie import exactla as la
from postlie.errors import MalformedRationalError, NotNilpotentError, NotSquareError
from postlie.exactla import Matrix

small = st.integers(min_value=-3, max_value=3)
rational = st.builds(Fraction, small, st.integers(min_value=1, max_value=3))


@st.composite
def matrices(draw, rows=None, cols=None):
    r = draw(st.integers(1, 4)) if rows is None else rows
    c = draw(st.integers(1, 4)) if cols is None else cols
    return Matrix([[draw(rational) for _ in range(c)] for _ in range(r)], c)


@st.composite
def strictly_upper(draw):
    n = draw(st.integers(1, 4))
    return Matrix([[draw(rational) if j > i else 0 for j in range(n)] for i in range(n)], n)


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) for a in row] for row in m.entries])


class TestRationals:
    @pytest.mark.parametrize("text, value", [("3", 3), ("-2/4", Fraction(-1, 2)), (" 7 / 3 ", Fraction(7, 3)),
                                             ("+5", 5), (4, 4)])
    def test_parse(self, text, value):
        assert la.parse_rational(text) == value

    @pytest.mark.parametrize("text", ["0.5", "1e3", "nan", "1/0", "", "1/-2", "abc", 0.5, True, None])
    def test_rejects(self, text):
        with pytest.raises(MalformedRationalError):
            la.parse_rational(text)

    def test_format_lowest_terms(self):
        assert la.format_rational(Fraction(6, -4)) == "-3/2"
        assert la.format_rational(Fraction(8, 4)) == "2"


class TestRref:
    def test_identity(self):
        m, rank, piv = la.rref(Matrix.identity(3))
        assert m == Matrix.identity(3) and rank == 3 and piv == [0, 1, 2]

    def test_zero(self):
        z = Matrix.zeros(2, 4)
        m, rank, piv = la.rref(z)
        assert m == z and rank == 0 and piv == []

    def test_rank_one(self):
        m, rank, _ = la.rref(Matrix([[1, 2], [2, 4]]))
        assert m == Matrix([[1, 2], [0, 0]]) and rank == 1

    @settings(max_examples=200, deadline=None)
    @given(matrices())
    def test_idempotent_and_matches_sympy(self, m):
        r, rank, _ = la.rref(m)
        assert la.rref(r)[0] == r
        assert rank == to_sympy(m).rank()
        assert r == Matrix([[Fraction(int(x.p), int(x.q)) for x in row]
                            for row in to_sympy(m).rref()[0].tolist()], m.cols)


class TestKernelAndSolve:
    def test_kernel_identity_empty(self):
        assert la.kernel(Matrix.identity(3)) == []

    def test_kernel_zero_standard_basis(self):
        assert la.kernel(Matrix.zeros(3, 3)) == [la.unit_vector(3, i) for i in range(3)]

    def test_kernel_single_row(self):
        m = Matrix([[1, 1, 0]])
        ker = la.kernel(m)
        assert len(ker) == 2
        assert all(not any(m.apply(v)) for v in ker)

    def test_solve_identity(self):
        b = la.vec([3, Fraction(1, 2), -1])
        particular, basis = la.solve_affine(Matrix.identity(3), b)
        assert particular == b and basis == []

    def test_solve_zero(self):
        particular, basis = la.solve_affine(Matrix.zeros(2, 2), la.vec([0, 0]))
        assert particular == la.vec([0, 0]) and len(basis) == 2

    def test_solve_underdetermined(self):
        particular, basis = la.solve_affine(Matrix([[1, 1]]), la.vec([2]))
        assert particular == la.vec([2, 0])
        assert basis == [la.vec([-1, 1])] or basis == [la.vec([1, -1])]

    def test_inconsistent_is_none(self):
        assert la.solve_affine(Matrix([[1, 1], [1, 1]]), la.vec([0, 1])) is None

    @settings(max_examples=1000, deadline=None)
    @given(matrices())
    def test_rank_nullity(self, m):
        ker = la.kernel(m)
        assert la.rank(m) + len(ker) == m.cols
        assert all(not any(m.apply(v)) for v in ker)

    @settings(max_examples=1000, deadline=None)
    @given(matrices(), st.data())
    def test_solve_substitutes_back(self, m, data):
        x = [data.draw(rational) for _ in range(m.cols)]
        b = m.apply(x)
        sol = la.solve_affine(m, b)
        assert sol is not None
        particular, basis = sol
        assert m.apply(particular) == b
        t = [data.draw(rational) for _ in basis]
        point = la.add_vectors(particular, la.linear_combination(t, basis, m.cols))
        assert m.apply(point) == b


class TestDeterminant:
    def test_identity(self):
        assert la.det(Matrix.identity(5)) == 1

    def test_swap(self):
        assert la.det(Matrix([[0, 1], [1, 0]])) == -1

    def test_non_square(self):
        with pytest.raises(NotSquareError):
            la.det(Matrix.zeros(2, 3))

    @settings(max_examples=300, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n), matrices(n, n))))
    def test_multiplicative_and_matches_sympy(self, ab):
        a, b = ab
        assert la.det(a @ b) == la.det(a) * la.det(b)
        assert la.det(a) == Fraction(str(to_sympy(a).det()))

    def test_inverse(self):
        m = Matrix([[2, 1], [1, 1]])
        assert m @ la.inverse(m) == Matrix.identity(2)
        with pytest.raises(ZeroDivisionError):
            la.inverse(Matrix([[1, 2], [2, 4]]))


class TestNilpotentExp:
    def test_strictly_upper_is_nilpotent(self):
        assert la.is_nilpotent_matrix(Matrix([[0, 1, 2], [0, 0, 3], [0, 0, 0]]))

    def test_identity_not_nilpotent(self):
        assert not la.is_nilpotent_matrix(Matrix.identity(3))

    def test_non_square(self):
        with pytest.raises(NotSquareError):
            la.is_nilpotent_matrix(Matrix.zeros(2, 3))

    def test_zero_gives_identity(self):
        assert la.nilpotent_exp(Matrix.zeros(3, 3)) == Matrix.identity(3)

    def test_jordan_block(self):
        n = Matrix([[0, 1], [0, 0]])
        assert la.nilpotent_exp(n) == Matrix.identity(2) + n

    def test_not_nilpotent_raises(self):
        with pytest.raises(NotNilpotentError):
            la.nilpotent_exp(Matrix.identity(2))

    @settings(max_examples=1000, deadline=None)
    @given(strictly_upper())
    def test_inverse_identity(self, m):
        assert la.nilpotent_exp(m) @ la.nilpotent_exp(-m) == Matrix.identity(m.rows)


class TestMatrix:
    def test_column_convention(self):
        m = Matrix.from_columns([[1, 2], [3, 4]])
        assert m.apply([1, 0]) == la.vec([1, 2])
        assert m.column(1) == la.vec([3, 4])

    def test_hash_and_equality(self):
        a = Matrix([[1, Fraction(1, 2)]])
        b = Matrix([[Fraction(2, 2), Fraction(2, 4)]])
        assert a == b and hash(a) == hash(b)

    def test_ragged_rejected(self):
        with pytest.raises(la.DimensionMismatchError):
            Matrix([[1, 2], [3]])
