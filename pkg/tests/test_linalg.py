import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiverrep import Field, Matrix, kernel_basis, rank, rref, solve
from quiverrep.errors import MismatchError
from quiverrep.linalg import (format_matrix, inverse, matrix_power,
                              random_invertible_matrix, random_matrix)

F2 = Field.prime(2)
F5 = Field.prime(5)
QQ = Field.rationals()


fields = st.sampled_from([F2, F5, QQ])


@st.composite
def matrices(draw, max_dim=4):
    f = draw(fields)
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    data = [[draw(st.integers(-9, 9)) for _ in range(cols)] for _ in range(rows)]
    return Matrix(f, data, cols=cols)


def test_field_validation():
    with pytest.raises(ValueError):
        Field.prime(4)
    with pytest.raises(ValueError):
        Field.prime(2**31 + 11)
    assert Field.prime(2147483647).p == 2147483647  # largest 31-bit prime


def test_scalar_canonical_form():
    assert QQ.scalar(Fraction(4, -2)) == Fraction(-2)
    x = QQ.parse("-6/4")
    assert (x.numerator, x.denominator) == (-3, 2)
    assert F5.scalar(-1) == 4
    assert F5.parse("7") == 2
    assert QQ.format(Fraction(-3, 2)) == "-3/2"


def test_rref_identity():
    m = Matrix.identity(QQ, 2)
    red, rk, piv = rref(m)
    assert red == m and rk == 2 and piv == (0, 1)


def test_rref_zero():
    m = Matrix.zeros(QQ, 3, 4)
    red, rk, piv = rref(m)
    assert red == m and rk == 0 and piv == ()


def test_rref_dependent_rows_mod_5():
    # second row is 3 times the first mod 5, so the rank is 1
    m = Matrix(F5, [[2, 4], [1, 2]])
    red, rk, piv = rref(m)
    assert rk == 1 and piv == (0,)
    assert red == Matrix(F5, [[1, 2], [0, 0]])


def test_kernel_identity_and_zero():
    assert kernel_basis(Matrix.identity(QQ, 3)).cols == 0
    k = kernel_basis(Matrix.zeros(QQ, 2, 3))
    assert k == Matrix.identity(QQ, 3)


def test_kernel_canonical_free_variable():
    k = kernel_basis(Matrix(QQ, [[1, 2]]))
    assert k == Matrix(QQ, [[-2], [1]])


def test_solve_identity():
    assert solve(Matrix.identity(QQ, 2), [3, 7]) == (Fraction(3), Fraction(7))


def test_solve_inconsistent():
    assert solve(Matrix(QQ, [[1], [0]]), [0, 1]) is None


def test_solve_free_variables_zero():
    assert solve(Matrix(QQ, [[1, 1]]), [3]) == (Fraction(3), Fraction(0))


def test_random_matrix_determinism_and_ranges():
    a = random_matrix(3, 4, F5, random.Random(11))
    b = random_matrix(3, 4, F5, random.Random(11))
    assert a == b
    assert all(0 <= x <= 4 for row in a.data for x in row)
    r = random_matrix(3, 4, QQ, random.Random(11))
    assert all(x.denominator == 1 and abs(x) <= 9 for row in r.data for x in row)


def test_random_invertible():
    g = random_invertible_matrix(3, F2, random.Random(5))
    assert rank(g) == 3
    assert random_invertible_matrix(0, F2, random.Random(5)).rows == 0


def test_inverse_and_power():
    m = Matrix(QQ, [[2, 1], [1, 1]])
    assert m @ inverse(m) == Matrix.identity(QQ, 2)
    assert matrix_power(m, 3) == m @ m @ m
    with pytest.raises(MismatchError):
        inverse(Matrix(QQ, [[1, 1], [1, 1]]))


def test_zero_shaped_matrices():
    a = Matrix.zeros(QQ, 0, 3)
    b = Matrix.zeros(QQ, 3, 0)
    assert (b @ a).rows == 3 and (b @ a).cols == 3
    assert (b @ a).is_zero()
    assert rank(a) == 0 and kernel_basis(a) == Matrix.identity(QQ, 3)


def test_shape_mismatch_errors():
    with pytest.raises(MismatchError):
        Matrix(QQ, [[1], [1, 2]])
    with pytest.raises(MismatchError):
        Matrix.identity(QQ, 2) @ Matrix.identity(QQ, 3)


@settings(max_examples=120, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rref(m).rank + kernel_basis(m).cols == m.cols


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    red = rref(m).reduced
    assert rref(red).reduced == red


@settings(max_examples=80, deadline=None)
@given(matrices(), st.lists(st.integers(-9, 9), min_size=0, max_size=4))
def test_solve_is_exact(m, b):
    b = (b + [0] * m.rows)[:m.rows]
    x = solve(m, b)
    if x is not None:
        col = Matrix(m.field, [[v] for v in x], cols=1)
        want = Matrix(m.field, [[v] for v in b], cols=1)
        assert m @ col == want


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_columns_annihilated(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert rank(k) == k.cols


def test_format_matrix():
    assert format_matrix(Matrix(F5, [[1, 2], [0, 3]])) == "[[1, 2], [0, 3]]"
