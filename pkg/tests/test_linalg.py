import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from etalab.linalg import (DEFAULT_PRIME, RATIONALS, Echelon, FieldSpec, Matrix, in_column_span,
                           kernel_basis, rank, rref)
from oracles import bareiss_rank

FP = FieldSpec.prime()


def test_field_spec_validation():
    assert FieldSpec.parse("Q") == RATIONALS
    assert FieldSpec.parse("Fp") == FieldSpec(DEFAULT_PRIME)
    assert FieldSpec.parse("Fp:7").p == 7
    for bad in (2, 9, 1):
        with pytest.raises(ValueError):
            FieldSpec(bad)
    with pytest.raises(ValueError):
        FieldSpec.parse("R")


def test_field_arithmetic_mod_p():
    F = FieldSpec(7)
    assert F(Fraction(1, 2)) == 4
    assert F.mul(F.inv(3), 3) == 1
    assert F.to_fraction(6) == -1
    assert RATIONALS.to_fraction(RATIONALS(Fraction(3, 4))) == Fraction(3, 4)


def test_rref_identity():
    R, piv, r = rref(Matrix.identity(2))
    assert R == Matrix.identity(2) and piv == (0, 1) and r == 2


def test_rref_dependent_rows():
    R, piv, r = rref(Matrix([[1, 2], [2, 4]]))
    assert R.tolist() == [[1, 2], [0, 0]] and piv == (0,) and r == 1


def test_rref_empty():
    R, piv, r = rref(Matrix([], 3))
    assert r == 0 and piv == () and R.nrows == 0


@pytest.mark.parametrize("field", [FP, RATIONALS])
def test_random_rank_matches_bareiss(field):
    rng = random.Random(11)
    for _ in range(20):
        rows = [[rng.randint(-3, 3) for _ in range(7)] for _ in range(5)]
        if rng.random() < 0.5:
            rows[4] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
        assert rank(Matrix(rows, field=field)) == bareiss_rank(rows, field.p)


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3)).ncols == 0
    K = kernel_basis(Matrix.zeros(3, 4))
    assert K.ncols == 4 and rank(K) == 4
    K = kernel_basis(Matrix([[1, 1, 0], [0, 1, 1]]))
    assert K.ncols == 1
    v = [K.rows[i][0] for i in range(3)]
    assert v[0] != 0 and [x / v[0] for x in v] == [1, -1, 1]


def test_in_column_span():
    A = Matrix([[1, 0], [0, 1], [1, 1]])
    assert in_column_span(A, [0, 0, 0])
    assert in_column_span(A, [2, 3, 5])
    assert not in_column_span(A, [1, 0, 0])


def test_echelon_incremental():
    e = Echelon(RATIONALS)
    assert e.add({0: 1, 1: 1})
    assert not e.add({0: 2, 1: 2})
    assert e.contains({0: 3, 1: 3}) and not e.contains({1: 1})
    assert e.rank == 1


matrices = st.integers(1, 5).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices, st.sampled_from([RATIONALS, FieldSpec(5), FP]))
def test_rank_nullity_and_rref_idempotent(rows, field):
    A = Matrix(rows, field=field)
    R, piv, r = rref(A)
    K = kernel_basis(A)
    assert r + K.ncols == A.ncols
    assert (A @ K).is_zero()
    assert rref(R)[0] == R
    assert r == bareiss_rank(rows, field.p)
