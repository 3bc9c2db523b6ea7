from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jordanfib.algebra import (
    DimensionError, Matrix, Poly, X, jordan_product, mat_det, mat_mul, mat_pow, mat_trace,
    scalar_arith, ternary_product,
)
from jordanfib.catalog import family_base

from conftest import matrices, naive_matpow, polys, small_fracs

F1 = Matrix([[1, 1], [1, 0]])
I2, I3 = Matrix.identity(2), Matrix.identity(3)


def test_scalar_examples():
    half = Poly.const(Fraction(1, 2))
    assert scalar_arith(half, half, "add") == Poly.const(1)
    assert scalar_arith(X + 1, X - 1, "mul") == Poly((-1, 0, 1))
    # hand multiplication: x*x + 1
    assert scalar_arith(scalar_arith(X, X, "mul"), Poly.const(1), "add") == Poly((1, 0, 1))


def test_poly_canonical_form():
    assert Poly((1, 2, 0, 0)).coeffs == (1, 2)
    assert Poly(()).coeffs == () and Poly((0,)).coeffs == ()
    assert (X - X).coeffs == ()
    c = Poly((Fraction(2, 4),)).coeffs[0]
    assert (c.numerator, c.denominator) == (1, 2)
    assert Poly((Fraction(-6, -3),)).coeffs[0] == 2


def test_matrix_examples():
    assert mat_mul(F1, F1) == Matrix([[2, 1], [1, 1]])
    assert mat_mul(F1, I2) == F1
    m2 = family_base("M2")
    assert mat_mul(m2, m2) == Matrix([[7, 3], [-6, -2]])
    assert mat_pow(F1, 5) == Matrix([[8, 5], [5, 3]])
    assert mat_pow(F1, 0) == I2
    t2 = Matrix([[2, 1], [1, 1]])
    assert mat_pow(t2, 3) == Matrix([[13, 8], [8, 5]])


def test_jordan_examples():
    h = Fraction(1, 2)
    assert jordan_product(F1, Matrix([[0, 1], [1, 0]])) == Matrix([[1, h], [h, 1]])
    assert jordan_product(F1, I2) == F1
    assert jordan_product(F1, F1) == mat_pow(F1, 2)
    assert ternary_product(F1, I2, F1) == mat_pow(F1, 2)
    # {F1^m, F1^n, I} = F1^(m+n) . I
    for m in range(1, 5):
        for n in range(1, 5):
            assert ternary_product(mat_pow(F1, m), mat_pow(F1, n), I2) == jordan_product(mat_pow(F1, m + n), I2)


def test_trace_det_examples():
    assert mat_trace(F1) == 1 and mat_det(F1) == -1
    assert mat_det(I3) == 1
    assert mat_det(family_base("S", {"k": 2})) == -5


def test_dimension_errors():
    with pytest.raises(DimensionError):
        mat_mul(I2, I3)
    with pytest.raises(DimensionError):
        jordan_product(I2, I3)
    with pytest.raises(DimensionError):
        ternary_product(I2, I2, I3)
    with pytest.raises(DimensionError):
        Matrix([[1]])
    with pytest.raises(DimensionError):
        Matrix.identity(4)


def test_halving_is_exact():
    a = Matrix([[1, 0], [0, 0]])
    b = Matrix([[0, 1], [0, 0]])
    assert jordan_product(a, b) == Matrix([[0, Fraction(1, 2)], [0, 0]])


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly()


@given(polys, small_fracs)
def test_poly_evaluation_is_a_homomorphism(p, v):
    q = p * p + X
    assert q(v) == p(v) * p(v) + v


@given(st.sampled_from([2, 3]).flatmap(lambda d: st.tuples(matrices(d), matrices(d))))
def test_jordan_commutative(ab):
    a, b = ab
    assert jordan_product(a, b) == jordan_product(b, a)


@given(st.sampled_from([2, 3]).flatmap(lambda d: st.tuples(matrices(d), matrices(d))))
def test_jordan_identity(ab):
    a, b = ab
    a2 = mat_pow(a, 2)
    assert jordan_product(jordan_product(a2, b), a) == jordan_product(a2, jordan_product(b, a))


@given(st.sampled_from([2, 3]).flatmap(lambda d: st.tuples(matrices(d), matrices(d), matrices(d))))
def test_ternary_outer_symmetry(abc):
    a, b, c = abc
    assert ternary_product(a, b, c) == ternary_product(c, b, a)


@given(st.sampled_from([2, 3]).flatmap(matrices), st.integers(0, 12))
def test_pow_matches_repeated_product(a, n):
    assert mat_pow(a, n) == naive_matpow(a, n)


@given(matrices(2))
def test_cayley_hamilton(a):
    assert mat_pow(a, 2) == a * mat_trace(a) - Matrix.identity(2) * mat_det(a)


def test_polynomial_matrices():
    q = Matrix([[X, 1], [1, 0]])
    assert mat_pow(q, 3) == Matrix([[X * X * X + 2 * X, X * X + 1], [X * X + 1, X]])
    assert mat_det(q) == -1
