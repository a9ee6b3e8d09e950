from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P, polynomials, x
from derauto.polyalg import (
    Echelon,
    Polynomial,
    format_polynomial,
    monomials_up_to,
    nullspace,
    partial_derivative,
    poly_add,
    poly_mul,
    rank,
    substitute,
)


def test_add_examples():
    x1, x2 = x(2, 1), x(2, 2)
    assert poly_add(x1 + x2, x1) == 2 * x1 + x2
    p = x1 * x2 + 3
    assert poly_add(p, Polynomial.zero(2)) == p
    assert poly_add(x1 ** 2, -(x1 ** 2)).is_zero()


def test_mul_examples():
    x1, x2 = x(2, 1), x(2, 2)
    assert poly_mul(x1, x2) == P(2, {(1, 1): 1})
    assert poly_mul(x1 + 1, x1 - 1) == x1 ** 2 - 1
    p = x1 ** 3 - x2 / 2
    assert poly_mul(p, Polynomial.one(2)) == p


def test_partial_derivative_examples():
    x1, x2 = x(2, 1), x(2, 2)
    assert partial_derivative(x1 ** 2 * x2, 1) == 2 * x1 * x2
    assert partial_derivative(x1 + 5, 2).is_zero()
    assert partial_derivative(x1, 1) == 1
    with pytest.raises(IndexError):
        partial_derivative(x1, 3)


def test_substitute_examples():
    x1, x2 = x(2, 1), x(2, 2)
    assert substitute(x1 ** 2, [x1 + x2, x2]) == x1 ** 2 + 2 * x1 * x2 + x2 ** 2
    p = x1 ** 2 * x2 - 7
    assert substitute(p, [x1, x2]) == p
    assert substitute(x1 * x2, [x2, x1]) == x1 * x2
    with pytest.raises(ValueError):
        substitute(p, [x1])


def test_no_zero_coefficients_stored():
    p = Polynomial(2, {(1, 0): Fraction(0), (0, 1): Fraction(2, 4)})
    assert p.terms == {(0, 1): Fraction(1, 2)}


def test_mismatched_arity():
    with pytest.raises(ValueError):
        x(2, 1) + x(3, 1)


def test_grlex_printing():
    x1, x2 = x(2, 1), x(2, 2)
    assert format_polynomial(x2 ** 2 + x1) == "x1 + x2^2"
    assert format_polynomial(x2 - x1 ** 2 / 2) == "x2 - 1/2*x1^2"
    assert format_polynomial(x2 - x1) == "-x1 + x2"
    assert format_polynomial(x1 * x2 + x1 ** 2 + x2 ** 2) == "x1^2 + x1*x2 + x2^2"
    assert format_polynomial(Polynomial.zero(2)) == "0"


def test_monomial_count():
    from math import comb
    for n in (1, 2, 3):
        for d in range(5):
            assert len(monomials_up_to(n, d)) == comb(n + d, d)


def test_nullspace_examples():
    assert nullspace([[1, -1]]) == [[1, 1]]
    assert nullspace([[1, 0], [0, 1]]) == []
    assert len(nullspace([[0, 0, 0], [0, 0, 0]])) == 3


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial.zero(2)


@given(polynomials(n=3), polynomials(n=3), st.integers(1, 3))
def test_leibniz(p, q, i):
    assert partial_derivative(p * q, i) == partial_derivative(p, i) * q + p * partial_derivative(q, i)


@given(polynomials(), polynomials(), polynomials(), polynomials())
def test_substitute_is_ring_hom(p, q, a, b):
    images = [a, b]
    assert substitute(p + q, images) == substitute(p, images) + substitute(q, images)
    assert substitute(p * q, images) == substitute(p, images) * substitute(q, images)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_nullspace_rank_nullity(M):
    basis = nullspace(M)
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in M)
        assert next(c for c in v if c) == 1
    r = rank([{j: a for j, a in enumerate(row) if a} for row in M])
    assert len(basis) == 4 - r
    # basis vectors are independent
    assert Echelon({j: c for j, c in enumerate(v) if c} for v in basis).rank == len(basis)
