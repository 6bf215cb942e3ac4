from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgecascade.exactcore import (
    DEGREE_BOUND, GEN, PARAM_FIELD, DegreeBoundExceeded, NonPolynomialCoefficient, ParamPoly,
    VariableMismatch, const, field_to_ring, solve_exact,
)

A, T = GEN["A"], GEN["T"]


def _coeff(c: int, pa: int, pt: int):
    return const(c) * A ** pa * T ** pt


polys = st.dictionaries(
    st.integers(0, 4),
    st.tuples(st.integers(-5, 5), st.integers(0, 2), st.integers(0, 1)),
    max_size=4,
).map(lambda d: ParamPoly("y", {e: _coeff(*v) for e, v in d.items()}))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    zero = ParamPoly("y")
    one = ParamPoly.constant(1)
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + zero == p and p * one == p
    assert (p - p).is_zero()


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_leibniz_rule(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@settings(max_examples=40, deadline=None)
@given(polys)
def test_json_roundtrip(p):
    assert ParamPoly.from_json(p.to_json()) == p


def test_json_is_sorted_and_canonical():
    p = ParamPoly("y", {3: A * const(Fraction(-2, 6)), 0: const(5)})
    assert p.to_json() == [[0, "1", "5/1"], [3, "A", "-1/3"]]


def test_string_form():
    p = ParamPoly("y", {2: const(Fraction(3, 5)), 0: A - 1})
    assert str(p) == "3/5*y^2 + (A - 1)"


def test_subs_param_and_evaluate():
    p = ParamPoly("y", {1: A * T, 0: T})
    q = p.subs_param("T", 2)
    assert q == ParamPoly("y", {1: A * 2, 0: const(2)})
    assert p.evaluate(Fraction(1, 2), {"A": 3, "T": Fraction(1, 3)}) == Fraction(1, 2) + Fraction(1, 3)


def test_errors():
    with pytest.raises(VariableMismatch):
        ParamPoly("y", {1: 1}) + ParamPoly("x", {1: 1})
    with pytest.raises(VariableMismatch):
        ParamPoly("z", {1: 1})
    with pytest.raises(ValueError):
        ParamPoly("y", {-1: 1})
    with pytest.raises(DegreeBoundExceeded):
        ParamPoly("y", {0: A ** (DEGREE_BOUND + 1)})
    with pytest.raises(NonPolynomialCoefficient):
        field_to_ring(PARAM_FIELD.one / PARAM_FIELD(A))


def test_laurent_shift():
    p = ParamPoly("γ", {0: 1}).shift(-2)
    assert p.laurent and p.low_degree() == -2


def test_solve_numeric_unique():
    sol = solve_exact([[2, 1], [1, 3]], [3, 5])
    assert sol.consistent and not sol.nullspace
    assert [field_to_ring(v) for v in sol.particular] == [const(Fraction(4, 5)), const(Fraction(7, 5))]


def test_solve_parametric():
    sol = solve_exact([[A, 1], [1, 1]], [1, 0])
    F = PARAM_FIELD
    assert sol.particular == [F.one / (F(A) - 1), -F.one / (F(A) - 1)]


def test_solve_nullspace_and_free_columns_zero():
    sol = solve_exact([[1, 2, 3]], [6])
    assert sol.consistent
    assert sol.particular == [PARAM_FIELD(6), PARAM_FIELD.zero, PARAM_FIELD.zero]
    assert len(sol.nullspace) == 2
    for v in sol.nullspace:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


def test_solve_inconsistent_certificate():
    sol = solve_exact([[1, 1], [2, 2], [0, 0]], [1, 3, 0])
    assert not sol.consistent
    assert sol.certificate == 1
