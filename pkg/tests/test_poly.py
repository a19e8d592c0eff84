import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _random_specs import random_poly
from twistzeta import (
    ContractError,
    Polynomial,
    degree_in_var,
    expand_product,
    find_constant_partial,
    parse_polynomial,
)

X, Y = Polynomial.variables(2)
COUNTER = (X - Y) ** 2 * X + X


@st.composite
def polys(draw, N=None, deg=3):
    N = N if N is not None else draw(st.integers(1, 3))
    seed = draw(st.integers(0, 10**9))
    return random_poly(random.Random(seed), N, deg, nonzero=False)


def test_mul_examples():
    assert (X + Y) * (X - Y) == X**2 - Y**2
    assert COUNTER * 1 == COUNTER
    assert (X + Y) ** 2 == X**2 + 2 * X * Y + Y**2
    assert (X + Y) ** 2 == Polynomial(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})


def test_pow_examples():
    assert COUNTER**0 == 1
    assert Polynomial.zero(2) ** 0 == 1
    (x,) = Polynomial.variables(1)
    assert (x + 1) ** 3 == Polynomial(1, {(3,): 1, (2,): 3, (1,): 3, (0,): 1})
    with pytest.raises(ContractError):
        x ** -1


def test_expand_product_examples():
    (x,) = Polynomial.variables(1)
    assert expand_product(Polynomial.one(1), [x], [5]) == x**5
    assert expand_product(Polynomial.one(2), [X + Y], [1]) == X + Y
    got = expand_product(X, [X + 1, Y + 1], [1, 1])
    assert got == X**2 * Y + X**2 + X * Y + X
    with pytest.raises(ContractError):
        expand_product(X, [X], [1, 2])


def test_evaluate_examples():
    assert (X + Y).evaluate((-1, -2)) == -3
    assert Polynomial.one(3).evaluate((7, Fraction(1, 2), -4)) == 1
    # (2-3)^2 * 2 + 2
    assert COUNTER.evaluate((2, 3)) == 4
    with pytest.raises(ContractError):
        COUNTER.evaluate((1,))


def test_partial_derivative_examples():
    assert (X * Y).partial_derivative((1, 0)) == Y
    assert COUNTER.partial_derivative((0, 0)) == COUNTER
    dx = COUNTER.partial_derivative((1, 0))
    assert dx == 3 * X**2 - 4 * X * Y + Y**2 + 1
    assert COUNTER.partial_derivative((1, 1)) == -4 * X + 2 * Y


def test_find_constant_partial_examples():
    (x,) = Polynomial.variables(1)
    assert find_constant_partial(x**2, 0) == (2,)
    assert (x**2).partial_derivative((2,)) == 2
    alpha = find_constant_partial(X * Y + X, 1)
    assert alpha == (1, 1)
    assert (X * Y + X).partial_derivative(alpha) == 1
    alpha = find_constant_partial(COUNTER, 1)
    d = COUNTER.partial_derivative(alpha)
    assert alpha[1] >= 1 and d.is_constant() and not d.is_zero()
    with pytest.raises(ContractError):
        find_constant_partial(X + 1, 1)


def test_degree_examples():
    assert degree_in_var(X**2 * Y + 1, 0) == 2
    assert degree_in_var(X, 1) == 0
    assert degree_in_var(COUNTER, 1) == 2
    with pytest.raises(ContractError):
        degree_in_var(Polynomial.zero(2), 0)


def test_nvars_mismatch():
    with pytest.raises(ContractError):
        X + Polynomial.variable(0, 3)


def test_string_form():
    assert str(X**2 - Y**2) == "x1^2 - x2^2"
    assert str(Polynomial.zero(2)) == "0"
    assert (Fraction(-1, 3) * X * Y + 2).to_string(["x", "y"]) == "-1/3*x*y + 2"


def test_json_round_trip():
    assert Polynomial.from_json(COUNTER.to_json()) == COUNTER


# -- properties -----------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda N: st.tuples(polys(N), polys(N), polys(N))))
def test_ring_axioms(pqr):
    p, q, r = pqr
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p + (-p) == 0


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda N: st.tuples(polys(N), polys(N),
                                                      st.lists(st.integers(-4, 4), min_size=N, max_size=N))))
def test_evaluation_is_homomorphism(data):
    p, q, pt = data
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@settings(max_examples=60, deadline=None)
@given(polys(deg=2), st.integers(0, 5))
def test_pow_matches_iterated(p, k):
    it = Polynomial.one(p.nvars)
    for _ in range(k):
        it = it * p
    assert p**k == it


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda N: st.tuples(polys(N), polys(N), st.integers(0, N - 1))))
def test_leibniz(data):
    p, q, n = data
    e = tuple(1 if i == n else 0 for i in range(p.nvars))
    lhs = (p * q).partial_derivative(e)
    assert lhs == p.partial_derivative(e) * q + p * q.partial_derivative(e)


@settings(max_examples=150, deadline=None)
@given(polys(), st.integers(0, 2))
def test_find_constant_partial_property(p, n):
    if p.is_zero() or n >= p.nvars or p.degree_in_var(n) == 0:
        return
    alpha = find_constant_partial(p, n)
    d = p.partial_derivative(alpha)
    assert alpha[n] >= 1
    assert d.is_constant() and not d.is_zero()


@settings(max_examples=100, deadline=None)
@given(polys())
def test_parse_print_identity(p):
    assert parse_polynomial(p.to_string(), nvars=p.nvars) == p
