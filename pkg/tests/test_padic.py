from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistzeta import (
    ContractError,
    PAdicScalar,
    PrecisionError,
    UnsupportedEmbeddingError,
    angle_bracket,
    padic_embed_cyclo,
    teichmuller,
    zeta,
)
from twistzeta.padic import factorial_valuation, primitive_root, valuation

M = 20


def test_norm_examples():
    assert PAdicScalar.from_rational(50, 5, 8).norm() == Fraction(1, 25)
    assert PAdicScalar.from_rational(Fraction(1, 3), 5, 8).norm() == 1
    assert PAdicScalar.from_rational(Fraction(2, 25), 5, 8).norm() == 25


def test_factorial_norm_legendre():
    f = 1
    for i in range(1, 11):
        f *= i
    count = 0
    while f % 5 == 0:
        f //= 5
        count += 1
    assert count == 2
    assert factorial_valuation(10, 5) == 2
    assert PAdicScalar.from_rational(3628800, 5, 4).norm() == Fraction(1, 25)


def test_legendre_matches_direct_count():
    import math

    for p in (2, 3, 5, 7):
        for n in range(60):
            assert factorial_valuation(n, p) == (valuation(math.factorial(n), p))


def test_teichmuller_examples():
    assert teichmuller(1, 5, M).unit == 1
    w = teichmuller(2, 5, M)
    assert pow(w.unit, 4, 5**M) == 1
    assert w.unit % 5 == 2
    assert teichmuller(-1, 5, M).unit == 5**M - 1
    with pytest.raises(ContractError):
        teichmuller(10, 5, M)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_teichmuller_all_units(p):
    mod = p**M
    for x in range(1, p):
        w = teichmuller(x, p, M).unit
        assert pow(w, p - 1, mod) == 1
        assert w % p == x


def test_angle_bracket_examples():
    one = PAdicScalar.from_rational(1, 5, M)
    assert angle_bracket(one).residue() == 1
    seven = PAdicScalar.from_rational(7, 5, M)
    b = angle_bracket(seven)
    assert b.residue() % 5 == 1
    # <7> * w(7) = 7
    assert (b * teichmuller(7, 5, M)).residue() == 7
    w = teichmuller(3, 5, M)
    assert angle_bracket(w).residue() == 1
    with pytest.raises(ContractError):
        angle_bracket(PAdicScalar.from_rational(10, 5, M))


def test_embed_examples():
    q = padic_embed_cyclo(Fraction(3, 4), 5, M)
    assert q.residue() == 3 * pow(4, -1, 5**M) % 5**M
    assert padic_embed_cyclo(zeta(2), 5, M).residue() == 5**M - 1
    img = padic_embed_cyclo(zeta(4), 5, M)
    mod = 5**M
    assert pow(img.unit, 4, mod) == 1
    assert pow(img.unit, 2, mod) == mod - 1
    assert img.unit % 5 == primitive_root(5) == 2
    assert img == teichmuller(2, 5, M)


def test_embed_unsupported():
    with pytest.raises(UnsupportedEmbeddingError):
        padic_embed_cyclo(zeta(3), 5, M)
    # zeta(12)^3 is a primitive 4th root, so it embeds after descent
    assert padic_embed_cyclo(zeta(12, 3), 5, M) == padic_embed_cyclo(zeta(4), 5, M)


def test_embed_custom_generator():
    img = padic_embed_cyclo(zeta(4), 5, M, generator=3)
    assert img.unit % 5 == 3
    with pytest.raises(ContractError):
        padic_embed_cyclo(zeta(4), 5, M, generator=4)


def test_embedding_compatible_across_orders():
    p = 13
    assert padic_embed_cyclo(zeta(12) ** 3, p, M) == padic_embed_cyclo(zeta(4), p, M)
    assert padic_embed_cyclo(zeta(6) ** 2, p, M) == padic_embed_cyclo(zeta(3), p, M)


def test_precision_tracking():
    a = PAdicScalar.from_rational(1, 5, 6)
    b = PAdicScalar.from_rational(1 + 5**3, 5, 6)
    d = b - a
    assert d.valuation == 3 and d.abs_precision == 6 and d.precision == 3
    z = a - a
    assert z.is_zero() and z.abs_precision == 6
    with pytest.raises(PrecisionError):
        z.inverse()
    with pytest.raises(PrecisionError):
        a.residue(7)


def test_json_round_trip():
    x = PAdicScalar.from_rational(Fraction(7, 25), 5, 6)
    assert PAdicScalar.from_json(x.to_json()) == x
    z = PAdicScalar.zero(5, 4)
    assert PAdicScalar.from_json(z.to_json()) == z


def test_from_scaled_and_residue():
    x = PAdicScalar.from_residue(3 * 5**2, 5, 6)
    assert x.valuation == 2 and x.unit == 3 and x.abs_precision == 6
    assert x.residue() == 75


# -- properties -----------------------------------------------------------

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 7]), rationals, rationals)
def test_ultrametric(p, a, b):
    if a == 0 or b == 0 or a + b == 0:
        return
    prec = 30
    x = PAdicScalar.from_rational(a, p, prec)
    y = PAdicScalar.from_rational(b, p, prec)
    s = PAdicScalar.from_rational(a + b, p, prec)
    assert s.norm() <= max(x.norm(), y.norm())
    assert (x * y).norm() == x.norm() * y.norm()


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 7]), rationals, rationals)
def test_rational_embedding_is_ring_map(p, a, b):
    prec = 12
    x = PAdicScalar.from_rational(a, p, prec)
    y = PAdicScalar.from_rational(b, p, prec)
    target = min((x + y).abs_precision, 8)
    if target <= 0 or a + b == 0:
        return
    assert (x + y).agrees_with(PAdicScalar.from_rational(a + b, p, prec), target)
    prod = x * y
    if a * b:
        assert prod.agrees_with(PAdicScalar.from_rational(a * b, p, prec), prod.abs_precision)
        assert (x / x).agrees_with(1, prec)


cyc = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, 13]), cyc, cyc)
def test_cyclotomic_embedding_is_ring_map(p, ca, cb):
    a = ca[0] + ca[1] * zeta(4)
    b = cb[0] + cb[1] * zeta(4)
    ea, eb = padic_embed_cyclo(a, p, M), padic_embed_cyclo(b, p, M)
    mod = p**10
    assert padic_embed_cyclo(a + b, p, M).residue(10) == (ea + eb).residue(10) % mod
    assert padic_embed_cyclo(a * b, p, M).residue(10) == (ea * eb).residue(10) % mod
