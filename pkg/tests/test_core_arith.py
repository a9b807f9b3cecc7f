from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dedekind_expsum.core_arith import (
    PrimeModulus,
    is_prime,
    legendre_symbol,
    legendre_table,
    mod_inverse,
    prime_modulus,
    primes_in_range,
    primitive_root,
    sawtooth,
)

SMALL_PRIMES = [p for p in range(3, 62) if all(p % d for d in range(2, p))]


def order(g, p):
    x, k = g % p, 1
    while x != 1:
        x, k = x * g % p, k + 1
    return k


def test_primes_in_range_matches_trial_division():
    assert primes_in_range(3, 61) == SMALL_PRIMES
    assert primes_in_range(5, 4) == []
    assert [n for n in range(200) if is_prime(n)] == primes_in_range(0, 199)


@pytest.mark.parametrize("a,p,expected", [(1, 7, 1), (2, 5, 3), (6, 7, 6)])
def test_mod_inverse_examples(a, p, expected):
    assert mod_inverse(a, p) == expected


def test_mod_inverse_rejects_zero():
    with pytest.raises(ZeroDivisionError):
        mod_inverse(14, 7)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_mod_inverse_involution(p):
    for a in range(1, p):
        b = mod_inverse(a, p)
        assert 1 <= b < p and a * b % p == 1
        assert mod_inverse(b, p) == a


@pytest.mark.parametrize("a,p,expected", [(0, 7, 0), (2, 7, 1), (2, 5, -1)])
def test_legendre_examples(a, p, expected):
    assert legendre_symbol(a, p) == expected


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_legendre_against_square_enumeration(p):
    squares = {x * x % p for x in range(1, p)}
    for a in range(-p, 2 * p):
        expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
        assert legendre_symbol(a, p) == expected
        assert legendre_table(p)[a % p] == expected


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_legendre_multiplicative(p):
    t = legendre_table(p)
    a = np.arange(p)
    prod = (a[:, None] * a[None, :]) % p
    assert np.array_equal(t[prod], t[:, None] * t[None, :])


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_quadratic_count_identity(p):
    # sum_a ((a^2 + n)/p) is p-1 when p | n and -1 otherwise
    for n in range(-p, p + 1):
        s = sum(legendre_symbol(a * a + n, p) for a in range(p))
        assert s == (p - 1 if n % p == 0 else -1)


@pytest.mark.parametrize("p,g", [(3, 2), (7, 3), (13, 2)])
def test_primitive_root_examples(p, g):
    assert primitive_root(p) == g


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_primitive_root_is_least_generator(p):
    g = primitive_root(p)
    assert order(g, p) == p - 1
    assert all(order(x, p) < p - 1 for x in range(2, g))


def test_primitive_root_rejects_composite():
    with pytest.raises(ValueError):
        primitive_root(15)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_prime_modulus_dlog_bijection(p):
    mod = PrimeModulus(p)
    assert sorted(mod.dlog[1:].tolist()) == list(range(p - 1))
    for t in range(p - 1):
        assert mod.dlog[pow(mod.g, t, p)] == t
        assert mod.powers[t] == pow(mod.g, t, p)


def test_prime_modulus_rejects_bad_input():
    for n in (1, 2, 9, 21):
        with pytest.raises(ValueError):
            PrimeModulus(n)
    assert prime_modulus(7) is prime_modulus(7)


@pytest.mark.parametrize(
    "x,expected",
    [(3, 0), (Fraction(1, 3), Fraction(-1, 6)), (Fraction(-1, 3), Fraction(1, 6)), (Fraction(1, 2), 0)],
)
def test_sawtooth_examples(x, expected):
    assert sawtooth(x) == expected


rationals = st.fractions(max_denominator=1000).filter(lambda f: abs(f) < 10**6)


@given(rationals)
@settings(max_examples=300)
def test_sawtooth_odd_and_periodic(x):
    assert sawtooth(-x) == -sawtooth(x)
    assert sawtooth(x + 1) == sawtooth(x)
    assert -Fraction(1, 2) < sawtooth(x) < Fraction(1, 2)


@given(st.sampled_from(SMALL_PRIMES), st.integers(), st.integers())
def test_legendre_multiplicative_property(p, a, b):
    assert legendre_symbol(a * b, p) == legendre_symbol(a, p) * legendre_symbol(b, p)
