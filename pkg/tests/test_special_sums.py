import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dedekind_expsum.core_arith import primes_in_range
from dedekind_expsum.special_sums import (
    ExpSumParams,
    alpha_constant,
    dedekind_from_l_functions,
    dedekind_sum,
    dedekind_table,
    exp_sum_matrix,
    two_term_exponential_sum,
)


def direct_c(m, n, k, h, q):
    """Term-by-term cmath evaluation of the two-term sum."""
    return sum(cmath.exp(2j * math.pi * ((m * a**k + n * a**h) % q) / q) for a in range(q))


def C(m, n, k, h, q):
    return two_term_exponential_sum(ExpSumParams(m, n, k, h, q))


def test_expsum_examples():
    assert C(0, 0, 4, 2, 7) == pytest.approx(7, abs=1e-12)
    # sum e(a^2/5) is the quadratic Gauss sum sqrt(5)
    assert C(0, 1, 4, 2, 5) == pytest.approx(math.sqrt(5), abs=1e-12)
    assert C(0, 1, 4, 2, 7) == pytest.approx(1j * math.sqrt(7), abs=1e-12)
    assert abs(C(1, 1, 1, 1, 5)) < 1e-12
    assert C(1, 0, 2, 1, 5) == pytest.approx(math.sqrt(5), abs=1e-12)
    # a -> a^5 permutes Z/7, so the (5,1) sum is sum e((a^5 + 2a)/7)
    assert C(1, 2, 5, 1, 7) == pytest.approx(direct_c(1, 2, 5, 1, 7), abs=1e-12)


def test_expsum_params_validation():
    with pytest.raises(ValueError):
        ExpSumParams(1, 1, 0, 2, 7)
    with pytest.raises(ValueError):
        ExpSumParams(1, 1, 4, 2, 2)


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
@pytest.mark.parametrize("kh", [(4, 2), (5, 1), (3, 1)])
def test_matrix_matches_direct_evaluation(q, kh):
    k, h = kh
    mat = exp_sum_matrix(q, k, h)
    for m in range(q):
        for n in range(q):
            assert abs(mat[m, n] - direct_c(m, n, k, h, q)) < 1e-9
            assert abs(mat[m, n] - C(m, n, k, h, q)) < 1e-9


@pytest.mark.parametrize("q", primes_in_range(5, 31))
def test_conjugate_symmetry_and_parseval(q):
    mat = exp_sum_matrix(q, 4, 2)
    neg = (-np.arange(q)) % q
    assert np.allclose(mat[np.ix_(neg, neg)], mat.conj(), atol=1e-9)
    # sum over all (m, n) of |C|^2 counts pairs (a, b) with a^4=b^4, a^2=b^2, times q^2
    count = sum(1 for a in range(q) for b in range(q) if (a * a - b * b) % q == 0)
    assert (np.abs(mat) ** 2).sum() == pytest.approx(q * q * count, rel=1e-12)


@pytest.mark.parametrize(
    "h,q,expected",
    [(1, 3, Fraction(1, 18)), (1, 5, Fraction(1, 5)), (2, 5, Fraction(0)), (1, 7, Fraction(5, 14)),
     (3, 7, Fraction(-1, 14)), (1, 1, Fraction(0)), (1, 2, Fraction(0))],
)
def test_dedekind_examples(h, q, expected):
    assert dedekind_sum(h, q) == expected
    assert dedekind_sum(h, q, "direct") == expected


@pytest.mark.parametrize("q", range(2, 51))
def test_dedekind_symmetries(q):
    for h in range(1, q):
        if math.gcd(h, q) != 1:
            continue
        s = dedekind_sum(h, q)
        # S(1, q) closed form
        if h == 1:
            assert s == Fraction((q - 1) * (q - 2), 12 * q)
        assert dedekind_sum(q - h, q) == -s
        assert dedekind_sum(h + q, q) == s
        assert dedekind_sum(pow(h, -1, q), q) == s
        # 6q S(h, q), and hence 4q^2 S(h, q), is always an integer
        assert (6 * q * s).denominator == 1
        assert (4 * q * q * s).denominator == 1


def test_dedekind_reciprocity_agrees_with_direct():
    for q in range(1, 201):
        for h in range(-3, 2 * q + 1):
            if math.gcd(h, q) != 1:
                continue
            if q > 60 and h % 7:
                continue
            assert dedekind_sum(h, q) == dedekind_sum(h, q, "direct"), (h, q)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_reciprocity_law(h, k):
    if math.gcd(h, k) != 1:
        return
    lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
    assert lhs == Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k)


def test_dedekind_errors():
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)
    with pytest.raises(ValueError):
        dedekind_sum(1, 7, "fourier")


@pytest.mark.parametrize("p", [5, 7, 11, 13, 101])
def test_dedekind_from_l_functions(p):
    table = dedekind_table(p)
    for a in range(1, p):
        assert dedekind_from_l_functions(a, p) == table[a] == dedekind_sum(a, p, "direct")
    assert dedekind_from_l_functions(p - 1, p) == -dedekind_sum(1, p)
    with pytest.raises(ValueError):
        dedekind_from_l_functions(p, p)


@pytest.mark.parametrize("p,alpha", [(5, -1), (13, 3), (17, -1), (29, -5)])
def test_alpha_examples(p, alpha):
    assert alpha_constant(p) == alpha


def brute_alpha(p):
    # sum over a of ((a + a^-1)/p) via explicit square enumeration
    squares = {x * x % p for x in range(1, p)}

    def leg(n):
        n %= p
        return 0 if n == 0 else (1 if n in squares else -1)

    return sum(leg(a + pow(a, -1, p)) for a in range(1, (p - 1) // 2 + 1))


@pytest.mark.parametrize("p", primes_in_range(5, 1000))
def test_alpha_two_squares(p):
    if p % 4 != 1:
        return
    a = alpha_constant(p)
    if p < 200:
        assert a == brute_alpha(p)
    # alpha^2 + beta^2 = p with beta an integer
    b2 = p - a * a
    assert b2 >= 0 and math.isqrt(b2) ** 2 == b2
