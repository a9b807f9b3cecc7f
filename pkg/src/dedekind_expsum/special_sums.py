"""Two-term exponential sums C(m, n, k, h; q), Dedekind sums and the alpha constant."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .characters import odd_lambda_sum
from .core_arith import legendre_symbol, mod_inverse, power_table, prime_modulus, sawtooth


@dataclass(frozen=True)
class ExpSumParams:
    m: int
    n: int
    k: int
    h: int
    q: int

    def __post_init__(self):
        if self.k < 1 or self.h < 1:
            raise ValueError("exponents k and h must be positive")
        if self.q < 3:
            raise ValueError("modulus q must be at least 3")


@lru_cache(maxsize=64)
def _roots_of_unity(q: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(q) / q)


def two_term_exponential_sum(params: ExpSumParams) -> complex:
    """sum_{a=0}^{q-1} e((m a^k + n a^h) / q)."""
    q = params.q
    s = power_table(q, params.k)
    t = power_table(q, params.h)
    idx = (params.m % q * s + params.n % q * t) % q
    return complex(_roots_of_unity(q)[idx].sum())


def exp_sum_matrix(q: int, k: int, h: int) -> np.ndarray:
    """All C(m, n, k, h; q) for 0 <= m, n < q as a q x q complex array.

    C is the 2-D inverse DFT (scaled by q^2) of the one-variable count grid
    #{a : a^k = u, a^h = v}, so the whole table costs one FFT.
    """
    s = power_table(q, k)
    t = power_table(q, h)
    grid = np.zeros((q, q))
    np.add.at(grid, (s, t), 1.0)
    return np.fft.ifft2(grid) * (q * q)


def dedekind_sum(h: int, q: int, method: str = "reciprocity") -> Fraction:
    """S(h, q) = sum_{a=0}^{q-1} ((a/q)) ((a h / q))."""
    if q < 1:
        raise ValueError("q must be positive")
    if math.gcd(h, q) != 1:
        raise ValueError(f"gcd({h}, {q}) != 1")
    if method == "direct":
        return sum((sawtooth(Fraction(a, q)) * sawtooth(Fraction(a * h, q)) for a in range(q)), Fraction(0))
    if method == "reciprocity":
        return _dedekind_reciprocity(h, q)
    raise ValueError(f"unknown method {method!r}")


def _dedekind_reciprocity(h: int, q: int) -> Fraction:
    # S(h,q) + S(q,h) = -1/4 + (h^2 + q^2 + 1)/(12 h q); S depends on h mod q only
    # and S(-h, q) = -S(h, q), so reduce to 0 < h < q/2 at every step.
    total = Fraction(0)
    sign = 1
    h %= q
    while q > 1:
        if 2 * h > q:
            h = q - h
            sign = -sign
        if h == 0:
            break
        total += sign * (Fraction(h * h + q * q + 1, 12 * h * q) - Fraction(1, 4))
        h, q = q % h, h
        sign = -sign
    return total


@lru_cache(maxsize=32)
def dedekind_table(p: int) -> tuple[Fraction, ...]:
    """S(h, p) for h = 0..p-1 (entry 0 is 0 and never used)."""
    return (Fraction(0),) + tuple(_dedekind_reciprocity(h, p) for h in range(1, p))


def dedekind_from_l_functions(a: int, p) -> Fraction:
    """S(a, p) rebuilt from |L(1, chi)|^2 over odd characters.

    S(a,p) = (1/pi^2) (p/(p-1)) sum_{chi odd} chi(a) |L(1,chi)|^2, and with
    |L|^2 = pi^2 Lambda / p^3 the pi factors cancel exactly.
    """
    mod = prime_modulus(int(p)) if not hasattr(p, "p") else p
    q = mod.p
    if a % q == 0:
        raise ValueError(f"{a} is divisible by {q}")
    return Fraction(odd_lambda_sum(q, a), q * q * (q - 1))


def alpha_constant(p) -> int:
    """sum_{a=1}^{(p-1)/2} ((a + 1/a) / p)."""
    q = int(getattr(p, "p", p))
    return sum(legendre_symbol(a + mod_inverse(a, q), q) for a in range(1, (q - 1) // 2 + 1))
