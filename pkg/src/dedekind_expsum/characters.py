"""Dirichlet characters modulo an odd prime, Gauss sums and |L(1, chi)|^2.

A character is fixed by its index k: chi(g**t) = e(k t / (p - 1)) for the
least primitive root g. Values are carried two ways: exactly, as the exponent
of the (p-1)-th root of unity, and as complex doubles. The exact form is the
one used by identity checks.

For odd chi the classical finite form

    |L(1, chi)|^2 = (pi^2 / p^3) * |sum_{a=1}^{p-1} a chi(a)|^2

is used. ``Lambda(chi) = |sum a chi(a)|^2`` expands to ``sum_x c(x) chi(x)``
with integer weights ``c(x) = sum_b b * (b x mod p)``, so sums of Lambda over
the odd characters collapse to integers by orthogonality.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .core_arith import PrimeModulus, prime_modulus

FILTERS = ("all", "odd", "even", "principal", "quadratic", "fourth_order")


class NoSuchCharacter(LookupError):
    """Raised when a requested family of characters is empty for this modulus."""


def _modulus(p) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else prime_modulus(int(p))


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: PrimeModulus
    index: int

    def __post_init__(self):
        n = self.modulus.p - 1
        if not 0 <= self.index < n:
            raise ValueError(f"character index must lie in [0, {n - 1}]")

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def order(self) -> int:
        n = self.p - 1
        return n // math.gcd(n, self.index)

    @property
    def is_odd(self) -> bool:
        return self.index % 2 == 1

    @property
    def is_principal(self) -> bool:
        return self.index == 0

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, (-self.index) % (self.p - 1))

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if other.p != self.p:
            raise ValueError("characters to different moduli")
        return DirichletCharacter(self.modulus, (self.index + other.index) % (self.p - 1))

    def exponent(self, a: int) -> int | None:
        """j with chi(a) = e(j/(p-1)), or None when p | a."""
        a %= self.p
        if a == 0:
            return None
        return self.index * int(self.modulus.dlog[a]) % (self.p - 1)

    def __call__(self, a: int) -> complex:
        return character_value(self, a)

    def table(self) -> np.ndarray:
        """Complex values chi(x) for x = 0..p-1."""
        return _value_table(self.modulus, self.index)


@lru_cache(maxsize=4096)
def _value_table(mod: PrimeModulus, k: int) -> np.ndarray:
    n = mod.p - 1
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    t = np.zeros(mod.p, dtype=complex)
    t[1:] = roots[(k * mod.dlog[1:]) % n]
    t.setflags(write=False)
    return t


def character_value(chi: DirichletCharacter, a: int) -> complex:
    j = chi.exponent(a)
    if j is None:
        return 0j
    n = chi.p - 1
    # exact values on the axes keep real characters free of rounding noise
    if (4 * j) % n == 0:
        return (1, 1j, -1, -1j)[4 * j // n]
    return cmath.exp(2j * math.pi * j / n)


def select_characters(p, filter: str = "all") -> list[DirichletCharacter]:
    mod = _modulus(p)
    n = mod.p - 1
    if filter == "all":
        ks = range(n)
    elif filter == "odd":
        ks = range(1, n, 2)
    elif filter == "even":
        ks = range(0, n, 2)
    elif filter == "principal":
        ks = [0]
    elif filter == "quadratic":
        ks = [n // 2]
    elif filter == "fourth_order":
        if n % 4:
            raise NoSuchCharacter(f"no character of order 4 modulo {mod.p}")
        ks = [n // 4, 3 * n // 4]
    else:
        raise ValueError(f"unknown filter {filter!r}; expected one of {FILTERS}")
    return [DirichletCharacter(mod, k) for k in ks]


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_a chi(a) e(a/p), in floating point."""
    if chi.is_principal:
        raise ValueError("Gauss sum of the principal character is not used")
    p = chi.p
    a = np.arange(p)
    return complex(np.sum(chi.table() * np.exp(2j * np.pi * a / p)))


@lru_cache(maxsize=64)
def lambda_weights(p: int) -> np.ndarray:
    """Integer weights c(x) = sum_{b=1}^{p-1} b * (b x mod p); c(0) = 0."""
    b = np.arange(1, p, dtype=np.int64)
    prod = (np.arange(p, dtype=np.int64)[:, None] * b[None, :]) % p
    c = prod @ b
    c.setflags(write=False)
    return c


def odd_orthogonality(y: int, p: int) -> int:
    """sum over odd chi mod p of chi(y), an integer."""
    y %= p
    if y == 1:
        return (p - 1) // 2
    if y == p - 1:
        return -((p - 1) // 2)
    return 0


# cos(2 pi j / d) is rational exactly for d in {1, 2, 3, 4, 6}
_RATIONAL_COS = {
    1: (Fraction(1),),
    2: (Fraction(1), Fraction(-1)),
    3: (Fraction(1), Fraction(-1, 2), Fraction(-1, 2)),
    4: (Fraction(1), Fraction(0), Fraction(-1), Fraction(0)),
    6: (Fraction(1), Fraction(1, 2), Fraction(-1, 2), Fraction(-1), Fraction(-1, 2), Fraction(1, 2)),
}


@dataclass(frozen=True)
class LambdaValue:
    """Lambda(chi) = |L(1, chi)|^2 p^3 / pi^2 for an odd character.

    Held exactly as ``sum_x c(x) chi(x)``; ``float()`` evaluates it. The value
    is real and an algebraic integer; it is rational when the order of chi is
    1, 2, 3, 4 or 6, and ``exact()`` returns it then.
    """

    chi: DirichletCharacter

    def __float__(self) -> float:
        c = lambda_weights(self.chi.p)
        return float(np.dot(c, self.chi.table().real))

    def exact(self) -> Fraction:
        chi = self.chi
        d = chi.order
        if d not in _RATIONAL_COS:
            raise ValueError(f"Lambda(chi) is irrational in general for order {d}")
        c = lambda_weights(chi.p)
        n = chi.p - 1
        cos = _RATIONAL_COS[d]
        total = Fraction(0)
        for x in range(1, chi.p):
            j = chi.exponent(x) * d // n
            total += int(c[x]) * cos[j]
        return total

    def to_l_squared(self) -> float:
        """|L(1, chi)|^2 itself."""
        return math.pi**2 * float(self) / self.chi.p**3


def l_one_sq_pi_normalized(chi: DirichletCharacter) -> LambdaValue:
    if not chi.is_odd:
        raise ValueError("the finite form of |L(1, chi)|^2 holds for odd characters only")
    return LambdaValue(chi)


def odd_lambda_sum(p: int, a: int) -> int:
    """sum over odd chi of chi(a) Lambda(chi), exactly."""
    c = lambda_weights(p)
    total = 0
    for x in range(1, p):
        w = odd_orthogonality(a * x, p)
        if w:
            total += w * int(c[x])
    return total


def odd_lambda_square_sum(p: int) -> int:
    """sum over odd chi of Lambda(chi)^2, exactly."""
    c = [int(v) for v in lambda_weights(p)]
    half = (p - 1) // 2
    total = 0
    for x in range(1, p):
        xi = pow(x, -1, p)
        # chi(x y) summed over odd chi is nonzero only for y = +-1/x
        total += c[x] * (c[xi] - c[p - xi])
    return half * total


class LFourthMoment(NamedTuple):
    p: int
    exact_sum: Fraction
    main_term: Fraction
    normalized_residual: float

    @property
    def ratio(self) -> float:
        return float(self.exact_sum / self.main_term)


def envelope_growth(q: float) -> float:
    """exp(3 ln q / ln ln q)."""
    return math.exp(3 * math.log(q) / math.log(math.log(q)))


def l_fourth_moment(p: int) -> LFourthMoment:
    """sum_{chi odd} |L(1, chi)|^4 / pi^4 against its asymptotic main term.

    Both sides are in units of pi^4; the residual is scaled by the error
    envelope phi(p)/p * exp(3 ln p / ln ln p).
    """
    p = _modulus(p).p
    exact = Fraction(odd_lambda_square_sum(p), p**6)
    main = Fraction(5, 144) * (p - 1) * Fraction((p * p - 1) ** 3, p**4 * (p * p + 1))
    envelope = (p - 1) / p * envelope_growth(p)
    return LFourthMoment(p, exact, main, float(exact - main) / envelope)
