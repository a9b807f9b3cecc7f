"""Modular arithmetic over odd primes, quadratic residues and the sawtooth."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

# Dedekind sums and pi-normalized L-values are carried as stdlib Fractions.
ExactRational = Fraction


def is_prime(n: int) -> bool:
    """Deterministic trial division; intended for desk-scale n."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi (empty when lo > hi)."""
    if hi < 2 or lo > hi:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for d in range(2, math.isqrt(hi) + 1):
        if sieve[d]:
            sieve[d * d :: d] = False
    return [int(p) for p in np.nonzero(sieve)[0] if p >= lo]


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Least generator of the multiplicative group mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // d, p) != 1 for d in factors):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


@dataclass(frozen=True, eq=False)
class PrimeModulus:
    """An odd prime together with its least primitive root and discrete-log table.

    ``dlog[a]`` is the exponent t with g**t == a (mod p) for 1 <= a < p;
    ``dlog[0]`` is -1. ``powers[t]`` is g**t mod p.
    """

    p: int
    g: int = field(init=False)
    dlog: np.ndarray = field(init=False, repr=False)
    powers: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        p = self.p
        if p < 3 or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        g = primitive_root(p)
        powers = np.empty(p - 1, dtype=np.int64)
        dlog = np.full(p, -1, dtype=np.int64)
        x = 1
        for t in range(p - 1):
            powers[t] = x
            dlog[x] = t
            x = x * g % p
        powers.setflags(write=False)
        dlog.setflags(write=False)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "powers", powers)
        object.__setattr__(self, "dlog", dlog)

    def __int__(self):
        return self.p

    def __repr__(self):
        return f"PrimeModulus(p={self.p}, g={self.g})"


@lru_cache(maxsize=256)
def prime_modulus(p: int) -> PrimeModulus:
    """Shared, cached PrimeModulus for p."""
    return PrimeModulus(p)


def _as_int(p) -> int:
    return p.p if isinstance(p, PrimeModulus) else int(p)


def mod_inverse(a: int, p) -> int:
    """Inverse of a modulo the prime p, in [1, p-1]."""
    q = _as_int(p)
    if a % q == 0:
        raise ZeroDivisionError(f"{a} has no inverse modulo {q}")
    # extended Euclid
    r0, r1, s0, s1 = a % q, q, 1, 0
    while r1:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    return s0 % q


def legendre_symbol(a: int, p) -> int:
    """(a/p) in {-1, 0, 1} by Euler's criterion."""
    q = _as_int(p)
    r = pow(a % q, (q - 1) // 2, q)
    return -1 if r == q - 1 else r


@lru_cache(maxsize=256)
def legendre_table(p: int) -> np.ndarray:
    """Array t with t[x] = (x/p) for 0 <= x < p."""
    t = -np.ones(p, dtype=np.int64)
    t[0] = 0
    t[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    t.setflags(write=False)
    return t


def power_table(p: int, k: int) -> np.ndarray:
    """x**k mod p for every residue x, by repeated squaring."""
    return np.array([pow(x, k, p) for x in range(p)], dtype=np.int64)


def sawtooth(x) -> Fraction:
    """((x)): x - floor(x) - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)
