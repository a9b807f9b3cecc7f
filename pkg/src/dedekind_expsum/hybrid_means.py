"""Hybrid power means of |C(m, n, k, h; p)| against S(m/n, p), and prime scans.

The quantity computed throughout is

    sum_{m=1}^{p-1} sum_{n=1}^{p-1} |C(m, n, k, h; p)|^c * S(m n^{-1}, p)^(2r)

with S taken from an exact per-prime table and converted to float once.
Sums are accumulated with ``math.fsum`` (exactly rounded), so results do not
depend on term order or on how the work is split.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .characters import envelope_growth, l_fourth_moment
from .core_arith import is_prime, primes_in_range
from .moment_engine import (
    MomentReport,
    Verdict,
    eq2_report,
    fourth_moment_51_report,
    lemma21_report,
    lemma25_report,
    lemma27_report,
    vanishing_report,
)
from .special_sums import dedekind_table, exp_sum_matrix


@dataclass(frozen=True)
class HybridParams:
    k: int = 4
    h: int = 2
    c_power: int = 4
    r: int = 1

    def __post_init__(self):
        if self.k < 1 or self.h < 1:
            raise ValueError("exponents must be positive")
        if self.c_power not in (2, 4):
            raise ValueError("c_power must be 2 or 4")
        if self.r < 1:
            raise ValueError("r must be a positive integer")


@dataclass
class ResidualRecord:
    target: str
    p: int
    mean_value: float
    main_term: float
    ratio: float
    normalized_residual: float
    verdict: Verdict | None = None
    runtime_ms: int = 0
    params: dict = field(default_factory=dict, compare=False)

    @property
    def residue_class(self) -> int:
        return self.p % 8


def _check_prime(p: int):
    if p <= 3 or not is_prime(p):
        raise ValueError(f"need a prime p > 3, got {p}")


def _dedekind_powers(p: int, r: int) -> np.ndarray:
    table = dedekind_table(p)
    return np.array([float(s ** (2 * r)) for s in table])


def _quotient_index(p: int) -> np.ndarray:
    """(m * n^{-1}) mod p for 1 <= m, n <= p-1."""
    m = np.arange(1, p, dtype=np.int64)
    inv = np.array([pow(int(n), -1, p) for n in m], dtype=np.int64)
    return (m[:, None] * inv[None, :]) % p


def hybrid_terms(p: int, params: HybridParams, dedekind: bool = True) -> np.ndarray:
    """The (p-1) x (p-1) array of summands, rows indexed by m, columns by n."""
    _check_prime(p)
    c = np.abs(exp_sum_matrix(p, params.k, params.h)[1:, 1:]) ** params.c_power
    if not dedekind:
        return c
    return c * _dedekind_powers(p, params.r)[_quotient_index(p)]


def hybrid_power_mean(p: int, params: HybridParams = HybridParams(), dedekind: bool = True) -> float:
    """Hybrid mean; ``dedekind=False`` forces the S factor to 1 (the plain moment)."""
    return math.fsum(hybrid_terms(p, params, dedekind).ravel())


WANGPAN = {
    (3, 1): Fraction(5, 144),
    (4, 2): Fraction(5, 72),
}


def squared_mean_wangpan(p: int, variant: tuple[int, int] = (3, 1)) -> tuple[float, float]:
    """(sum |C|^2 S^2, main term c p^4) for the (3,1) and (4,2) squared means."""
    variant = tuple(variant)
    if variant not in WANGPAN:
        raise ValueError(f"variant must be one of {sorted(WANGPAN)}")
    k, h = variant
    mean = hybrid_power_mean(p, HybridParams(k, h, c_power=2))
    return mean, float(WANGPAN[variant] * p**4)


THEOREMS = {
    "t11": (HybridParams(4, 2), Fraction(35, 144)),
    "t12": (HybridParams(5, 1), Fraction(5, 48)),
}


def theorem_envelope(p: int, theorem: str) -> float:
    base = p**4.5 if theorem == "t11" and p % 4 == 1 else p**4
    return base * envelope_growth(p)


def theorem_residual_report(p: int, theorem: str, bound: float | None = None) -> ResidualRecord:
    theorem = theorem.lower()
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}")
    _check_prime(p)
    if theorem == "t12" and p % 4 != 3:
        raise ValueError(f"the (5,1) hybrid mean is only defined for p = 3 mod 4, got p = {p}")
    params, coeff = THEOREMS[theorem]
    t0 = time.perf_counter()
    mean = hybrid_power_mean(p, params)
    ms = int(round((time.perf_counter() - t0) * 1000))
    main = float(coeff * p**5)
    norm = (mean - main) / theorem_envelope(p, theorem)
    return ResidualRecord(theorem, p, mean, main, mean / main, norm,
                          _bound_verdict(norm, bound), ms,
                          {"k": params.k, "h": params.h, "c_power": 4, "r": 1})


def wangpan_report(p: int, variant: tuple[int, int], bound: float | None = None) -> ResidualRecord:
    t0 = time.perf_counter()
    mean, main = squared_mean_wangpan(p, variant)
    ms = int(round((time.perf_counter() - t0) * 1000))
    norm = (mean - main) / (p**3 * envelope_growth(p))
    k, h = variant
    return ResidualRecord(f"wangpan{k}{h}", p, mean, main, mean / main, norm,
                          _bound_verdict(norm, bound), ms, {"k": k, "h": h, "c_power": 2, "r": 1})


def lemma26_report(p: int, bound: float | None = None) -> ResidualRecord:
    t0 = time.perf_counter()
    res = l_fourth_moment(p)
    ms = int(round((time.perf_counter() - t0) * 1000))
    return ResidualRecord("lemma26", p, float(res.exact_sum), float(res.main_term), res.ratio,
                          res.normalized_residual, _bound_verdict(res.normalized_residual, bound), ms)


def hybrid_report(p: int, params: HybridParams) -> ResidualRecord:
    """Exploratory mean; no main term is claimed, so the ratio is against p^(c+1)."""
    t0 = time.perf_counter()
    mean = hybrid_power_mean(p, params)
    ms = int(round((time.perf_counter() - t0) * 1000))
    main = float(p ** (params.c_power + 1))
    return ResidualRecord("hybrid", p, mean, main, mean / main, float("nan"), None, ms,
                          {"k": params.k, "h": params.h, "c_power": params.c_power, "r": params.r})


def _bound_verdict(norm: float, bound: float | None) -> Verdict | None:
    if bound is None:
        return None
    return Verdict.BOUND_OK if abs(norm) <= bound else Verdict.BOUND_FAIL


# ---------------------------------------------------------------- scans

def _run_wangpan(p, bounds, opts):
    return [wangpan_report(p, (3, 1), bounds.get("wangpan31")),
            wangpan_report(p, (4, 2), bounds.get("wangpan42"))]


def _tol(opts):
    return opts.get("tolerance", 1e-6)


# target -> (which primes qualify, runner(p, bounds, options) -> records)
TARGETS = {
    "lemma21": (lambda p: True, lambda p, b, o: [lemma21_report(p)]),
    "eq2": (lambda p: True, lambda p, b, o: [eq2_report(p)]),
    "lemma22": (lambda p: True, lambda p, b, o: [fourth_moment_51_report(p, b.get("lemma22"))]),
    "lemma23": (lambda p: p % 4 == 3, lambda p, b, o: [vanishing_report(p, (4, 2), _tol(o))]),
    "lemma24": (lambda p: p % 4 == 3, lambda p, b, o: [vanishing_report(p, (5, 1), _tol(o))]),
    "lemma25": (lambda p: True, lambda p, b, o: [lemma25_report(p)]),
    "lemma26": (lambda p: True, lambda p, b, o: [lemma26_report(p, b.get("lemma26"))]),
    "lemma27": (lambda p: True, lambda p, b, o: [lemma27_report(p, b.get("lemma27"))]),
    "t11": (lambda p: True, lambda p, b, o: [theorem_residual_report(p, "t11", b.get("t11"))]),
    "t12": (lambda p: p % 4 == 3, lambda p, b, o: [theorem_residual_report(p, "t12", b.get("t12"))]),
    "wangpan": (lambda p: True, _run_wangpan),
    "hybrid": (lambda p: True, lambda p, b, o: [hybrid_report(p, HybridParams(**o.get("params", {})))]),
}


def _job(args):
    target, p, bounds, opts = args
    return TARGETS[target][1](p, bounds, opts)


def prime_scan(
    p_min: int,
    p_max: int,
    target: str,
    workers: int = 1,
    bounds: dict[str, float] | None = None,
    **options,
) -> list[MomentReport | ResidualRecord]:
    """Run ``target`` on every qualifying prime in [p_min, p_max], sorted by p.

    Primes outside a target's hypothesis (e.g. p = 1 mod 4 for the (5,1)
    theorem) are skipped. ``bounds`` maps record targets to the envelope
    constants used for BOUND_OK / BOUND_FAIL verdicts; without an entry no
    bound verdict is given. Results do not depend on ``workers``.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {sorted(TARGETS)}")
    if p_min > p_max:
        return []
    if p_min < 5:
        raise ValueError("p_min must be at least 5")
    if workers < 1:
        raise ValueError("workers must be positive")
    keep = TARGETS[target][0]
    primes = [p for p in primes_in_range(p_min, p_max) if keep(p)]
    jobs = [(target, p, dict(bounds or {}), options) for p in primes]
    if workers == 1 or len(jobs) <= 1:
        chunks = [_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_job, jobs))
    out = [rec for chunk in chunks for rec in chunk]
    out.sort(key=lambda r: r.p)
    return out
