"""Exact factorization arithmetic: n, sigma(n), sigma(n)/n and ln n from (q, alpha) pairs.

Nothing here needs n to fit in a machine word. ``log_only`` factorizations
may carry exponents too large to materialize n at all; they still support
``sigma_over_n`` and ``log_n``.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Iterable

import numba
import numpy as np

from . import primes as _primes
from .errors import (BudgetExceeded, DuplicatePrime, InvalidArgument, NonPrimeBase,
                     ParseError, TooLargeToFactor)
from .interval import (Interval, _dyadic, bits_for_tolerance, certify, get_precision,
                       log)

EXPONENT_BOUND = 2**32 - 1
FACTOR_BUDGET = 10**12
# above this many bits of n the exact sigma/n ratio switches to per-prime enclosures
EXACT_RATIO_BITS = 1 << 22


@dataclass(frozen=True)
class Factorization:
    """n = prod q_k^alpha_k with strictly ascending primes; empty means n = 1."""

    entries: tuple[tuple[int, int], ...] = ()
    log_only: bool = False

    def __post_init__(self):
        entries = tuple((int(q), int(a)) for q, a in self.entries)
        prev = 1
        for q, a in entries:
            if q <= prev:
                if q == prev:
                    raise DuplicatePrime(q)
                raise InvalidArgument("primes must be strictly ascending")
            if a < 1:
                raise InvalidArgument(f"exponent of {q} must be at least 1, got {a}")
            if a > EXPONENT_BOUND and not self.log_only:
                raise InvalidArgument(
                    f"exponent {a} of {q} exceeds {EXPONENT_BOUND}; use log_only=True")
            prev = q
        bad = _primes.first_nonprime(q for q, _ in entries)
        if bad is not None:
            raise NonPrimeBase(bad)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def _trusted(cls, entries):
        # entries already known to be ascending primes with positive exponents
        f = object.__new__(cls)
        object.__setattr__(f, "entries", entries)
        object.__setattr__(f, "log_only", False)
        return f

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], log_only: bool = False):
        pairs = sorted((int(q), int(a)) for q, a in pairs)
        return cls(tuple(pairs), log_only)

    @classmethod
    def from_exponents(cls, exponents, log_only: bool = False):
        """Exponents placed on the first m primes, in order."""
        exponents = [int(a) for a in exponents]
        ps = _primes.first_primes(len(exponents)).tolist()
        return cls(tuple(zip(ps, exponents)), log_only)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.entries)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.entries)

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def has_canonical_support(self) -> bool:
        """True when the primes are exactly p_1, ..., p_m."""
        return self.primes == tuple(_primes.first_primes(self.m).tolist())

    @functools.cached_property
    def value(self) -> int:
        return value(self)

    def log2_estimate(self) -> float:
        return sum(a * math.log2(q) for q, a in self.entries)

    def __mul__(self, other: "Factorization") -> "Factorization":
        merged = dict(self.entries)
        for q, a in other.entries:
            merged[q] = merged.get(q, 0) + a
        return Factorization.from_pairs(merged.items(), self.log_only or other.log_only)

    def __str__(self) -> str:
        return format_factorization(self)


def format_factorization(f: Factorization) -> str:
    return "*".join(str(q) if a == 1 else f"{q}^{a}" for q, a in f.entries)


_TERM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_factorization(text: str) -> Factorization:
    """Parse ``prime(^exp)?(*prime(^exp)?)*``; empty text (or ``1``) is n = 1."""
    text = text.strip()
    if text in ("", "1"):
        return Factorization()
    seen: dict[int, int] = {}
    for term in text.split("*"):
        match = _TERM.match(term)
        if not match:
            raise ParseError(f"malformed term {term!r}")
        q = int(match.group(1))
        a = int(match.group(2)) if match.group(2) is not None else 1
        if not _primes.is_prime(q):
            raise NonPrimeBase(q)
        if a == 0:
            raise ParseError(f"zero exponent on {q}")
        if q in seen:
            raise DuplicatePrime(q)
        seen[q] = a
    return Factorization.from_pairs(seen.items(), log_only=any(
        a > EXPONENT_BOUND for a in seen.values()))


@functools.lru_cache(maxsize=2)
def _trial_primes(limit: int) -> tuple[int, ...]:
    table = _primes.primes_up_to(limit)
    return tuple(table.primes[: table.count(limit)].tolist())


def factorize(n: int, budget: int = FACTOR_BUDGET) -> Factorization:
    """Trial division, limited to n <= ``budget``."""
    n = int(n)
    if n < 1:
        raise InvalidArgument("factorize needs n >= 1")
    if n > budget:
        raise TooLargeToFactor(n, budget)
    pairs = []
    ps = _trial_primes(math.isqrt(FACTOR_BUDGET) + 1 if n > 1 << 20 else 1 << 10)
    for p in ps:
        if p * p > n:
            break
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            pairs.append((p, a))
    if n > 1:
        pairs.append((n, 1))
    return Factorization._trusted(tuple(pairs))


def value(f: Factorization) -> int:
    if f.log_only:
        raise InvalidArgument("log-only factorization cannot be materialized")
    return int(_primes.product(q**a for q, a in f.entries))


def sigma(f: Factorization) -> int:
    """Exact sum of divisors via prod (q^(a+1) - 1) / (q - 1)."""
    if f.log_only:
        raise InvalidArgument("log-only factorization cannot be materialized")
    return int(_primes.product((q ** (a + 1) - 1) // (q - 1) for q, a in f.entries))


def abundancy_factor(q: int, a, bits: int | None = None) -> Interval:
    """Enclosure of (q - q^-a)/(q - 1) = sigma(q^a)/q^a.

    ``a`` may be ``math.inf``, which gives q/(q - 1).
    """
    bits = bits or get_precision()
    if a == math.inf:
        return Interval.from_ratio(q, q - 1)
    if a * q.bit_length() <= bits + 64:
        return Interval.from_ratio(q ** (a + 1) - 1, q**a * (q - 1))
    # q^-a <= 2^-k is far below the working precision; bracket it
    k = min(a * (q.bit_length() - 1), bits + 64)
    top = Interval.from_ratio(q, q - 1)
    tail = Interval(0, _dyadic(1, -k)) / (q - 1)
    return Interval((top - tail).lo, top.hi)


def _sigma_over_n_at_precision(f: Factorization) -> Interval:
    if not f.entries:
        return Interval.exact(1)
    if not f.log_only and f.log2_estimate() <= EXACT_RATIO_BITS:
        num = _primes.product(q ** (a + 1) - 1 for q, a in f.entries)
        den = _primes.product(q**a * (q - 1) for q, a in f.entries)
        return Interval.from_ratio(num, den)
    result = Interval.exact(1)
    for q, a in f.entries:
        result = result * abundancy_factor(q, a)
    return result


def sigma_over_n(f: Factorization, tolerance: float = 1e-30) -> Interval:
    """Enclosure of sigma(n)/n of width at most ``tolerance``."""
    bits = bits_for_tolerance(tolerance, 1 + 0.1 * f.m) + f.m.bit_length()
    return certify(lambda: _sigma_over_n_at_precision(f), tolerance, bits=bits)


def _log_n_at_precision(f: Factorization) -> Interval:
    total = Interval.exact(0)
    for q, a in f.entries:
        total = total + log(q) * a
    return total


def log_n(f: Factorization, tolerance: float = 1e-30) -> Interval:
    """Enclosure of ln n = sum alpha_k ln q_k. n = 1 gives 0 flagged ``degenerate``."""
    if not f.entries:
        return Interval(0, degenerate=True)
    magnitude = f.log2_estimate()
    bits = bits_for_tolerance(tolerance, magnitude) + f.m.bit_length()
    return certify(lambda: _log_n_at_precision(f), tolerance, bits=bits)


@numba.njit(cache=True)
def _linear_sigma(limit):
    sigma = np.zeros(limit + 1, np.int64)
    spf = np.zeros(limit + 1, np.int32)
    # pw[n] = full power of the smallest prime factor dividing n
    pw = np.zeros(limit + 1, np.int32)
    primes = np.empty(limit // 2 + 2, np.int64)
    count = 0
    if limit >= 1:
        sigma[1] = 1
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
            pw[i] = i
            sigma[i] = i + 1
            primes[count] = i
            count += 1
        si = spf[i]
        for j in range(count):
            p = primes[j]
            k = p * i
            if p > si or k > limit:
                break
            spf[k] = p
            if p == si:
                pw[k] = pw[i] * p
                sigma[k] = sigma[i // pw[i]] * (sigma[pw[i]] * p + 1)
            else:
                pw[k] = p
                sigma[k] = sigma[i] * (p + 1)
    return sigma


SIEVE_BYTES_PER_ENTRY = 20
DEFAULT_MEMORY_BUDGET = 1 << 30


def sigma_sieve(limit: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> np.ndarray:
    """``table[n] = sigma(n)`` for 1 <= n <= limit (``table[0]`` is 0), linear sieve."""
    if limit < 1:
        raise InvalidArgument("sigma_sieve needs limit >= 1")
    if limit >= 2**31 - 1 or SIEVE_BYTES_PER_ENTRY * (limit + 1) > memory_budget:
        raise BudgetExceeded(
            f"sigma table to {limit} needs ~{SIEVE_BYTES_PER_ENTRY * (limit + 1)} bytes, "
            f"budget is {memory_budget}")
    return _linear_sigma(int(limit))
