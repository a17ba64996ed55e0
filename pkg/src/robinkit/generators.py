"""Candidate families: primorials, descending-exponent numbers, factorial towers, CA numbers."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import primes as _primes
from .errors import InvalidArgument
from .factor import EXPONENT_BOUND, Factorization, sigma_sieve
from .interval import Interval, Ordering, compare, log, working_precision


def primorial(m: int) -> Factorization:
    """p_1 p_2 ... p_m."""
    if m < 1:
        raise InvalidArgument("primorial needs m >= 1")
    return Factorization.from_exponents([1] * m)


def descending_number(exponents) -> Factorization:
    """prod p_k^beta_k for a nonincreasing exponent list."""
    exponents = [int(b) for b in exponents]
    if not exponents or min(exponents) < 1:
        raise InvalidArgument("exponents must be a nonempty list of integers >= 1")
    if any(x < y for x, y in zip(exponents, exponents[1:])):
        raise InvalidArgument(f"exponents {exponents} are not nonincreasing")
    return Factorization.from_exponents(exponents)


def factorial_tower(m: int, log_only: bool = False) -> Factorization:
    """prod p_k^((m-k+1)!). Past m = 12 the exponents only fit in log-only mode."""
    if m < 1:
        raise InvalidArgument("factorial tower needs m >= 1")
    if math.factorial(m) > EXPONENT_BOUND and not log_only:
        raise InvalidArgument(
            f"{m}! exceeds the exponent bound {EXPONENT_BOUND}; pass log_only=True")
    exps = [math.factorial(m - k) for k in range(m)]
    return Factorization.from_exponents(exps, log_only=log_only)


# --- colossally abundant numbers ------------------------------------------

def critical_epsilon(p: int, k: int) -> Interval:
    """ln(1 + 1/(p + ... + p^k)) / ln p: the largest epsilon giving p exponent >= k."""
    s = p * (p**k - 1) // (p - 1)
    return log(Interval.from_ratio(s + 1, s)) / log(p)


def _separate(a_fn, b_fn, bits: int, escalations: int = 3) -> Ordering:
    for _ in range(escalations + 1):
        with working_precision(bits):
            order = compare(a_fn(), b_fn())
        if order is not Ordering.INDETERMINATE:
            return order
        bits *= 2
    return Ordering.INDETERMINATE


def _ca_exponent(p: int, eps: Fraction, bits: int) -> int:
    k = 0
    while True:
        order = _separate(lambda: Interval.exact(eps), lambda: critical_epsilon(p, k + 1), bits)
        if order is Ordering.INDETERMINATE:
            # critical values are irrational, so this needs absurd precision to hit
            raise ArithmeticError(f"epsilon {eps} not separated from critical value of {p}")
        if order is Ordering.GREATER:
            return k
        k += 1


def ca_number(epsilon, bits: int = 128) -> Factorization:
    """The colossally abundant number with parameter ``epsilon``.

    Exponent of p is floor(log_p((p^(1+e) - 1)/(p^e - 1))) - 1, computed as the
    count of critical values ``critical_epsilon(p, k) >= epsilon``.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise InvalidArgument("epsilon must be positive")
    pairs = []
    for p in _primes.primes_up_to(1 << 16):
        a = _ca_exponent(p, eps, bits)
        if a == 0:
            # critical_epsilon(p, 1) decreases with p, so no later prime enters
            break
        pairs.append((p, a))
    else:
        raise InvalidArgument(f"epsilon {epsilon} too small for the built-in prime range")
    return Factorization(tuple(pairs))


@dataclass(order=True)
class _Step:
    key: float
    p: int = field(compare=False)
    k: int = field(compare=False)
    crit: Interval = field(compare=False)


def ca_critical_chain(count: int, bits: int = 256) -> list[tuple[Interval, Factorization]]:
    """First ``count`` CA numbers with the critical epsilon at which each appears.

    Steps are taken in decreasing order of critical epsilon; two steps whose
    critical values cannot be separated are taken together.
    """
    if count < 1:
        raise InvalidArgument("count must be >= 1")
    primes_iter = iter(_primes.primes_up_to(1 << 20))

    def step(p, k):
        with working_precision(bits):
            c = critical_epsilon(p, k)
        return _Step(-float(c.mid), p, k, c)

    heap = [step(next(primes_iter), 1)]
    exps: dict[int, int] = {}
    chain = []
    while len(chain) < count:
        group = [heapq.heappop(heap)]
        while heap and _separate(lambda: heap[0].crit, lambda: group[0].crit,
                                 bits) is Ordering.INDETERMINATE:
            group.append(heapq.heappop(heap))
        for s in group:
            exps[s.p] = s.k
            heapq.heappush(heap, step(s.p, s.k + 1))
            if s.k == 1:
                heapq.heappush(heap, step(next(primes_iter), 1))
        chain.append((group[0].crit, Factorization.from_pairs(exps.items())))
    return chain


def ca_chain(count: int) -> list[Factorization]:
    """First ``count`` colossally abundant numbers, increasing."""
    return [f for _, f in ca_critical_chain(count)]


SUPERABUNDANT_LIMIT = 10**7


def superabundant_oracle(limit: int) -> list[int]:
    """All n <= limit with sigma(n)/n above sigma(k)/k for every k < n (brute force)."""
    if limit < 1:
        raise InvalidArgument("limit must be >= 1")
    if limit > SUPERABUNDANT_LIMIT:
        raise InvalidArgument(f"limit above {SUPERABUNDANT_LIMIT}")
    sig = sigma_sieve(limit)
    n = np.arange(1, limit + 1)
    ratio = sig[1:] / n
    prior = np.concatenate(([0.0], np.maximum.accumulate(ratio)[:-1]))
    # float screen is loose; the exact comparison below decides
    candidates = np.flatnonzero(ratio >= prior * (1 - 1e-9)) + 1
    out = []
    best_s, best_n = 0, 1
    for c in candidates.tolist():
        s = int(sig[c])
        if s * best_n > best_s * c:
            out.append(c)
            best_s, best_n = s, c
    return out


# --- families --------------------------------------------------------------

FAMILIES = ("primorial", "descending", "factorial", "ca")


@dataclass(frozen=True)
class CandidateFamily:
    """A tagged, parameterized family iterated in increasing n."""

    tag: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise InvalidArgument(f"unknown family {self.tag!r}; expected one of {FAMILIES}")

    def __iter__(self) -> Iterator[Factorization]:
        p = self.params
        if self.tag == "primorial":
            for m in range(p.get("start", 1), p["m"] + 1):
                yield primorial(m)
        elif self.tag == "descending":
            yield descending_number(p["exponents"])
        elif self.tag == "factorial":
            for m in range(p.get("start", 1), p["m"] + 1):
                yield factorial_tower(m, log_only=p.get("log_only", False))
        else:
            yield from ca_chain(p["count"])
