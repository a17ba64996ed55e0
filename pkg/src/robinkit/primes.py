"""Prime tables, pi(x), p_k and Chebyshev's theta with certified enclosures."""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass, field
from typing import Iterator

import gmpy2
import numpy as np
from gmpy2 import mpz

from .errors import InvalidArgument
from .interval import Interval, get_precision, working_precision, _contexts

SEGMENT_SIZE = 1 << 18  # odd numbers per segment, about 256 KiB of flags

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


@functools.lru_cache(maxsize=1 << 16)
def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24; BPSW plus the fixed witnesses above that."""
    n = int(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if not all(gmpy2.is_strong_prp(n, a) for a in _MR_BASES):
        return False
    return n < _MR_LIMIT or gmpy2.is_bpsw_prp(n)


TABLE_CHECK_LIMIT = 2 * 10**7


def first_nonprime(values) -> int | None:
    """First value that is not prime, or None. Small values go through the sieve."""
    values = [int(v) for v in values]
    if len(values) <= 16:
        return next((v for v in values if not is_prime(v)), None)
    small = [v for v in values if v <= TABLE_CHECK_LIMIT]
    if small:
        ps = primes_up_to(max(max(small), 2)).primes
        arr = np.asarray(small, dtype=np.int64)
        idx = np.minimum(np.searchsorted(ps, arr), len(ps) - 1)
        bad = np.flatnonzero(ps[idx] != arr)
        if len(bad):
            return small[int(bad[0])]
    for v in values:
        if v > TABLE_CHECK_LIMIT and not is_prime(v):
            return v
    return None


def _small_sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.flatnonzero(flags)


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit``, ascending."""

    limit: int
    primes: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self) -> Iterator[int]:
        return (int(p) for p in self.primes)

    def __contains__(self, n) -> bool:
        if n > self.limit:
            raise InvalidArgument(f"{n} is beyond the table limit {self.limit}")
        i = np.searchsorted(self.primes, n)
        return i < len(self.primes) and self.primes[i] == n

    def count(self, x) -> int:
        """pi(x) for x up to the table limit."""
        if x > self.limit:
            raise InvalidArgument(f"{x} is beyond the table limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))

    def nth(self, k: int) -> int:
        if k < 1:
            raise InvalidArgument("prime index starts at 1")
        if k > len(self.primes):
            raise InvalidArgument(f"table holds only {len(self.primes)} primes")
        return int(self.primes[k - 1])


def sieve(limit: int, segment_size: int = SEGMENT_SIZE) -> PrimeTable:
    """Segmented, odd-only sieve of Eratosthenes."""
    if limit < 2:
        raise InvalidArgument(f"sieve limit must be at least 2, got {limit}")
    limit = int(limit)
    root = math.isqrt(limit)
    base = _small_sieve(max(root, 2))
    odd_base = base[base > 2]
    chunks = [np.array([2], dtype=np.int64)]
    span = 2 * segment_size
    low = 3
    while low <= limit:
        high = min(low + span, limit + 1)  # exclusive
        flags = np.ones((high - low + 1) // 2, dtype=bool)
        for p in odd_base:
            p = int(p)
            sq = p * p
            if sq >= high:
                break
            start = max(sq, -(-low // p) * p)
            if start % 2 == 0:
                start += p
            flags[(start - low) // 2::p] = False
        chunks.append(low + 2 * np.flatnonzero(flags).astype(np.int64))
        low = high if high % 2 else high + 1
    primes = np.concatenate(chunks)
    return PrimeTable(limit, primes[primes <= limit])


_lock = threading.Lock()
_shared: PrimeTable | None = None


def primes_up_to(limit: int) -> PrimeTable:
    """Shared table covering at least ``limit``; grows geometrically on demand."""
    global _shared
    with _lock:
        if _shared is None or _shared.limit < limit:
            grow = max(int(limit), 2 * _shared.limit if _shared else 1 << 16)
            _shared = sieve(grow)
        return _shared


def nth_prime_upper_bound(k: int) -> int:
    # p_k < k (ln k + ln ln k) for k >= 6
    if k < 6:
        return 13
    lk = math.log(k)
    return int(k * (lk + math.log(lk))) + 1


def nth_prime(k: int) -> int:
    """The k-th prime, 1-indexed (p_1 = 2)."""
    if k < 1:
        raise InvalidArgument("prime index starts at 1")
    return primes_up_to(nth_prime_upper_bound(k)).nth(k)


def first_primes(m: int) -> np.ndarray:
    if m < 0:
        raise InvalidArgument("m must be non-negative")
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    return primes_up_to(nth_prime_upper_bound(m)).primes[:m]


def prime_count(x: int) -> int:
    if x < 2:
        return 0
    return primes_up_to(int(x)).count(int(x))


def product(values) -> mpz:
    """Exact product by balanced pairwise reduction."""
    items = [mpz(int(v)) for v in values]
    if not items:
        return mpz(1)
    while len(items) > 1:
        nxt = [items[i] * items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


_BLOCK = 512


def log_sum(values, bits: int | None = None) -> Interval:
    """Enclosure of sum(ln v) for positive integers, one MPFR log per block.

    Each block is multiplied exactly first, so rounding enters only once per
    block log and once per addition.
    """
    bits = bits or get_precision()
    down, up = _contexts(bits)
    values = np.asarray(values, dtype=np.int64)
    lo = hi = gmpy2.mpfr(0)
    for i in range(0, len(values), _BLOCK):
        block = product(values[i:i + _BLOCK])
        if block == 1:
            continue
        lo = down.add(lo, down.log(block))
        hi = up.add(hi, up.log(block))
    return Interval(lo, hi)


def theta(x: int, tolerance: float = 1e-20) -> Interval:
    """Chebyshev's theta(x) = sum of ln p over primes p <= x, certified."""
    if x < 2:
        raise InvalidArgument("theta needs x >= 2")
    ps = primes_up_to(int(x)).primes
    ps = ps[: np.searchsorted(ps, x, side="right")]
    # width grows with the number of blocks times ulp(theta)
    blocks = len(ps) // _BLOCK + 1
    bits = max(64, math.ceil(math.log2(blocks * 4 * (x + 1) / tolerance)) + 4)
    for _ in range(6):
        result = log_sum(ps, bits)
        if result.width <= tolerance:
            return result
        bits *= 2
    return result


def iter_theta(lo: int, hi: int, bits: int = 96) -> Iterator[tuple[int, Interval, Interval]]:
    """Yield ``(p, theta(p), ln p)`` for every prime ``lo < p <= hi``.

    theta up to ``lo`` comes from :func:`log_sum`; the walk then adds one
    directed-rounded log per prime.
    """
    table = primes_up_to(int(hi))
    ps = table.primes
    i0 = int(np.searchsorted(ps, lo, side="right"))
    i1 = int(np.searchsorted(ps, hi, side="right"))
    with working_precision(bits):
        start = log_sum(ps[:i0], bits)
    down, up = _contexts(bits)
    t_lo, t_hi = start.lo, start.hi
    for p in ps[i0:i1].tolist():
        l_lo, l_hi = down.log(p), up.log(p)
        t_lo = down.add(t_lo, l_lo)
        t_hi = up.add(t_hi, l_hi)
        yield p, Interval(t_lo, t_hi), Interval(l_lo, l_hi)
