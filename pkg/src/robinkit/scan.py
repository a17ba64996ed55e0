"""Range scans for Robin violators, sigma(n) > e^gamma n ln ln n."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument
from .factor import factorize, sigma_sieve
from .functional import d_sign
from .interval import DEFAULT_BITS, DEFAULT_MAX_ESCALATIONS, exp_gamma

BLOCK = 1 << 16
# float l(n) is good to ~1e-15 here; anything this close to zero is re-done with intervals
SCREEN_MARGIN = 1e-9


@dataclass(frozen=True)
class ScanResult:
    lo: int
    hi: int
    violators: tuple[int, ...]
    indeterminate: tuple[int, ...] = ()
    records: tuple[int, ...] = ()  # new highs of sigma(n)/n within [lo, hi]
    elapsed: float = 0.0
    fallbacks: int = 0  # candidates settled in interval arithmetic
    stats: dict = field(default_factory=dict)


def _screen(sig: np.ndarray, start: int, stop: int, e_gamma: float) -> np.ndarray:
    n = np.arange(start, stop, dtype=np.float64)
    l = e_gamma * np.log(np.log(n)) - sig[start:stop] / n
    return np.flatnonzero(l < SCREEN_MARGIN) + start


def _records(sig: np.ndarray, lo: int, hi: int) -> list[int]:
    n = np.arange(lo, hi + 1)
    ratio = sig[lo:hi + 1] / n
    prior = np.concatenate(([0.0], np.maximum.accumulate(ratio)[:-1]))
    out, best_s, best_n = [], 0, 1
    for c in (np.flatnonzero(ratio >= prior * (1 - 1e-9)) + lo).tolist():
        s = int(sig[c])
        if s * best_n > best_s * c:
            out.append(c)
            best_s, best_n = s, c
    return out


def scan(lo: int, hi: int, threads: int = 1, *, block: int = BLOCK,
         bits: int = DEFAULT_BITS, max_escalations: int = DEFAULT_MAX_ESCALATIONS,
         sigma_table: np.ndarray | None = None) -> ScanResult:
    """Every n in [lo, hi] with D(n) < 0, certified.

    sigma comes from the linear sieve; a float pass keeps only n whose l(n)
    is negative or within 1e-9 of zero, and those are decided from their
    factorization with escalating interval precision. Blocks are processed in
    order, so the result does not depend on ``threads``.
    """
    if not 3 <= lo <= hi:
        raise InvalidArgument(f"need 3 <= lo <= hi, got lo={lo}, hi={hi}")
    if threads < 1 or block < 1:
        raise InvalidArgument("threads and block must be positive")
    t0 = time.perf_counter()
    sig = sigma_sieve(hi) if sigma_table is None else sigma_table
    if len(sig) <= hi:
        raise InvalidArgument("sigma table does not reach hi")
    e_gamma = float(exp_gamma().mid)
    starts = range(lo, hi + 1, block)
    jobs = [(s, min(s + block, hi + 1)) for s in starts]
    if threads == 1:
        parts = [_screen(sig, a, b, e_gamma) for a, b in jobs]
    else:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda ab: _screen(sig, ab[0], ab[1], e_gamma), jobs))
    candidates = np.concatenate(parts).tolist() if parts else []
    violators, unsure = [], []
    for n in candidates:
        s = d_sign(factorize(n), bits=bits, max_escalations=max_escalations)
        if s < 0:
            violators.append(n)
        elif s == 0:
            unsure.append(n)
    records = _records(sig, lo, hi)
    elapsed = time.perf_counter() - t0
    return ScanResult(lo, hi, tuple(violators), tuple(unsure), tuple(records), elapsed,
                      len(candidates), {"blocks": len(jobs), "threads": threads})
