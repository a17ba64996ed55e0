"""Independent oracles shared by the test modules.

Nothing here imports robinkit: the point is to cross-check it against
plain numpy, trial division and mpmath.
"""

import math

import mpmath
import numpy as np
import pytest

mpmath.mp.dps = 50
EULER_GAMMA = mpmath.euler
EXP_GAMMA = mpmath.exp(mpmath.euler)


def plain_sieve(limit):
    """Unsegmented boolean sieve, returns the primes <= limit."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.flatnonzero(flags)


def trial_factor(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            out.append((d, a))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def divisor_sigma_table(limit):
    """sigma(n) for n <= limit by adding every divisor d to its multiples."""
    sig = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        sig[d::d] += d
    return sig


def divisor_sigma(n):
    total = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            total += d + (n // d if d * d != n else 0)
    return total


def mp_little_l(n, sigma_n=None):
    sigma_n = divisor_sigma(n) if sigma_n is None else sigma_n
    return EXP_GAMMA * mpmath.log(mpmath.log(n)) - mpmath.mpf(sigma_n) / n


def mp_value(iv):
    return (mpmath.mpf(iv.lo) + mpmath.mpf(iv.hi)) / 2


def mp_encloses(iv, x, slack=0):
    """True when the mpmath value x lies inside iv (widened by slack)."""
    return mpmath.mpf(iv.lo) - slack <= x <= mpmath.mpf(iv.hi) + slack


@pytest.fixture(scope="session")
def sigma_oracle_1e5():
    return divisor_sigma_table(10**5)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
