"""Finite-range checks of the prime asymptotics the Robin-gap arguments lean on.

Limits cannot be checked on a desk, so every claim here is turned into either
a certified bound over an explicit range or a trend on a finite grid.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import gmpy2
import numpy as np

from . import primes as _primes
from .errors import InvalidArgument
from .factor import Factorization
from .functional import epsilon_m, little_l
from .generators import primorial
from .interval import (Interval, bits_for_tolerance, certify, exp_gamma, imin, log,
                       working_precision)

THETA_THRESHOLD = 10544111
THETA_REL_LOWER = Fraction("0.998684")
THETA_REL_UPPER = Fraction("1.001102")
THETA_ADDITIVE = Fraction("0.0066788")
# constant of the published additive bound; the one above is what the proof quotes
THETA_ADDITIVE_PUBLISHED = Fraction("0.006788")
ROSSER_SCHOENFELD_FROM = 59


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking one inequality over a finite domain.

    ``margin`` encloses the smallest slack seen (positive means the claim
    holds there); it is None for an empty domain.
    """

    claim: str
    domain_lo: float
    domain_hi: float
    margin: Interval | None
    passed: bool
    points: int = 0
    worst_at: int | None = None
    vacuous: bool = False


class _Worst:
    def __init__(self):
        self.margin = None
        self.at = None
        self.points = 0

    def add(self, at, slack: Interval):
        self.points += 1
        if self.margin is None or slack.lo < self.margin.lo:
            self.at = at
        self.margin = slack if self.margin is None else imin((self.margin, slack))

    def report(self, claim, lo, hi) -> BoundReport:
        if self.margin is None:
            return BoundReport(claim, lo, hi, None, True, 0, None, vacuous=True)
        return BoundReport(claim, lo, hi, self.margin, self.margin.lo > 0,
                           self.points, self.at)


def _theta_range(lo: int, hi: int):
    if lo < THETA_THRESHOLD:
        raise InvalidArgument(
            f"theta bounds are only claimed for primes above {THETA_THRESHOLD}; got lo={lo}")
    if hi < lo:
        raise InvalidArgument("empty or reversed range")


def check_theta_relative(lo: int = THETA_THRESHOLD, hi: int = 12_000_000,
                         bits: int = 96) -> BoundReport:
    """0.998684 p < theta(p) < 1.001102 p for every prime lo < p <= hi."""
    _theta_range(lo, hi)
    worst = _Worst()
    with working_precision(bits):
        c_lo, c_hi = Interval.exact(THETA_REL_LOWER), Interval.exact(THETA_REL_UPPER)
        for p, th, _ in _primes.iter_theta(lo, hi, bits):
            slack = imin((th - c_lo * p, c_hi * p - th))
            worst.add(p, slack)
    return worst.report("theta_relative", lo, hi)


def check_theta_additive(lo: int = THETA_THRESHOLD, hi: int = 12_000_000,
                         bits: int = 96, constant=THETA_ADDITIVE) -> BoundReport:
    """|theta(p) - p| < c p / ln p for every prime lo < p <= hi.

    With the default c = 0.0066788 this fails just above the threshold
    (theta(10544113) - 10544113 is about -4402 against an allowance of about
    4355); c = 0.006788 holds on the whole desk range.
    """
    _theta_range(lo, hi)
    worst = _Worst()
    with working_precision(bits):
        c = Interval.exact(Fraction(constant))
        for p, th, lp in _primes.iter_theta(lo, hi, bits):
            allowance = c * p / lp
            slack = imin((th - (p - allowance), (p + allowance) - th))
            worst.add(p, slack)
    return worst.report("theta_additive", lo, hi)


def check_prime_count_bounds(lo: int = ROSSER_SCHOENFELD_FROM, hi: int = 10**7,
                             bits: int = 64) -> BoundReport:
    """x/ln x (1 + 1/(2 ln x)) < pi(x) < x/ln x (1 + 3/(2 ln x)) for integers lo <= x <= hi.

    Both bounds increase with x while pi(x) is a step function, so it is
    enough to test the lower bound just before each prime and the upper bound
    at each prime. Float screening picks the tight points; those are certified.
    """
    if lo < ROSSER_SCHOENFELD_FROM:
        raise InvalidArgument(f"the lower bound is only valid from x = {ROSSER_SCHOENFELD_FROM}")
    ps = _primes.primes_up_to(hi + 1).primes
    inner = ps[(ps > lo) & (ps <= hi)]
    # lower bound tested at x = p - 1 and at hi; upper at each prime and at lo
    xs_low = np.unique(np.concatenate(([lo, hi], inner - 1)))
    xs_up = np.unique(np.concatenate(([lo, hi], inner)))
    pi_low = np.searchsorted(ps, xs_low, side="right")
    pi_up = np.searchsorted(ps, xs_up, side="right")
    lx_low, lx_up = np.log(xs_low), np.log(xs_up)
    slack_low = pi_low - xs_low / lx_low * (1 + 1 / (2 * lx_low))
    slack_up = xs_up / lx_up * (1 + 3 / (2 * lx_up)) - pi_up
    worst = _Worst()
    with working_precision(bits):
        for xs, slacks, kind in ((xs_low, slack_low, "low"), (xs_up, slack_up, "up")):
            # certify every point within an absolute 1.0 of the float minimum
            tight = np.flatnonzero(slacks <= slacks.min() + 1.0)
            for i in tight.tolist():
                x = int(xs[i])
                lx = log(x)
                pi = _primes.prime_count(x)
                if kind == "low":
                    s = pi - Interval.exact(x) / lx * (1 + 1 / (2 * lx))
                else:
                    s = Interval.exact(x) / lx * (1 + 3 / (2 * lx)) - pi
                worst.add(x, s)
    report = worst.report("prime_count_rosser_schoenfeld", lo, hi)
    return BoundReport(report.claim, lo, hi, report.margin, report.passed,
                       len(xs_low) + len(xs_up), report.worst_at)


# --- nth prime --------------------------------------------------------------

def dusart_margin(k: int) -> Interval:
    """p_k - k (ln k + ln ln k - 1); positive for every k >= 2."""
    if k < 2:
        raise InvalidArgument("k must be >= 2")
    lk = log(k)
    return _primes.nth_prime(k) - k * (lk + log(lk) - 1)


def nth_prime_asymptotic_error(k: int, bits: int = 128) -> Interval:
    """(p_k/k - (ln k + ln ln k - 1)) * ln k / ln ln k, which should stay bounded."""
    if k < 2:
        raise InvalidArgument("k must be >= 2")
    with working_precision(bits):
        lk = log(k)
        llk = log(lk)
        return (Interval.from_ratio(_primes.nth_prime(k), k) - (lk + llk - 1)) * lk / llk


def check_dusart(k_lo: int = 2, k_hi: int = 100_000, bits: int = 64) -> BoundReport:
    """p_k > k (ln k + ln ln k - 1) for every k_lo <= k <= k_hi."""
    if k_lo < 2:
        raise InvalidArgument("k must be >= 2")
    _primes.nth_prime(k_hi)
    worst = _Worst()
    with working_precision(bits):
        for k in range(k_lo, k_hi + 1):
            worst.add(k, dusart_margin(k))
    return worst.report("dusart_nth_prime_lower", k_lo, k_hi)


# --- Mertens product -------------------------------------------------------

@functools.lru_cache(maxsize=4)
def _mertens_ratio(x: int):
    # prod (p - 1) and prod p over p <= x, exactly
    table = _primes.primes_up_to(x)
    ps = table.primes[: table.count(x)]
    return _primes.product(ps - 1), _primes.product(ps)


def mertens_product(x: int, tolerance: float = 1e-20) -> Interval:
    """e^gamma ln x prod_{p <= x} (1 - 1/p), which tends to 1."""
    if x < 2:
        raise InvalidArgument("x must be >= 2")
    num, den = _mertens_ratio(int(x))

    def compute():
        return exp_gamma() * log(int(x)) * Interval.from_ratio(num, den)

    return certify(compute, tolerance, bits=bits_for_tolerance(tolerance, 4))


def check_mertens(x: int = 10**7, envelope: float = 5e-3) -> BoundReport:
    value = mertens_product(x)
    slack = Interval.exact(Fraction(envelope)) - _abs(value - 1)
    return BoundReport("mertens_product", x, x, slack, slack.lo > 0, 1, x)


def _abs(v: Interval) -> Interval:
    if v.lo >= 0:
        return v
    if v.hi <= 0:
        return -v
    return Interval(0, max(-v.lo, v.hi))


# --- decay of the Mertens error term ---------------------------------------

@dataclass(frozen=True)
class DecayProbe:
    """Samples of ln x * exp(-c (ln x)^(3/5 - eps)), kept in log form."""

    log_x: tuple
    log_value: tuple
    onset: int | None  # first index from which the samples strictly decrease
    decayed: bool  # last sample below the first

    @property
    def values(self) -> list:
        return [gmpy2.exp(v) for v in self.log_value]


def decay_limit_probe(c: float, epsilon: float, grid: Sequence[float] | None = None, *,
                      log_grid: Sequence[float] | None = None, bits: int = 64) -> DecayProbe:
    """Evaluate the decaying factor on a grid of x (or of ln x via ``log_grid``)."""
    if c <= 0:
        raise InvalidArgument("c must be positive")
    if not 0 < epsilon < 0.2:
        raise InvalidArgument("epsilon must lie in the open interval (0, 1/5)")
    if (grid is None) == (log_grid is None):
        raise InvalidArgument("pass exactly one of grid or log_grid")
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        if log_grid is None:
            mus = [gmpy2.log(gmpy2.mpfr(x)) for x in grid]
        else:
            mus = [gmpy2.mpfr(m) for m in log_grid]
        power = gmpy2.mpfr(3) / 5 - gmpy2.mpfr(epsilon)
        logs = [gmpy2.log(mu) - c * mu**power for mu in mus]
    onset = None
    for i in range(len(logs) - 1, -1, -1):
        if i == len(logs) - 1 or logs[i] > logs[i + 1]:
            onset = i
        else:
            break
    return DecayProbe(tuple(mus), tuple(logs), onset if len(logs) > 1 else None,
                      len(logs) > 1 and logs[-1] < logs[0])


# --- gap along the primorials ---------------------------------------------

def lemma24_gap(m: int, exponents: Sequence | None = None,
                tolerance: float = 1e-20) -> Interval:
    """e^gamma ln ln(p_1 ... p_m) - prod (p_k - p_k^-alpha_k)/(p_k - 1).

    ``exponents`` defaults to all ones; ``math.inf`` entries drop the
    p^-alpha term, giving prod p/(p - 1), the lower envelope.
    """
    if m < 1:
        raise InvalidArgument("m must be >= 1")
    exps = [1] * m if exponents is None else list(exponents)
    if len(exps) != m or any(a < 1 for a in exps):
        raise InvalidArgument("need m exponents, each >= 1")
    ps = _primes.first_primes(m).tolist()
    num = _primes.product(p if a == math.inf else p ** (a + 1) - 1 for p, a in zip(ps, exps))
    den = _primes.product(p - 1 if a == math.inf else p**a * (p - 1)
                          for p, a in zip(ps, exps))

    def compute():
        theta = _primes.log_sum(ps)
        return exp_gamma() * log(theta) - Interval.from_ratio(num, den)

    return certify(compute, tolerance, bits=bits_for_tolerance(tolerance, 64) + 24)


@dataclass(frozen=True)
class Trend:
    points: tuple[tuple[int, Interval], ...]
    onset: int | None  # least grid m from which the values certifiably increase


def lemma24_trend(grid: Sequence[int] = (10, 100, 1000, 10_000, 100_000)) -> Trend:
    pts = tuple((m, lemma24_gap(m)) for m in grid)
    onset = None
    for i in range(len(pts) - 1, -1, -1):
        if i == len(pts) - 1 or pts[i][1].hi < pts[i + 1][1].lo:
            onset = pts[i][0]
        else:
            break
    return Trend(pts, onset)


# --- K_0 / m ratio ---------------------------------------------------------

SCHEDULES: dict[str, Callable[[int], list[int]]] = {
    "ones": lambda m: [1] * m,
    "ceil_m_over_i": lambda m: [-(-m // i) for i in range(1, m + 1)],
    "constant_m": lambda m: [m] * m,
}


@dataclass(frozen=True)
class K0Row:
    m: int
    index: int | None  # least i (1-based) with alpha_i <= i
    ratio: float | None
    epsilon: Interval | None


def k0_ratio_experiment(schedule, m_grid: Sequence[int],
                        with_epsilon: bool = True) -> list[K0Row]:
    """For each m, the least i with alpha_i <= i and its ratio to m."""
    fn = SCHEDULES[schedule] if isinstance(schedule, str) else schedule
    rows = []
    for m in m_grid:
        exps = [int(a) for a in fn(m)]
        if len(exps) != m or any(x < y for x, y in zip(exps, exps[1:])) or min(exps) < 1:
            raise InvalidArgument(f"schedule must give m nonincreasing exponents >= 1 (m={m})")
        index = next((i for i, a in enumerate(exps, 1) if a <= i), None)
        eps = epsilon_m(Factorization.from_exponents(exps), 1e-12) if with_epsilon else None
        rows.append(K0Row(m, index, None if index is None else index / m, eps))
    return rows


# --- R(1) against R(2) -----------------------------------------------------

@dataclass(frozen=True)
class RRow:
    m: int
    r1: Interval
    r2: Interval
    difference: Interval  # R(1) - R(2)

    @property
    def certified(self) -> bool:
        return self.difference.sign != 0


@dataclass(frozen=True)
class RExperiment:
    rows: tuple[RRow, ...]
    least_m: int | None  # least tested m with R(1) > R(2) certified


def r_scaling_experiment(m_grid: Sequence[int] = (100, 1000, 10_000),
                         tolerance: float = 1e-20) -> RExperiment:
    """R(1) - R(2) for n = p_1 ... p_m (all exponents 1) at each m of the grid."""
    rows = []
    for m in m_grid:
        f = primorial(m)
        r1 = little_l(f, tolerance)
        r2 = little_l(Factorization(tuple((q, 2) for q in f.primes)), tolerance)
        rows.append(RRow(m, r1, r2, r1 - r2))
    least = next((r.m for r in rows if r.difference.sign > 0), None)
    return RExperiment(tuple(rows), least)


def r_flip_point(m_max: int = 200) -> int | None:
    """Least m <= m_max from which R(1) > R(2) certifies for every larger m tested."""
    flip = None
    for m in range(1, m_max + 1):
        diff = r_scaling_experiment((m,)).rows[0].difference
        if diff.sign > 0:
            flip = m if flip is None else flip
        else:
            flip = None
    return flip
