"""Robin-gap functionals: l(n), sign of D(n), k(n), the exponent excess epsilon and R(x).

``l(n) = e^gamma ln ln n - sigma(n)/n`` is evaluated from the factorization
alone, so n itself is never needed. Every result is an :class:`Interval`;
signs are only reported once the enclosure excludes zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InvalidArgument
from .factor import (Factorization, _log_n_at_precision, _sigma_over_n_at_precision,
                     log_n, sigma_over_n)
from .interval import (DEFAULT_BITS, DEFAULT_MAX_ESCALATIONS, Interval, Ordering,
                       bits_for_tolerance, certify, compare, decide_sign, exp, exp_gamma,
                       log, working_precision)

DEFAULT_TOLERANCE = 1e-30


def _check_domain(f: Factorization):
    # ln ln 2 < 0 is still defined; only n = 1 has no ln ln n
    if not f.entries:
        raise DomainError("ln ln n is undefined for n = 1")


def _l_at_precision(f: Factorization) -> Interval:
    return exp_gamma() * log(_log_n_at_precision(f)) - _sigma_over_n_at_precision(f)


def _bits(f: Factorization, tolerance) -> int:
    return bits_for_tolerance(tolerance, 16) + f.m.bit_length()


def little_l(f: Factorization, tolerance: float = DEFAULT_TOLERANCE) -> Interval:
    """Enclosure of l(n) = D(n)/n = e^gamma ln ln n - sigma(n)/n."""
    _check_domain(f)
    return certify(lambda: _l_at_precision(f), tolerance, bits=_bits(f, tolerance))


def d_sign(f: Factorization, *, bits: int = DEFAULT_BITS,
           max_escalations: int = DEFAULT_MAX_ESCALATIONS) -> int:
    """Certified sign of D(n) = e^gamma n ln ln n - sigma(n).

    0 means the enclosure still straddles zero after ``max_escalations``
    precision doublings; it never claims D(n) = 0.
    """
    _check_domain(f)
    sign, _ = decide_sign(lambda: _l_at_precision(f), bits=bits,
                          max_escalations=max_escalations)
    return sign


def wojtowicz_k(f: Factorization, tolerance: float = DEFAULT_TOLERANCE) -> Interval:
    """k(n) = sigma(n) / (e^gamma n ln ln n) for n > 2; below 1 exactly when D(n) > 0."""
    _check_domain(f)
    if f.entries == ((2, 1),):
        raise DomainError("k(n) needs ln ln n > 0, i.e. n >= 3")

    def compute():
        return _sigma_over_n_at_precision(f) / (exp_gamma() * log(_log_n_at_precision(f)))

    return certify(compute, tolerance, bits=_bits(f, tolerance))


@dataclass(frozen=True)
class RobinReport:
    factorization: Factorization
    log_n: Interval
    loglog_n: Interval
    sigma_over_n: Interval
    little_l: Interval
    d_sign: int
    epsilon_m: Interval | None = None
    precision_bits: int = DEFAULT_BITS


def robin_report(f: Factorization, tolerance: float = DEFAULT_TOLERANCE,
                 max_escalations: int = DEFAULT_MAX_ESCALATIONS) -> RobinReport:
    _check_domain(f)
    bits = _bits(f, tolerance)
    for _ in range(max_escalations + 1):
        with working_precision(bits):
            ln = _log_n_at_precision(f)
            lnln = log(ln)
            ratio = _sigma_over_n_at_precision(f)
            l = exp_gamma() * lnln - ratio
        if l.sign and l.width <= tolerance:
            break
        bits *= 2
    eps = epsilon_m(f, tolerance) if f.has_canonical_support else None
    return RobinReport(f, ln, lnln, ratio, l, l.sign, eps, bits)


# --- exponent excess -------------------------------------------------------

@dataclass(frozen=True)
class EpsilonTrace:
    """epsilon_1, ..., epsilon_m for the prefixes prod_{k<=s} p_k^alpha_k."""

    values: tuple[Interval, ...]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def is_nonincreasing(self) -> bool:
        """No step is certified to increase."""
        return all(not (b.lo > a.hi) for a, b in zip(self.values, self.values[1:]))

    def is_nonnegative(self) -> bool:
        return all(v.hi >= 0 for v in self.values)


def _require_canonical_support(f: Factorization):
    if not f.entries or not f.has_canonical_support:
        raise DomainError("epsilon requires canonical support p_1, ..., p_m")


def _trace_at_precision(exponents: Sequence[int], primes: Sequence[int],
                        last_only: bool = False) -> list[Interval]:
    out = []
    num = Interval.exact(0)
    den = Interval.exact(0)
    first = exponents[0]
    constant = True
    for s, (q, a) in enumerate(zip(primes, exponents)):
        lq = log(q)
        num = num + lq * (a - 1)
        den = den + lq
        constant = constant and a == first
        if last_only and s < len(primes) - 1:
            continue
        # constant prefixes (primorials included) are exact
        out.append(Interval.exact(first - 1) if constant else num / den)
    return out


def _trace(f: Factorization, tolerance: float, last_only: bool) -> list[Interval]:
    _require_canonical_support(f)
    bits = bits_for_tolerance(tolerance, max(f.exponents)) + f.m.bit_length()
    for _ in range(DEFAULT_MAX_ESCALATIONS + 1):
        with working_precision(bits):
            values = _trace_at_precision(f.exponents, f.primes, last_only)
        if max(v.width for v in values) <= tolerance:
            break
        bits *= 2
    return values


def epsilon_m(f: Factorization, tolerance: float = DEFAULT_TOLERANCE) -> Interval:
    """(sum alpha_k ln p_k)/(sum ln p_k) - 1 for n supported on p_1..p_m."""
    return _trace(f, tolerance, last_only=True)[0]


def epsilon_trace(f: Factorization, tolerance: float = DEFAULT_TOLERANCE) -> EpsilonTrace:
    return EpsilonTrace(tuple(_trace(f, tolerance, last_only=False)))


def shift_exponents(f: Factorization, t: int) -> Factorization:
    return Factorization(tuple((q, a + t) for q, a in f.entries), f.log_only)


def epsilon_shift(f: Factorization, t: int, tolerance: float = DEFAULT_TOLERANCE) -> Interval:
    """epsilon_m of n with every exponent raised by t; should equal epsilon_m(n) + t."""
    if not isinstance(t, int) or t < 1:
        raise InvalidArgument("shift t must be a positive integer")
    return epsilon_m(shift_exponents(f, t), tolerance)


# --- R(x) ------------------------------------------------------------------

def _as_exact(x) -> Fraction:
    if isinstance(x, (int, Fraction, float)):
        return Fraction(x)
    raise InvalidArgument(f"x must be an int, Fraction or float, got {type(x).__name__}")


def robin_scaled(f: Factorization, x, tolerance: float = DEFAULT_TOLERANCE) -> Interval:
    """R(x) = e^gamma ln ln prod p_k^(alpha_k x) - prod (p_k - p_k^(-alpha_k x))/(p_k - 1).

    Defined for x in [1, 2] on canonical support. When every alpha_k x is an
    integer this is l(n) of the scaled factorization.
    """
    _require_canonical_support(f)
    xq = _as_exact(x)
    if not 1 <= xq <= 2:
        raise InvalidArgument(f"x must lie in [1, 2], got {x}")
    if all((a * xq).denominator == 1 for a in f.exponents):
        scaled = Factorization(tuple((q, int(a * xq)) for q, a in f.entries), f.log_only)
        return little_l(scaled, tolerance)

    def compute():
        xi = Interval.exact(xq)
        lead = exp_gamma() * log(xi * _log_n_at_precision(f))
        prod = Interval.exact(1)
        for q, a in f.entries:
            tail = exp(-(xi * a) * log(q))
            prod = prod * ((q - tail) / (q - 1))
        return lead - prod

    return certify(compute, tolerance, bits=_bits(f, tolerance))


# --- monotonicity in a single prime ---------------------------------------

def _lemma_f(primes, exponents) -> Interval:
    f = Factorization(tuple(zip(primes, exponents)))
    return _l_at_precision(f)


def f_prime_monotonicity(primes: Sequence[int], exponents: Sequence[int], k: int,
                         replacement: int, *, bits: int = DEFAULT_BITS,
                         max_escalations: int = DEFAULT_MAX_ESCALATIONS) -> Ordering:
    """Order of f(..., q', ...) against f(..., q_k, ...), ``k`` zero-based.

    f is l(n) written as a function of the primes with exponents fixed. Raising
    any single prime should always give GREATER.
    """
    primes = [int(q) for q in primes]
    if len(primes) != len(exponents):
        raise InvalidArgument("length mismatch")
    if not 0 <= k < len(primes):
        raise InvalidArgument(f"index {k} out of range")
    new = list(primes)
    new[k] = int(replacement)
    if any(x >= y for x, y in zip(new, new[1:])):
        raise InvalidArgument("replacement breaks the strict ascending order")
    if replacement == primes[k]:
        return Ordering.EQUAL
    for _ in range(max_escalations + 1):
        with working_precision(bits):
            order = compare(_lemma_f(new, exponents), _lemma_f(primes, exponents))
        if order is not Ordering.INDETERMINATE:
            return order
        bits *= 2
    return Ordering.INDETERMINATE
