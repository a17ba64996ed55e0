"""Canonical forms and the rearrangement inequalities behind them.

Moving every exponent onto the first m primes, largest exponent on the
smallest prime, can only lower e^gamma ln ln n - sigma(n)/n. The helpers here
check each ingredient of that reduction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import primes as _primes
from .errors import InvalidArgument
from .factor import Factorization, abundancy_factor
from .interval import Interval, Ordering, compare, exp, log, working_precision

# exact-rational path limits
RATIONAL_MAX_EXPONENT = 64
RATIONAL_MAX_PRIME = 10**6


@dataclass(frozen=True)
class CanonicalForm:
    """Nonincreasing exponents on p_1, ..., p_m."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(b) for b in self.exponents)
        if any(b < 1 for b in exps):
            raise InvalidArgument("canonical exponents must be >= 1")
        if any(x < y for x, y in zip(exps, exps[1:])):
            raise InvalidArgument("canonical exponents must be nonincreasing")
        object.__setattr__(self, "exponents", exps)

    @property
    def m(self) -> int:
        return len(self.exponents)

    def factorization(self) -> Factorization:
        return Factorization.from_exponents(self.exponents)

    @property
    def value(self) -> int:
        return self.factorization().value


def canonicalize(f: Factorization) -> CanonicalForm:
    if not f.entries:
        raise InvalidArgument("cannot canonicalize n = 1")
    return CanonicalForm(tuple(sorted(f.exponents, reverse=True)))


def _exact_rational(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    return None


def _one_minus_inv_power(base, expo) -> Interval | Fraction:
    """1 - base^-expo, exactly when both are rational with an integer exponent."""
    b, e = _exact_rational(base), _exact_rational(expo)
    if b is not None and e is not None and e.denominator == 1 \
            and e <= RATIONAL_MAX_EXPONENT:
        return 1 - b ** (-int(e))
    return 1 - exp(-Interval.exact(expo) * log(Interval.exact(base)))


def pair_inequality_holds(a, b, alpha, beta, *, bits: int = 128,
                          max_escalations: int = 4) -> bool:
    """Check (1 - a^-alpha)(1 - b^-beta) <= (1 - a^-beta)(1 - b^-alpha).

    Inputs are sorted so that a <= b and alpha <= beta first. Rational inputs
    with integer exponents are compared exactly; anything else in certified
    interval arithmetic.
    """
    if min(a, b, alpha, beta) < 1:
        raise InvalidArgument("all parameters must be >= 1")
    a, b = sorted((a, b))
    alpha, beta = sorted((alpha, beta))
    if a == b or alpha == beta:
        return True
    for _ in range(max_escalations + 1):
        with working_precision(bits):
            lhs = _mul(_one_minus_inv_power(a, alpha), _one_minus_inv_power(b, beta))
            rhs = _mul(_one_minus_inv_power(a, beta), _one_minus_inv_power(b, alpha))
        if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
            return lhs <= rhs
        order = compare(lhs, rhs)
        if order is not Ordering.INDETERMINATE:
            return order is not Ordering.GREATER
        bits *= 2
    raise ArithmeticError(f"could not separate sides for {(a, b, alpha, beta)}")


def _mul(x, y):
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x * y
    return Interval.exact(x) * Interval.exact(y)


def _check_lengths(primes: Sequence[int], exponents: Sequence[int]):
    if len(primes) != len(exponents):
        raise InvalidArgument(
            f"length mismatch: {len(primes)} primes, {len(exponents)} exponents")


def rearrangement_exact(primes: Sequence[int], exponents: Sequence[int]) -> Fraction:
    """prod (q_i - q_i^-alpha_i) as an exact rational."""
    _check_lengths(primes, exponents)
    out = Fraction(1)
    for q, a in zip(primes, exponents):
        out *= q - Fraction(1, q**a)
    return out


def rearrangement_product(primes: Sequence[int], exponents: Sequence[int],
                          tolerance: float = 1e-30) -> Interval:
    """Enclosure of prod (q_i - q_i^-alpha_i); primes must be ascending (repeats allowed)."""
    _check_lengths(primes, exponents)
    if any(x > y for x, y in zip(primes, primes[1:])):
        raise InvalidArgument("primes must be ascending")
    if all(a <= RATIONAL_MAX_EXPONENT for a in exponents) and \
            all(q <= RATIONAL_MAX_PRIME for q in primes):
        exact = rearrangement_exact(primes, exponents)
        with working_precision(128 + len(primes)):
            return Interval.exact(exact)
    with working_precision(160 + len(primes)):
        out = Interval.exact(1)
        for q, a in zip(primes, exponents):
            out = out * abundancy_factor(q, a) * (q - 1)
    return out


def power_product_compare(primes: Sequence[int], exponents: Sequence[int]) -> Ordering:
    """Order of prod q^alpha against prod q^beta with beta = alpha sorted descending.

    Exact integer comparison; GREATER or EQUAL for every valid input.
    """
    _check_lengths(primes, exponents)
    desc = sorted(exponents, reverse=True)
    lhs = _primes.product(q**a for q, a in zip(primes, exponents))
    rhs = _primes.product(q**b for q, b in zip(primes, desc))
    if lhs == rhs:
        return Ordering.EQUAL
    return Ordering.GREATER if lhs > rhs else Ordering.LESS


def descending_is_extremal(primes: Sequence[int], exponents: Sequence[int]) -> tuple[bool, bool]:
    """Exhaustive check over all orderings of ``exponents`` on ``primes``.

    Returns ``(maximizes_rearrangement, minimizes_power_product)`` for the
    descending assignment, in exact arithmetic.
    """
    _check_lengths(primes, exponents)

    def parts(exps):
        # prod (q - q^-a) = prod (q^(a+1) - 1) / prod q^a
        power = math.prod(q**a for q, a in zip(primes, exps))
        return math.prod(q ** (a + 1) - 1 for q, a in zip(primes, exps)), power

    best_num, best_pow = parts(sorted(exponents, reverse=True))
    max_ok = min_ok = True
    for perm in set(itertools.permutations(exponents)):
        num, power = parts(perm)
        if num * best_pow > best_num * power:
            max_ok = False
        if power < best_pow:
            min_ok = False
    return max_ok, min_ok


class GapPair(NamedTuple):
    l_original: Interval
    l_canonical: Interval
    ordering: Ordering  # GREATER / EQUAL when certified, INDETERMINATE otherwise


def theorem1_gap_pair(f: Factorization, tolerance: float = 1e-30,
                      escalations: int = 2) -> GapPair:
    """l(n') for ``f`` next to l(n) for its canonical form, with their certified order."""
    from .functional import little_l

    canon = canonicalize(f).factorization()
    if canon == f:
        l = little_l(f, tolerance)
        return GapPair(l, l, Ordering.EQUAL)
    for _ in range(escalations + 1):
        l_orig = little_l(f, tolerance)
        l_can = little_l(canon, tolerance)
        if l_orig.lo >= l_can.hi:
            return GapPair(l_orig, l_can,
                           Ordering.EQUAL if l_orig == l_can and l_orig.is_point
                           else Ordering.GREATER)
        if l_orig.hi < l_can.lo:
            return GapPair(l_orig, l_can, Ordering.LESS)
        tolerance *= 1e-10
    return GapPair(l_orig, l_can, Ordering.INDETERMINATE)
