"""Certified real arithmetic on top of MPFR directed rounding.

An :class:`Interval` is a pair of MPFR numbers ``[lo, hi]`` that is guaranteed
to contain the real value it stands for. Every operation rounds the lower end
toward -inf and the upper end toward +inf, so enclosures survive composition.

Working precision is ambient, in the style of :mod:`decimal` contexts::

    with working_precision(256):
        x = log(Interval.exact(10))
"""

from __future__ import annotations

import contextlib
import contextvars
import enum
import functools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import gmpy2
from gmpy2 import mpfr, mpz

DEFAULT_BITS = 128
DEFAULT_MAX_ESCALATIONS = 4

_MPFR = type(mpfr(0))
_precision = contextvars.ContextVar("robinkit_precision", default=DEFAULT_BITS)


class ToleranceNotMet(UserWarning):
    """Raised as a warning when escalation stops before the width target."""


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    INDETERMINATE = None


@functools.lru_cache(maxsize=64)
def _contexts(bits: int):
    down = gmpy2.context(precision=bits, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=bits, round=gmpy2.RoundUp)
    return down, up


def get_precision() -> int:
    return _precision.get()


@contextlib.contextmanager
def working_precision(bits: int):
    if bits < 16:
        raise ValueError("working precision must be at least 16 bits")
    token = _precision.set(int(bits))
    try:
        yield int(bits)
    finally:
        _precision.reset(token)


def _exact_int(n) -> mpfr:
    n = mpz(n)
    return mpfr(n, max(2, n.bit_length()))


def _dyadic(q: int, e: int) -> mpfr:
    # q * 2**e with no rounding
    with gmpy2.context(gmpy2.get_context(), precision=max(2, int(q).bit_length())):
        return gmpy2.mul_2exp(mpfr(q), e)


def _neg(x: mpfr) -> mpfr:
    # unary minus rounds to the ambient context; keep the operand's precision
    with gmpy2.context(gmpy2.get_context(), precision=max(2, x.precision)):
        return -x


def _as_mpfr(x) -> mpfr:
    if isinstance(x, _MPFR):
        return x
    if isinstance(x, (int, type(mpz(0)))):
        return _exact_int(x)
    if isinstance(x, float):
        return mpfr(x, 53)
    raise TypeError(f"interval endpoint must be mpfr, int or float, not {type(x).__name__}")


def _to_fraction(x: mpfr) -> Fraction:
    num, den = x.as_integer_ratio()
    return Fraction(int(num), int(den))


class Interval:
    """A closed interval ``[lo, hi]`` with MPFR endpoints."""

    __slots__ = ("lo", "hi", "degenerate")

    def __init__(self, lo, hi=None, *, degenerate: bool = False):
        lo = _as_mpfr(lo)
        hi = lo if hi is None else _as_mpfr(hi)
        if gmpy2.is_nan(lo) or gmpy2.is_nan(hi) or lo > hi:
            raise ValueError(f"invalid interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.degenerate = degenerate

    # --- construction -----------------------------------------------------

    @classmethod
    def exact(cls, value) -> "Interval":
        """Tightest enclosure of an int, Fraction, float or mpfr."""
        if isinstance(value, Interval):
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, type(mpz(0)))):
            x = _exact_int(value)
            return cls(x, x)
        if isinstance(value, float):
            x = mpfr(value, 53)
            return cls(x, x)
        if isinstance(value, Fraction):
            return cls.from_ratio(value.numerator, value.denominator)
        if isinstance(value, _MPFR):
            return cls(value, value)
        raise TypeError(f"cannot enclose {type(value).__name__}")

    @classmethod
    def from_ratio(cls, num, den) -> "Interval":
        """Enclose ``num / den`` for exact integers at the working precision."""
        num, den = mpz(num), mpz(den)
        if den == 0:
            raise ZeroDivisionError("ratio with zero denominator")
        if den < 0:
            num, den = -num, -den
        if num % den == 0:
            return cls.exact(num // den)
        a = abs(num)
        shift = int(get_precision() + 2 - (a.bit_length() - den.bit_length()))
        if shift >= 0:
            q, r = divmod(a << shift, den)
        else:
            q, r = divmod(a, den << -shift)
        lo = _dyadic(q, -shift)
        hi = lo if r == 0 else _dyadic(q + 1, -shift)
        if num < 0:
            lo, hi = _neg(hi), _neg(lo)
        return cls(lo, hi)

    @classmethod
    def hull(cls, items: Iterable["Interval"]) -> "Interval":
        items = list(items)
        return cls(min(i.lo for i in items), max(i.hi for i in items))

    # --- inspection -------------------------------------------------------

    @property
    def width(self) -> mpfr:
        _, up = _contexts(max(get_precision(), 53))
        return up.sub(self.hi, self.lo)

    @property
    def mid(self) -> mpfr:
        with gmpy2.context(gmpy2.get_context(), precision=max(self.lo.precision, self.hi.precision) + 1):
            return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def sign(self) -> int:
        """+1 / -1 when certified, 0 when the interval straddles or touches zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def contains(self, value) -> bool:
        if isinstance(value, Interval):
            return self.lo <= value.lo and value.hi <= self.hi
        if isinstance(value, float):
            value = Fraction(value)
        if isinstance(value, (int, Fraction)):
            return _to_fraction(self.lo) <= value <= _to_fraction(self.hi)
        return self.lo <= value <= self.hi

    __contains__ = contains

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"Interval({self.lo}, {self.hi})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "Interval":
        o = _coerce(other)
        down, up = _contexts(get_precision())
        return Interval(down.add(self.lo, o.lo), up.add(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        o = _coerce(other)
        down, up = _contexts(get_precision())
        return Interval(down.sub(self.lo, o.hi), up.sub(self.hi, o.lo))

    def __rsub__(self, other) -> "Interval":
        return _coerce(other) - self

    def __neg__(self) -> "Interval":
        return Interval(_neg(self.hi), _neg(self.lo))

    def __mul__(self, other) -> "Interval":
        o = _coerce(other)
        down, up = _contexts(get_precision())
        if self.lo >= 0 and o.lo >= 0:
            return Interval(down.mul(self.lo, o.lo), up.mul(self.hi, o.hi))
        pairs = [(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        return Interval(min(down.mul(a, b) for a, b in pairs),
                        max(up.mul(a, b) for a, b in pairs))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = _coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError(f"divisor {o!r} contains zero")
        down, up = _contexts(get_precision())
        if self.lo >= 0 and o.lo > 0:
            return Interval(down.div(self.lo, o.hi), up.div(self.hi, o.lo))
        pairs = [(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        return Interval(min(down.div(a, b) for a, b in pairs),
                        max(up.div(a, b) for a, b in pairs))

    def __rtruediv__(self, other) -> "Interval":
        return _coerce(other) / self


def _coerce(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.exact(x)


def log(x) -> Interval:
    """Natural log. Exact integers are rounded straight into MPFR per direction."""
    down, up = _contexts(get_precision())
    if isinstance(x, (int, type(mpz(0)))) and not isinstance(x, bool):
        if x <= 0:
            raise ValueError("log of non-positive integer")
        if x == 1:
            return Interval.exact(0)
        # conversion and log round the same way, so both ends stay outward
        n = mpz(x)
        return Interval(down.log(n), up.log(n))
    x = _coerce(x)
    if x.lo <= 0:
        raise ValueError(f"log of interval {x!r} reaching non-positive values")
    return Interval(down.log(x.lo), up.log(x.hi))


def exp(x) -> Interval:
    x = _coerce(x)
    down, up = _contexts(get_precision())
    return Interval(down.exp(x.lo), up.exp(x.hi))


def imin(items: Iterable[Interval]) -> Interval:
    """Enclosure of the minimum of the enclosed values."""
    items = list(items)
    return Interval(min(i.lo for i in items), min(i.hi for i in items))


def compare(a, b) -> Ordering:
    a, b = _coerce(a), _coerce(b)
    if a.hi < b.lo:
        return Ordering.LESS
    if a.lo > b.hi:
        return Ordering.GREATER
    if a.is_point and b.is_point and a.lo == b.lo:
        return Ordering.EQUAL
    return Ordering.INDETERMINATE


def bits_for_tolerance(tolerance, magnitude=1.0, guard: int = 16) -> int:
    """Starting precision for a result of size ``magnitude`` and width ``tolerance``."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    import math

    need = math.log2(max(abs(float(magnitude)), 1.0)) - math.log2(float(tolerance))
    return max(DEFAULT_BITS, int(need) + guard)


def certify(compute: Callable[[], Interval], tolerance, *, bits: int | None = None,
            max_escalations: int = DEFAULT_MAX_ESCALATIONS) -> Interval:
    """Evaluate ``compute`` until its width is at most ``tolerance``.

    Precision doubles on each retry. If the target is still missed after
    ``max_escalations`` doublings the last enclosure is returned with a
    :class:`ToleranceNotMet` warning; it is still a valid enclosure.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    bits = bits or max(get_precision(), DEFAULT_BITS)
    for attempt in range(max_escalations + 1):
        with working_precision(bits):
            result = compute()
        if result.width <= tolerance:
            return result
        if attempt < max_escalations:
            bits *= 2
    warnings.warn(f"width {float(result.width):.3g} above tolerance {tolerance} "
                  f"at {bits} bits", ToleranceNotMet, stacklevel=2)
    return result


def decide_sign(compute: Callable[[], Interval], *, bits: int = DEFAULT_BITS,
                max_escalations: int = DEFAULT_MAX_ESCALATIONS) -> tuple[int, Interval]:
    """Certified sign of ``compute()``, doubling precision while undecided."""
    for attempt in range(max_escalations + 1):
        with working_precision(bits):
            value = compute()
        if value.sign:
            break
        bits *= 2
    return value.sign, value


# Euler's constant to 60 decimals, checked against an independent 70-digit value;
# the enclosure is the literal +- 5e-56, so no result can be tighter than that
GAMMA_LITERAL = "0.577215664901532860606512090082402431042159335939923598805767"
GAMMA_HALF_WIDTH = Fraction(1, 2 * 10**55)


@dataclass(frozen=True)
class EulerGamma:
    gamma: Interval
    exp_gamma: Interval


@functools.lru_cache(maxsize=32)
def _euler_gamma(bits: int) -> EulerGamma:
    centre = Fraction(GAMMA_LITERAL)
    with working_precision(bits):
        lo = Interval.exact(centre - GAMMA_HALF_WIDTH).lo
        hi = Interval.exact(centre + GAMMA_HALF_WIDTH).hi
        g = Interval(lo, hi)
        return EulerGamma(g, exp(g))


def euler_gamma() -> EulerGamma:
    """Enclosures of gamma and e^gamma at the working precision."""
    return _euler_gamma(get_precision())


def exp_gamma() -> Interval:
    return euler_gamma().exp_gamma


def to_fraction(x) -> Fraction:
    return _to_fraction(x)


def decimal_bounds(x: Interval, digits: int = 20) -> tuple[str, str]:
    """Decimal strings ``(lo, hi)`` rounded outward so they still enclose ``x``."""
    return (_decimal(_to_fraction(x.lo), digits, floor=True),
            _decimal(_to_fraction(x.hi), digits, floor=False))


def _decimal(v: Fraction, digits: int, *, floor: bool) -> str:
    if v == 0:
        return "0"
    neg = v < 0
    a = -v if neg else v
    # exponent e with 10**e <= a < 10**(e+1)
    e = len(str(a.numerator)) - len(str(a.denominator))
    while Fraction(10) ** e > a:
        e -= 1
    while Fraction(10) ** (e + 1) <= a:
        e += 1
    scale = digits - 1 - e
    scaled = a * Fraction(10) ** scale
    down = (floor and not neg) or (not floor and neg)
    q = scaled.numerator // scaled.denominator
    if not down and q * scaled.denominator != scaled.numerator:
        q += 1
    s = str(q)
    if len(s) > digits:
        # carry rolled over a power of ten
        s, scale = s[:-1], scale - 1
    exp10 = len(s) - 1 - scale
    mant = s[0] + ("." + s[1:].rstrip("0") if s[1:].rstrip("0") else "")
    return f"{'-' if neg else ''}{mant}e{exp10:+d}"
