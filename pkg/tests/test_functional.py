import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robinkit.errors import DomainError, InvalidArgument
from robinkit.factor import Factorization, factorize
from robinkit.functional import (d_sign, epsilon_m, epsilon_shift, epsilon_trace,
                                 f_prime_monotonicity, little_l, robin_report, robin_scaled,
                                 wojtowicz_k)
from robinkit.generators import factorial_tower, primorial
from robinkit.interval import Ordering, exp_gamma, working_precision
from robinkit.primes import first_primes, is_prime

from conftest import EXP_GAMMA, divisor_sigma, mp_encloses, mp_little_l

F5040 = factorize(5040)
F5041 = Factorization(((71, 2),))
F360 = Factorization(((2, 3), (3, 2), (5, 1)))
TINY = mpmath.mpf(10) ** -40


def mp_epsilon(exps):
    ps = first_primes(len(exps)).tolist()
    with mpmath.workdps(50):
        num = mpmath.fsum(a * mpmath.log(p) for p, a in zip(ps, exps))
        return num / mpmath.fsum(mpmath.log(p) for p in ps) - 1


@st.composite
def descending_exponents(draw, max_m=50, max_exp=20):
    xs = draw(st.lists(st.integers(1, max_exp), min_size=1, max_size=max_m))
    return sorted(xs, reverse=True)


# --- l(n), D(n), k(n) ------------------------------------------------------

def test_little_l_examples():
    v = little_l(F5040)
    assert v.hi < 0 and v.width <= 1e-30
    assert mp_encloses(v, mp_little_l(5040, 19344), TINY)
    assert abs(float(v) + 0.0212180) < 1e-6
    # e^gamma * 5040 * ln ln 5040, the other half of D(5040)
    assert abs(float(EXP_GAMMA * 5040 * mpmath.log(mpmath.log(5040))) - 19237.06) < 0.01
    w = little_l(F5041)
    assert w.lo > 0 and mp_encloses(w, mp_little_l(5041, 5113), TINY)
    three = little_l(Factorization(((3, 1),)))
    assert three.hi < 0
    assert abs(math.log(math.log(3)) - 0.0940) < 1e-4


def test_little_l_domain():
    with pytest.raises(DomainError):
        little_l(Factorization())
    with pytest.raises(DomainError):
        d_sign(Factorization())
    # n = 2 is accepted: ln ln 2 < 0 is still defined
    assert d_sign(Factorization(((2, 1),))) == -1


@given(st.integers(3, 10**6))
@settings(max_examples=200)
def test_little_l_encloses_mpmath_oracle(n):
    assert mp_encloses(little_l(factorize(n)), mp_little_l(n), TINY)


def test_d_sign_examples():
    assert d_sign(F5040) == -1
    assert d_sign(F5041) == 1
    p10 = primorial(10)
    assert p10.value == 6469693230 and d_sign(p10) == 1


def test_d_sign_reports_indeterminate_instead_of_guessing():
    # at 16 bits without escalation, l(5040) ~ -0.021 cannot be resolved
    assert d_sign(F5040, bits=16, max_escalations=0) in (0, -1)
    assert d_sign(F5040, bits=16, max_escalations=4) == -1


def test_wojtowicz_k():
    k = wojtowicz_k(F5040)
    assert k.lo > 1 and abs(float(k) - 1.005559) < 1e-6
    assert wojtowicz_k(F5041).hi < 1
    with pytest.raises(DomainError):
        wojtowicz_k(Factorization(((2, 1),)))


def test_k_duality_and_sign_consistency_on_random_n():
    rng = random.Random(5)
    for n in [rng.randint(3, 10**9) for _ in range(1000)]:
        f = factorize(n)
        l = little_l(f)
        s = d_sign(f)
        assert s == l.sign
        one_minus_k = 1 - wojtowicz_k(f)
        if l.sign and one_minus_k.sign:
            assert one_minus_k.sign == l.sign


def test_robin_report_fields():
    r = robin_report(F5040)
    assert r.d_sign == -1
    assert r.little_l.contains(r.little_l.mid)
    with working_precision(r.precision_bits):
        recomputed = exp_gamma() * r.loglog_n - r.sigma_over_n
    assert recomputed.lo <= r.little_l.hi and r.little_l.lo <= recomputed.hi
    assert r.sigma_over_n.contains(Fraction(19344, 5040))
    assert r.epsilon_m is not None
    assert robin_report(F5041).epsilon_m is None


# --- epsilon ---------------------------------------------------------------

def test_epsilon_examples():
    assert epsilon_m(primorial(12)).is_point and float(epsilon_m(primorial(12))) == 0
    v = epsilon_m(F360)
    assert mp_encloses(v, mp_epsilon([3, 2, 1]), TINY)
    assert abs(float(v) - 0.730598) < 1e-6
    c = epsilon_m(Factorization.from_exponents([4] * 9))
    assert c.is_point and float(c) == 3


def test_epsilon_requires_canonical_support():
    with pytest.raises(DomainError):
        epsilon_m(Factorization(((3, 1), (5, 1))))
    with pytest.raises(DomainError):
        epsilon_m(Factorization(((2, 1), (5, 1))))


def test_epsilon_trace_factorial_tower():
    trace = epsilon_trace(Factorization.from_exponents([6, 2, 1]))
    expect = [mp_epsilon([6]), mp_epsilon([6, 2]), mp_epsilon([6, 2, 1])]
    assert float(trace[0]) == 5
    for v, e in zip(trace.values, expect):
        assert mp_encloses(v, e, TINY) and v.width <= 1e-10
    assert abs(float(trace[1]) - 2.547411) < 1e-6
    assert abs(float(trace[2]) - 1.341983) < 1e-6
    assert trace[0].lo > trace[1].hi > trace[1].lo > trace[2].hi
    assert trace.is_nonincreasing() and trace.is_nonnegative()


def test_epsilon_trace_primorial_and_constant():
    assert all(float(v) == 0 for v in epsilon_trace(primorial(20)).values)
    assert all(float(v) == 4 for v in epsilon_trace(Factorization.from_exponents([5] * 7)).values)


def test_epsilon_trace_monotone_on_random_descending_vectors():
    rng = random.Random(99)
    for _ in range(1000):
        m = rng.randint(1, 50)
        exps = sorted((rng.randint(1, 20) for _ in range(m)), reverse=True)
        trace = epsilon_trace(Factorization.from_exponents(exps), 1e-20)
        assert trace.is_nonincreasing() and trace.is_nonnegative()


def test_epsilon_shift_examples():
    assert float(epsilon_shift(primorial(8), 1)) == 1
    v = epsilon_shift(F360, 2)
    assert mp_encloses(v, mp_epsilon([3, 2, 1]) + 2, TINY)
    assert abs(float(v) - 2.730598) < 1e-6
    with pytest.raises(InvalidArgument):
        epsilon_shift(F360, 0)


@given(descending_exponents(max_m=30), st.integers(1, 5))
@settings(max_examples=100)
def test_epsilon_shift_identity(exps, t):
    f = Factorization.from_exponents(exps)
    base, shifted = epsilon_m(f), epsilon_shift(f, t)
    with working_precision(256):
        moved = base + t
        gap = abs(shifted.mid - moved.mid)
        assert gap <= shifted.width + moved.width
    assert shifted.lo <= moved.hi and moved.lo <= shifted.hi


# --- R(x) ------------------------------------------------------------------

def test_robin_scaled_at_endpoints():
    f = Factorization.from_exponents([3, 2, 1, 1])
    assert robin_scaled(f, 1) == little_l(f)
    p = primorial(6)
    squared = Factorization(tuple((q, 2) for q in p.primes))
    assert robin_scaled(p, 2) == little_l(squared)


def test_robin_scaled_fractional_x_matches_mpmath():
    f = Factorization.from_exponents([2, 1, 1])
    x = Fraction(3, 2)
    with mpmath.workdps(50):
        xs = mpmath.mpf(3) / 2
        ps, al = [2, 3, 5], [2, 1, 1]
        lead = EXP_GAMMA * mpmath.log(xs * mpmath.fsum(a * mpmath.log(p) for p, a in zip(ps, al)))
        prod = mpmath.fprod((p - mpmath.mpf(p) ** (-a * xs)) / (p - 1) for p, a in zip(ps, al))
        assert mp_encloses(robin_scaled(f, x), lead - prod, TINY)
    assert mp_encloses(robin_scaled(f, 1.5), lead - prod, TINY)


def test_robin_scaled_domain():
    f = primorial(3)
    with pytest.raises(InvalidArgument):
        robin_scaled(f, Fraction(5, 2))
    with pytest.raises(DomainError):
        robin_scaled(Factorization(((3, 1),)), 1)


def test_r1_above_r2_for_large_primorial():
    f = primorial(10_000)
    assert (robin_scaled(f, 1) - robin_scaled(f, 2)).lo > 0


# --- monotonicity in one prime ---------------------------------------------

def test_f_prime_monotonicity_examples():
    assert f_prime_monotonicity((2, 3), (1, 1), 1, 5) is Ordering.GREATER
    assert f_prime_monotonicity((2, 3), (1, 1), 1, 3) is Ordering.EQUAL
    assert f_prime_monotonicity((2, 3, 5), (2, 1, 1), 2, 7) is Ordering.GREATER
    with pytest.raises(InvalidArgument):
        f_prime_monotonicity((2, 3, 5), (1, 1, 1), 0, 7)


def test_f_prime_monotonicity_random_upward_replacements():
    rng = random.Random(11)
    pool = first_primes(60).tolist()
    for _ in range(1000):
        m = rng.randint(1, 6)
        qs = sorted(rng.sample(pool[:40], m))
        exps = [rng.randint(1, 6) for _ in qs]
        k = rng.randrange(m)
        upper = qs[k + 1] if k + 1 < m else pool[-1] + 1
        options = [q for q in pool if qs[k] < q < upper]
        if not options:
            continue
        assert f_prime_monotonicity(qs, exps, k, rng.choice(options)) is Ordering.GREATER
