import json
import math
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np
import pytest

from robinkit.asymptotics import (THETA_ADDITIVE_PUBLISHED, THETA_THRESHOLD, SCHEDULES,
                                  check_dusart, check_mertens, check_prime_count_bounds,
                                  check_theta_additive, check_theta_relative,
                                  decay_limit_probe, dusart_margin, k0_ratio_experiment,
                                  lemma24_gap, lemma24_trend, mertens_product,
                                  nth_prime_asymptotic_error, r_flip_point,
                                  r_scaling_experiment)
from robinkit.errors import InvalidArgument
from robinkit.interval import to_fraction

from conftest import EXP_GAMMA, mp_encloses, plain_sieve

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "regression.json").read_text())


# --- theta -----------------------------------------------------------------

def test_theta_threshold_precondition():
    with pytest.raises(InvalidArgument):
        check_theta_relative(THETA_THRESHOLD - 1, 11_000_000)
    with pytest.raises(InvalidArgument):
        check_theta_additive(10**6, 11_000_000)


def test_theta_relative_single_prime():
    r = check_theta_relative(THETA_THRESHOLD, 10544113)
    assert r.passed and r.points == 1 and r.worst_at == 10544113
    assert r.margin.lo > 9000


def test_theta_relative_prefix_of_range():
    r = check_theta_relative(THETA_THRESHOLD, 10_700_000)
    assert r.passed and not r.vacuous


def test_theta_additive_slack_at_first_prime_is_reported():
    # theta(10544113) - 10544113 is about -4402; 0.0066788 p / ln p is about 4355
    r = check_theta_additive(THETA_THRESHOLD, 10544113)
    assert r.points == 1 and r.worst_at == 10544113
    assert -48 < float(r.margin.lo) < -46
    assert not r.passed


def test_theta_additive_with_published_constant():
    r = check_theta_additive(THETA_THRESHOLD, 10_700_000, constant=THETA_ADDITIVE_PUBLISHED)
    assert r.passed


def test_theta_additive_independent_float_check():
    ps = plain_sieve(10_700_000)
    th = np.cumsum(np.log(ps.astype(np.float64)))
    sel = ps > THETA_THRESHOLD
    p = ps[sel].astype(np.float64)
    diff = np.abs(th[sel] - p)
    assert np.any(diff >= 0.0066788 * p / np.log(p))
    assert np.all(diff < 0.006788 * p / np.log(p))


def test_empty_theta_range_is_vacuous_pass():
    r = check_theta_additive(10544114, 10544116)
    assert r.vacuous and r.passed and r.margin is None


# --- prime counting and nth prime ------------------------------------------

def test_prime_count_bounds_from_59():
    r = check_prime_count_bounds(59, 10**6)
    assert r.passed
    with pytest.raises(InvalidArgument):
        check_prime_count_bounds(58, 100)


def test_prime_count_lower_bound_fails_at_58():
    # the reason the range starts at 59
    x = 58
    lx = math.log(x)
    assert len(plain_sieve(x)) < x / lx * (1 + 1 / (2 * lx))


def test_dusart_examples():
    assert dusart_margin(2).lo > 0
    assert 2 * (math.log(2) + math.log(math.log(2)) - 1) < 0
    m = dusart_margin(10_000)
    lk = mpmath.log(10_000)
    with mpmath.workdps(40):
        assert mp_encloses(m, 104729 - 10_000 * (lk + mpmath.log(lk) - 1),
                           mpmath.mpf(10) ** -15)
    with pytest.raises(InvalidArgument):
        dusart_margin(1)


def test_dusart_over_small_range():
    r = check_dusart(2, 20_000)
    assert r.passed and r.points == 19_999


def test_nth_prime_asymptotic_error_band():
    for k, expect in FIXTURES["nth_prime_error"].items():
        v = nth_prime_asymptotic_error(int(k))
        assert abs(float(v) - expect) < 1e-12
    values = [float(nth_prime_asymptotic_error(k)) for k in (1000, 10**4, 10**5, 6 * 10**5)]
    assert all(0 < v < 0.5 for v in values)
    with pytest.raises(InvalidArgument):
        nth_prime_asymptotic_error(1)


# --- Mertens ---------------------------------------------------------------

def test_mertens_small_x():
    v = mertens_product(2)
    assert mp_encloses(v, EXP_GAMMA * mpmath.log(2) / 2, mpmath.mpf(10) ** -30)
    assert abs(float(v) - 0.6173) < 1e-4
    with pytest.raises(InvalidArgument):
        mertens_product(1)


def test_mertens_regression_values():
    v6 = mertens_product(10**6)
    assert abs(float(v6) - 1) < 1e-3
    v4, v7 = mertens_product(10**4), mertens_product(10**7)
    assert abs(to_fraction(v7.mid) - Fraction(FIXTURES["mertens_1e7"])) < Fraction(1, 10**20)
    assert abs(to_fraction(v4.mid) - Fraction(FIXTURES["mertens_1e4"])) < Fraction(1, 10**20)
    assert abs(float(v7) - 1) <= abs(float(v4) - 1)


def test_check_mertens_envelope():
    assert check_mertens(10**7, 5e-3).passed
    assert not check_mertens(10**7, 1e-6).passed


# --- decay probe -----------------------------------------------------------

def test_decay_probe_log_domain():
    p = decay_limit_probe(1, 0.1, log_grid=[10**6])
    expect = math.log(10**6) - (10**6) ** 0.5
    assert abs(float(p.log_value[0]) - expect) < 1e-9
    assert float(p.values[0]) < 1e-400 or p.values[0] == 0 or p.log_value[0] < -900


def test_decay_probe_parameter_domain():
    for eps in (0, 0.2, 0.3, -0.1):
        with pytest.raises(InvalidArgument):
            decay_limit_probe(1, eps, [10, 100])
    with pytest.raises(InvalidArgument):
        decay_limit_probe(0, 0.1, [10, 100])
    with pytest.raises(InvalidArgument):
        decay_limit_probe(1, 0.1)


def test_decay_probe_onset_on_decimal_grid():
    grid = [10**k for k in range(2, 10)]
    p = decay_limit_probe(0.5, 0.1, grid)
    logs = [float(v) for v in p.log_value]
    # rises first; strictly decreasing from the onset index on
    assert p.onset == 5
    assert all(a > b for a, b in zip(logs[p.onset:], logs[p.onset + 1:]))
    assert not p.decayed  # the tail has not yet fallen below the first sample
    far = decay_limit_probe(0.5, 0.1, log_grid=[math.log(100), 1e3, 1e4])
    assert far.decayed


# --- gap trend, K_0 ratio and R(x) -----------------------------------------

def test_lemma24_gap_first_prime():
    with mpmath.workdps(40):
        lnln2 = mpmath.log(mpmath.log(2))
        assert mp_encloses(lemma24_gap(1), EXP_GAMMA * lnln2 - mpmath.mpf(3) / 2,
                           mpmath.mpf(10) ** -18)
        assert mp_encloses(lemma24_gap(1, [math.inf]), EXP_GAMMA * lnln2 - 2,
                           mpmath.mpf(10) ** -18)
    assert abs(float(lemma24_gap(1, [math.inf])) + 2.6528) < 1e-4


def test_lemma24_infinite_exponents_give_lower_envelope():
    for m in (3, 20, 200):
        ones = lemma24_gap(m)
        big = lemma24_gap(m, [7] * m)
        inf = lemma24_gap(m, [math.inf] * m)
        assert inf.hi < big.lo and big.hi < ones.lo


def test_lemma24_gap_against_mpmath():
    ps = plain_sieve(600)[:100].tolist()
    with mpmath.workdps(40):
        theta = mpmath.fsum(mpmath.log(p) for p in ps)
        prod = mpmath.fprod(mpmath.mpf(p + 1) / p for p in ps)
        assert mp_encloses(lemma24_gap(100), EXP_GAMMA * mpmath.log(theta) - prod,
                           mpmath.mpf(10) ** -18)


def test_lemma24_trend_matches_fixture():
    trend = lemma24_trend()
    values = [float(v) for _, v in trend.points]
    assert values == sorted(values)
    assert trend.onset == FIXTURES["lemma24_onset"]
    for m, v in trend.points:
        assert abs(float(v) - FIXTURES["lemma24_trend"][str(m)]) < 1e-12


def test_k0_ratio_schedules():
    ones = k0_ratio_experiment("ones", [10, 100])
    assert [(r.index, r.ratio) for r in ones] == [(1, 0.1), (1, 0.01)]
    ceil = k0_ratio_experiment("ceil_m_over_i", [100, 10_000], with_epsilon=False)
    for row in ceil:
        assert abs(row.index - math.sqrt(row.m)) <= 1
    assert ceil[1].ratio < ceil[0].ratio
    const = k0_ratio_experiment("constant_m", [10, 50])
    assert [(r.index, r.ratio) for r in const] == [(10, 1.0), (50, 1.0)]
    assert float(const[1].epsilon) == 49
    with pytest.raises(InvalidArgument):
        k0_ratio_experiment(lambda m: list(range(1, m + 1)), [5])
    assert set(SCHEDULES) == {"ones", "ceil_m_over_i", "constant_m"}


def test_r_scaling_matches_fixture():
    exp = r_scaling_experiment()
    assert all(row.certified for row in exp.rows)
    assert exp.least_m == FIXTURES["r_least_m"]
    for row in exp.rows:
        assert abs(float(row.difference) - FIXTURES["r_difference"][str(row.m)]) < 1e-12


def test_r_flip_point_is_small():
    flip = r_flip_point(40)
    assert flip is not None and flip <= 10
    below = r_scaling_experiment((flip - 1,)).rows[0].difference if flip > 1 else None
    assert below is None or below.sign <= 0
