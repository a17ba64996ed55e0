"""Finite-range checks of the prime estimates used in the Robin-gap arguments.

Each check returns the smallest slack it saw, certified. The additive theta
bound is checked with both the constant 0.0066788 and 0.006788 because only
the second survives the primes just above 10544111.
"""

import time

from robinkit.asymptotics import (THETA_ADDITIVE_PUBLISHED, check_dusart, check_mertens,
                                  check_prime_count_bounds, check_theta_additive,
                                  check_theta_relative, nth_prime_asymptotic_error)


def show(r, seconds):
    slack = "n/a" if r.margin is None else f"{float(r.margin.lo):.6g}"
    verdict = "holds" if r.passed else "FAILS"
    print(f"{r.claim:>32} on [{r.domain_lo}, {r.domain_hi}]: {verdict}, "
          f"min slack {slack} at {r.worst_at} ({seconds:.1f} s)")


for run in (lambda: check_theta_relative(),
            lambda: check_theta_additive(),
            lambda: check_theta_additive(constant=THETA_ADDITIVE_PUBLISHED),
            lambda: check_prime_count_bounds(),
            lambda: check_dusart(),
            lambda: check_mertens()):
    t0 = time.perf_counter()
    r = run()
    show(r, time.perf_counter() - t0)

print("\n(p_k/k - (ln k + ln ln k - 1)) ln k / ln ln k:")
for k in (10**3, 10**4, 10**5, 6 * 10**5):
    print(f"  k = {k:>7}: {float(nth_prime_asymptotic_error(k)):.6f}")
