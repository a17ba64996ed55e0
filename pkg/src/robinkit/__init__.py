"""Certified evaluation of the Robin gap e^gamma ln ln n - sigma(n)/n and the prime
asymptotics around it."""

from .errors import (BudgetExceeded, DomainError, DuplicatePrime, InvalidArgument,
                     NonPrimeBase, ParseError, RobinkitError, TooLargeToFactor)
from .interval import (Interval, Ordering, ToleranceNotMet, certify, compare, decide_sign,
                       euler_gamma, exp_gamma, working_precision)
from .primes import (first_primes, is_prime, iter_theta, nth_prime, prime_count,
                     primes_up_to, sieve, theta)
from .factor import (Factorization, abundancy_factor, factorize, log_n, parse_factorization,
                     sigma, sigma_over_n, sigma_sieve)
from .canonical import (CanonicalForm, canonicalize, descending_is_extremal,
                        pair_inequality_holds, power_product_compare, rearrangement_product,
                        theorem1_gap_pair)
from .functional import (RobinReport, d_sign, epsilon_m, epsilon_shift, epsilon_trace,
                         f_prime_monotonicity, little_l, robin_report, robin_scaled,
                         wojtowicz_k)
from .generators import (CandidateFamily, ca_chain, ca_number, descending_number,
                         factorial_tower, primorial, superabundant_oracle)
from .asymptotics import (BoundReport, check_dusart, check_mertens, check_prime_count_bounds,
                          check_theta_additive, check_theta_relative, decay_limit_probe,
                          k0_ratio_experiment, lemma24_gap, lemma24_trend, mertens_product,
                          nth_prime_asymptotic_error, r_scaling_experiment)
from .scan import ScanResult, scan

__version__ = "0.1.0"
