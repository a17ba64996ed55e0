"""Moving exponents onto the smallest primes can only lower the Robin gap.

Take a few factorizations on scattered primes, canonicalize them and compare
l(n) before and after. Then check the two rearrangement facts behind it on a
small example by brute force.
"""

import itertools

from robinkit import Factorization, canonicalize, theorem1_gap_pair
from robinkit.canonical import rearrangement_exact

for entries in (((3, 2), (7, 1)), ((5, 1), (11, 3), (13, 2)), ((2, 1), (97, 5))):
    f = Factorization(entries)
    pair = theorem1_gap_pair(f)
    canon = canonicalize(f)
    print(f"{str(f):>16}  l = {float(pair.l_original):+.6f}   "
          f"{str(canon.factorization()):>12}  l = {float(pair.l_canonical):+.6f}   "
          f"{pair.ordering.name}")

primes, exps = (2, 3, 5), (1, 2, 3)
print("\nprod (q - q^-a) over every arrangement of", exps, "on", primes)
for perm in sorted(set(itertools.permutations(exps)), key=lambda p: -rearrangement_exact(primes, p)):
    value = rearrangement_exact(primes, perm)
    power = 1
    for q, a in zip(primes, perm):
        power *= q**a
    print(f"  {perm}: product {float(value):.6f}, prod q^a = {power}")
print("descending exponents give the largest product and the smallest n")
