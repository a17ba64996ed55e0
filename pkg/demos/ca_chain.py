"""Colossally abundant numbers and the sign of D(n) along them.

The chain comes from sweeping epsilon down through the critical values
ln(1 + 1/(p + ... + p^k)) / ln p. Up to 5040 every element violates Robin's
inequality; from 55440 on every element satisfies it.
"""

from robinkit import d_sign, little_l, superabundant_oracle
from robinkit.generators import ca_critical_chain

oracle = set(superabundant_oracle(10**7))
for crit, f in ca_critical_chain(24):
    n = f.value
    sa = "yes" if n in oracle else ("?" if n > 10**7 else "NO")
    print(f"eps <= {float(crit.mid):.6f}  n = {n:<22} superabundant: {sa:<3} "
          f"D sign {d_sign(f):+d}  l(n) = {float(little_l(f)):+.6f}")
