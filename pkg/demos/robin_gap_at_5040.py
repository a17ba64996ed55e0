"""5040 is the last integer where sigma(n) exceeds e^gamma n ln ln n.

Work through both sides of the inequality at 5040 and 5041 from their
factorizations, then look at how narrow the margin is.
"""

from robinkit import d_sign, little_l, parse_factorization, robin_report, wojtowicz_k
from robinkit.interval import decimal_bounds

for text in ("2^4*3^2*5*7", "71^2"):
    f = parse_factorization(text)
    r = robin_report(f)
    lo, hi = decimal_bounds(r.little_l, 12)
    print(f"n = {f.value} = {f}")
    print(f"  sigma(n)/n       in {decimal_bounds(r.sigma_over_n, 12)}")
    print(f"  ln ln n          ~ {float(r.loglog_n):.12f}")
    print(f"  l(n) = e^g lnln n - sigma(n)/n in [{lo}, {hi}]")
    print(f"  sign of D(n): {d_sign(f):+d}, k(n) ~ {float(wojtowicz_k(f)):.6f}")
    print()

# D(5040) is only about -107 against sigma(5040) = 19344
gap = little_l(parse_factorization("2^4*3^2*5*7")) * 5040
print(f"D(5040) ~ {float(gap):.3f}")
