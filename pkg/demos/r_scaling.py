"""R(1) against R(2) for primorials.

R(x) rescales every exponent by x inside the Robin gap. For n = p_1...p_m the
difference R(1) - R(2) turns positive at a small m and keeps growing; the
exact m where it flips is found by walking m upward.
"""

from fractions import Fraction

from robinkit import primorial, robin_scaled
from robinkit.asymptotics import lemma24_trend, r_flip_point, r_scaling_experiment

print("least m from which R(1) > R(2) certifies (m <= 60):", r_flip_point(60))
exp = r_scaling_experiment((100, 1000, 10_000))
for row in exp.rows:
    print(f"m = {row.m:>6}: R(1) = {float(row.r1):.6f}  R(2) = {float(row.r2):.6f}  "
          f"R(1) - R(2) = {float(row.difference):.6f}")

f = primorial(50)
print("\nR(x) on [1, 2] for m = 50:")
for x in (1, Fraction(5, 4), Fraction(3, 2), Fraction(7, 4), 2):
    print(f"  x = {str(x):>4}: {float(robin_scaled(f, x)):.6f}")

print("\ne^gamma ln theta(p_m) - prod (p + 1)/p:")
for m, v in lemma24_trend().points:
    print(f"  m = {m:>6}: {float(v):.6f}")
