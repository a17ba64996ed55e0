"""The exponent excess epsilon along prefixes of a few numbers.

Primorials sit at exactly zero, constant exponents at exactly c - 1, and
descending exponents give a nonincreasing trace. Raising every exponent by t
shifts epsilon by exactly t.
"""

from robinkit import epsilon_shift, epsilon_trace, factorial_tower, primorial
from robinkit.factor import Factorization


def show(label, f):
    trace = epsilon_trace(f)
    values = ", ".join(f"{float(v):.6f}" for v in trace.values[:8])
    more = " ..." if len(trace) > 8 else ""
    print(f"{label:>26}: {values}{more}  nonincreasing={trace.is_nonincreasing()}")


show("primorial(8)", primorial(8))
show("factorial tower m=3", factorial_tower(3))
show("factorial tower m=6", factorial_tower(6))
show("exponents (4,4,4,4)", Factorization.from_exponents([4, 4, 4, 4]))
show("exponents (9,5,3,2,1,1)", Factorization.from_exponents([9, 5, 3, 2, 1, 1]))

f = Factorization.from_exponents([3, 2, 1])
for t in range(4):
    value = epsilon_shift(f, t) if t else epsilon_trace(f)[-1]
    print(f"eps of 2^{3 + t}*3^{2 + t}*5^{1 + t} = {float(value):.12f}")
