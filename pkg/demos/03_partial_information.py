"""Cheap coarse questions: when do they stop helping?

In the (p, kappa) model a coarse question costs kappa and a full one
costs 1 - kappa. Below the critical kappa, asking coarse questions first
saves cost; above it the classical optimum is unbeatable.
"""

from fractions import Fraction

from boolquery.core import zoo
from boolquery.partialinfo import kappa0_bound, kappa_critical, pk_solve

and2 = zoo("AND", [2])
for p in (Fraction(2, 3), Fraction(3, 4)):
    kc = kappa_critical(and2, p)
    print(f"AND2, p = {p}: critical kappa {kc} (2p - 1 = {2 * p - 1})")
    for k in (Fraction(0), kc / 2, kc, Fraction(1)):
        r = pk_solve(and2, p, k)
        print(f"  kappa {str(k):>5}: cost {r.value}  line {r.line.alpha} + {r.line.beta} kappa")

print()
print("generic threshold above which no function on n bits gains, p = 3/4:")
for n in (2, 3, 4):
    print(f"  n = {n}: {kappa0_bound(n, Fraction(3, 4))}")

print()
r = pk_solve(zoo("ADDR7"), Fraction(9, 10), Fraction(1, 100))
print(f"address function on 7 bits at p = 9/10, kappa = 1/100: {float(r.value):.4f} (< 5)")
