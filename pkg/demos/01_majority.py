"""Majority of three, measured every way the library knows.

Each measure is computed from scratch with exact rationals, then the
optimal decision tree and an optimal subcube partition are printed.
"""

from fractions import Fraction

from boolquery.core import ProductMeasure, zoo
from boolquery.dtree import dist_cost, dumps_tree, extract_tree
from boolquery.localwit import local_witness_complexity
from boolquery.pointwise import distributional_measures
from boolquery.subcube import dumps_partition, sc_dist_optimum

maj = zoo("MAJ", [3])

for p in (Fraction(1, 2), Fraction(1, 3)):
    m = ProductMeasure(p)
    d = distributional_measures(maj, m)
    print(f"p = {p}")
    print(f"  sensitivity        s  = {d.s}")
    print(f"  block sensitivity  b  = {d.b}")
    print(f"  witness size       w  = {d.w}")
    print(f"  local witness      l  = {local_witness_complexity(maj, m)}")
    opt = sc_dist_optimum(maj, m)
    print(f"  subcube partition  sc = {opt.value}")
    print(f"  decision tree      a  = {dist_cost(maj, m)}")
    print(f"  closed form 2+2p(1-p) = {2 + 2 * p * (1 - p)}")

print()
print("an optimal tree at p = 1/2 (bits are 1-based):")
print(" ", dumps_tree(extract_tree(maj, ProductMeasure(Fraction(1, 2)))))
print("an optimal partition at p = 1/2:")
print(dumps_partition(sc_dist_optimum(maj, ProductMeasure(Fraction(1, 2))).partition))
