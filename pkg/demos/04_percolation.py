"""Bond percolation across a square, exactly on 7 edges and by simulation beyond.

The crossing function is monotone and witness size equals block sensitivity
at every configuration (Menger). The exact engines show the chain
sc > w = b > s on the smallest grid; simulation tracks the growth in m.
"""

from fractions import Fraction

from boolquery.core import ProductMeasure, output_probability
from boolquery.percolation import grid_graph, mc_estimate, perc_function
from boolquery.pointwise import distributional_measures
from boolquery.subcube import sc_dist

g = grid_graph(1)
f = perc_function(g)
for p in (Fraction(1, 3), Fraction(1, 2)):
    m = ProductMeasure(p)
    d = distributional_measures(f, m)
    print(f"m = 1, p = {p}: crossing {output_probability(f, m)}")
    print(f"  sc = {sc_dist(f, m, cap=7)} > w = {d.w} = b = {d.b} > s = {d.s}")

print()
print("  m   crossing        witness        pivotal        (5000 samples, seed 1)")
for m in range(1, 6):
    gm = grid_graph(m)
    c = mc_estimate(gm, 0.5, "crossing", 5000, 1)
    w = mc_estimate(gm, 0.5, "witness", 5000, 1)
    s = mc_estimate(gm, 0.5, "sensitivity", 5000, 1)
    print(f"  {m}   {c.mean:.3f}+-{c.stderr:.3f}   {w.mean:6.2f} (min {w.minimum:g})   {s.mean:6.2f}")
