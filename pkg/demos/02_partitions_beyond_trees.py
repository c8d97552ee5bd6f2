"""Where subcube partitions and local witnesses beat decision trees.

A-EQ3 (1 iff all three bits agree) has an optimal partition that no
decision tree produces. G4 separates the local witness value from the
subcube value.
"""

from fractions import Fraction
from importlib.resources import files

from boolquery.core import ProductMeasure, zoo
from boolquery.dtree import dist_cost
from boolquery.localwit import RandomWitnessSet, check_random_set, local_witness_complexity
from boolquery.pointwise import distributional_measures
from boolquery.subcube import is_algorithm_induced, load_partition, partition_cost, verify_partition

half = ProductMeasure(Fraction(1, 2))
data = files("boolquery") / "data"

aeq = zoo("AEQ3")
P = load_partition(data / "aeq3_partition.txt")
print("A-EQ3 partition:", ", ".join(str(c) for c in P))
print("  valid for A-EQ3:", verify_partition(P, aeq).ok)
print("  expected codimension:", partition_cost(P, half))
print("  best decision tree:  ", dist_cost(aeq, half))
print("  arises from a tree:  ", is_algorithm_induced(P))

g = zoo("G4")
d = distributional_measures(g, half)
print()
print("G4 at p = 1/2")
print("  w  =", d.w)
print("  l  =", local_witness_complexity(g, half))
print("  sc = a =", dist_cost(g, half))
rep = check_random_set(RandomWitnessSet.load(data / "g4_local_witness.json"), g, half)
print("  hand-built random witness set: size", rep.expected_size, "witness", rep.is_witness, "local", rep.is_local)
