"""
Hall ratio versus fractional chromatic number
=============================================

The Hall ratio max |S| / alpha(G[S]) is a lower bound on chi_f. Small
graphs get the exact value from the subset table, larger ones a local
search lower bound.
"""

import random

from hallratio import chi_f_colgen, hall_ratio_exact, hall_ratio_lower_bound
from hallratio.families import cycle, grotzsch, mycielskian
from hallratio.graph import Graph

for name, g in [("C5", cycle(5)), ("Grotzsch", grotzsch())]:
    rho = hall_ratio_exact(g)
    print(f"{name:9s} rho = {rho.value} (witness {list(rho.witness)})  chi_f = {chi_f_colgen(g).value}")

# Mycielski's construction keeps graphs triangle free while chi_f grows;
# the Hall ratio of the third iterate stays well below it.
m3 = mycielskian(grotzsch())
print("M(Grotzsch): n =", m3.n, " rho >=", hall_ratio_lower_bound(m3, budget=300).value,
      " chi_f =", chi_f_colgen(m3).value)

# A sparse random graph: the search only ever reports exact ratios of real subsets.
r = random.Random(1)
g = Graph(40, [(u, v) for u in range(40) for v in range(u + 1, 40) if r.random() < 0.15])
lb = hall_ratio_lower_bound(g)
print("random G(40, 0.15): rho >=", lb.value, "on", len(lb.witness), "vertices")
