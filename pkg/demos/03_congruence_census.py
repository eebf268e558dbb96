"""
All lattice congruences of S_4
==============================

Enumerate the essential congruences, tabulate their quotientopes and count
them up to the symmetries of the weak order.
"""

from collections import Counter

from quotientopes.congruence import Congruence
from quotientopes.quotientope import build_quotientope, euler_characteristic
from quotientopes.shards import count_up_to_symmetry, enumerate_upper_ideals

ideals = list(enumerate_upper_ideals(4, essential_only=True))
print(len(ideals), "essential congruences,", count_up_to_symmetry(ideals), "up to symmetry")

shapes = Counter()
for ideal in ideals:
    q = build_quotientope(Congruence(ideal))
    assert euler_characteristic(q) == 2
    shapes[len(q.vertices), len(q.edges), len(q.facet_normals)] += 1

print("(V, E, F): count")
for shape, k in sorted(shapes.items()):
    print(f"  {shape}: {k}")

# non-essential ideals give lower-dimensional polytopes
dims = Counter(build_quotientope(Congruence(I)).dimension for I in enumerate_upper_ideals(4))
print("dimensions over all 60 ideals:", dict(sorted(dims.items())))
