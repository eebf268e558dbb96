"""
The sylvester congruence and the associahedron
==============================================

Build the quotientope of the sylvester congruence for n = 3 and n = 4 and
compare the classes with the classical rewriting rule.
"""

from quotientopes.congruence import classes_from_ideal, sylvester_classes_rewriting, sylvester_ideal
from quotientopes.io import csv2d, quotientope_to_dict
from quotientopes.quotientope import build_quotientope, oriented_graph

c = sylvester_ideal(3)
q = build_quotientope(c)
print(len(q.vertices), "vertices: a pentagon")
for R, h in sorted(q.heights.values.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
    print(f"  h({sorted(R)}) = {h}")

# vertices are exact; the identity class sits first
print(quotientope_to_dict(q)["vertices"])
print(csv2d(q))

# shard route and rewriting route agree
for n in range(2, 7):
    a, b = classes_from_ideal(sylvester_ideal(n)), sylvester_classes_rewriting(n)
    print(n, len(a), a.as_sets() == b.as_sets())

# orienting the 3-dimensional associahedron by alpha recovers the Tamari lattice
q4 = build_quotientope(sylvester_ideal(4))
g = oriented_graph(q4)
print(len(q4.vertices), len(q4.edges), len(q4.facet_normals), "isomorphic:", g.isomorphic)
