"""
Permutations, walls and shards
==============================

Walk through the weak order on S_3, the walls of the braid fan and the
shards that carry them.
"""

from quotientopes.braid import chamber_rays, ray_vector, separating_wall
from quotientopes.permutations import Permutation, adjacent_pairs, inversion_set, weak_leq
from quotientopes.shards import all_shards, format_set, format_shard, strictly_forces

p = Permutation.parse("312")
print("inversions of 312:", sorted(inversion_set(p)))
print("132 <= 312 ?", weak_leq(Permutation.parse("132"), p))

# each chamber is spanned by the rays of its prefix sets
for R in chamber_rays(p):
    print(f"  ray {format_set(R):6} -> {ray_vector(R, 3)}")

# every cover of the weak order crosses one wall, lying on one shard
for lower, upper in adjacent_pairs(3):
    w = separating_wall(lower, upper)
    print(f"{lower} -> {upper}: shard {format_shard(w.shard)}")

# the forcing order among the four shards of S_3
for a in all_shards(3):
    targets = [format_shard(b) for b in all_shards(3) if strictly_forces(a, b)]
    print(format_shard(a), "forces", targets or "nothing")
