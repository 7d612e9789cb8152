# coding: utf-8

# # Centralizers of congruences

# In a group, congruences are normal subgroups and the centralizer of a congruence is the
# congruence of the centralizing subgroup. The generic computation below never looks at
# subgroups. It works in the algebra of related pairs.

from satkit import Partition, all_congruences, format_partition
from satkit.centralizer import (centralizer, group_centralizer_oracle, is_connected,
                                pair_algebra, semantics)
from satkit.corpus import groups, listed_monoids

s3 = groups()["S3"]
print(semantics(s3))

for r in all_congruences(s3):
    z = centralizer(s3, r)
    print(f"{format_partition(r):>22}  ->  {format_partition(z):<22}"
          f" oracle agrees: {z == group_centralizer_oracle(s3, r)}")

# ## The pair algebra

# For the A3 congruence the pair algebra has 3 * 3 + 3 * 3 = 18 elements.

a3 = next(r for r in all_congruences(s3) if r.num_blocks == 2)
print(len(pair_algebra(s3, a3)))

# A3 is abelian, so it centralizes itself, but it does not commute with the whole group.

print(is_connected(s3, a3, a3), is_connected(s3, a3, Partition.indiscrete(6)))

# ## Outside groups

# On monoids the same construction runs, tagged as formal.

m = listed_monoids()["LZ3"]
print(semantics(m))
for r in all_congruences(m):
    print(format_partition(r), "->", format_partition(centralizer(m, r)))
