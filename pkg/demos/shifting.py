# coding: utf-8

# # A semilattice where shifting fails

# Groups satisfy the shifting property for every admissible triple of congruences. Meet
# semilattices need not. The smallest failure found is the 2 x 2 Boolean meet semilattice.

import itertools

from satkit import Partition, all_congruences, check_shifting_lemma, format_partition
from satkit.errors import PreconditionError
from satkit.corpus import groups, shifting_counterexample

a = shifting_counterexample()
print(a.tables["meet"])

t = Partition.from_blocks(4, [[0, 1, 2], [3]])
s = Partition.from_blocks(4, [[0, 1], [2, 3]])
r = Partition.from_blocks(4, [[0, 2], [1, 3]])
res = check_shifting_lemma(a, t, s, r)
print(res.holds, res.witness)

# ## Every triple in a group

# Triples violating the precondition raise, so only admissible ones are counted.

g = groups()["D4"]
cons = all_congruences(g)
held = total = 0
for t, s, r in itertools.product(cons, repeat=3):
    try:
        res = check_shifting_lemma(g, t, s, r)
    except PreconditionError:
        continue
    total += 1
    held += res.holds
print(f"{held} of {total} admissible triples hold in D4")
print(len(cons), "congruences:", ", ".join(format_partition(c) for c in cons[:3]), "...")
