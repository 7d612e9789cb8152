# coding: utf-8

# # Syntactic monoids of small languages

# A DFA gives a finite monoid of state transformations. The accepted words pick out a subset W of
# that monoid, and the largest congruence saturating W collapses it to the syntactic monoid.

import numpy as np

from satkit import format_partition, syntactic_congruence
from satkit.corpus import dfas
from satkit.lang import accepting_subset, minimize_dfa, syntactic_monoid, transition_monoid

# ## Words of even length over {a}, counted mod 4

d = dfas()["even4"]
tm = transition_monoid(d)
print("states:", d.states, " transition monoid size:", tm.monoid.size)
print(np.array(tm.elements))

# The accepting transformations form W. The syntactic congruence merges the ones no context can
# tell apart.

w = accepting_subset(d, tm)
theta = syntactic_congruence(tm.monoid, w)
print("W =", w)
print("syntactic congruence:", format_partition(theta))
print("syntactic monoid size:", syntactic_monoid(d).size)

# ## (ab)*

# Six elements: 1, a, b, ab, ba and a zero.

d = dfas()["ab_star"]
m = syntactic_monoid(d)
print(m.size)
print(m.tables["mul"])

# The minimal DFA has a transition monoid of the same size.

print(transition_monoid(minimize_dfa(d)).monoid.size)
